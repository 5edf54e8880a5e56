#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cfol/proof.hpp"
#include "cfol/semantics.hpp"
#include "cfol/syntax.hpp"

namespace cfol {

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 1;
  int column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourceSpan span)
      : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
        span_(span) {}
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

struct ParseOptions {
  /// Propositional convenience: idents unknown to the signature become 0-ary
  /// relation symbols (added to the signature) instead of parse errors.
  bool auto_atoms = false;
};

/// ASCII grammar, left-associative connectives at one precedence level:
///   formula := unary { ("-." | "+." | "/\" | "\/") unary }
///   unary   := "neg" unary | "half" unary | "sup" var "." unary
///            | "inf" var "." unary | atom
///   atom    := ident ["(" term {"," term} ")"] | "#" dyadic | "(" formula ")"
///            | "|" formula "-" formula "|"
///   dyadic  := "0" | "1" | int "/" "2^" int
/// Derived forms are expanded; the result is a core formula.
Formula parse_formula(std::string_view text, Signature& sig, const ParseOptions& opts = {});
Formula parse_formula(std::string_view text, const Signature& sig);

/// Theory files: one formula per line, `#` starts a comment line.
std::vector<Formula> parse_theory(std::string_view text, Signature& sig, const ParseOptions& opts = {});

Signature parse_signature(std::string_view text);

struct StructureParseOptions {
  /// Leave relation tables (entirely or partially) unspecified; used by the
  /// bounded model search, which treats them as unknowns.
  bool allow_missing_relations = false;
};

/// Line-oriented: `carrier a b`, `fun f: (a)->b`, `rel P: (a)=1/3`,
/// `metric: (a,b)=1/2`. Sparse metric entries are mirrored and the diagonal
/// zero-filled; totality and [0,1] ranges are enforced here, the metric and
/// moduli laws by validate().
PreStructure parse_structure(std::string_view text, const Signature& sig, const StructureParseOptions& opts = {});

/// One step per line after optional `hypothesis <formula>` lines:
/// `hyp <k>` | `ax <formula>` | `mp <i> <j>` | `taut <i,...,j> <formula>`
/// (`taut - <formula>` for no premises). Indices refer to earlier steps.
Proof parse_proof(std::string_view text, Signature& sig, const ParseOptions& opts = {});

std::string print_term(const Term& t);
std::string print_formula(const Formula& f);
std::string print_signature(const Signature& sig);
std::string print_structure(const PreStructure& m);
std::string print_proof(const Proof& p);
std::string print_modulus(const Modulus& m);

}  // namespace cfol
