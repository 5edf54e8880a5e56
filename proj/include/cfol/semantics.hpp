#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfol/syntax.hpp"

namespace cfol {

/// A finite continuous pre-structure: a non-empty carrier, total function
/// tables, total exact-rational relation tables, and (for metric signatures)
/// a pseudo-metric table. Tables are flat vectors in mixed-radix row-major
/// order over carrier indices.
class PreStructure {
 public:
  PreStructure(Signature sig, std::vector<std::string> carrier);

  const Signature& sig() const { return sig_; }
  std::size_t size() const { return carrier_.size(); }
  const std::vector<std::string>& carrier() const { return carrier_; }
  const std::string& element_name(std::size_t i) const { return carrier_.at(i); }
  std::optional<std::size_t> element_index(const std::string& name) const;

  void set_fun(const Symbol& f, const std::vector<std::size_t>& args, std::size_t value);
  void set_rel(const Symbol& r, const std::vector<std::size_t>& args, Rational value);
  void set_dist(std::size_t a, std::size_t b, Rational value);  // sets both orders

  bool fun_total(const Symbol& f) const;
  bool rel_total(const Symbol& r) const;
  bool rel_present(const Symbol& r) const { return rel_tables_.count(r) != 0; }

  std::size_t fun_value(const Symbol& f, const std::vector<std::size_t>& args) const;
  const Rational& rel_value(const Symbol& r, const std::vector<std::size_t>& args) const;
  const Rational& dist(std::size_t a, std::size_t b) const;

  std::size_t table_index(const std::vector<std::size_t>& args) const;
  std::size_t table_size(std::size_t arity) const;

  /// Signature extension helpers used by the Henkin machinery: adds a fresh
  /// constant symbol interpreted at the given element.
  void add_named_constant(const Symbol& name, std::size_t element);

 private:
  friend class StructureBuilderAccess;
  Signature sig_;
  std::vector<std::string> carrier_;
  std::map<std::string, std::size_t> index_;
  std::map<Symbol, std::vector<std::optional<std::size_t>>> fun_tables_;
  std::map<Symbol, std::vector<std::optional<Rational>>> rel_tables_;
  std::vector<std::optional<Rational>> metric_;
};

/// A total assignment V -> carrier, finitely supported: unlisted variables
/// map to element 0.
class Assignment {
 public:
  Assignment() = default;
  std::size_t get(const Var& x) const {
    auto it = map_.find(x);
    return it == map_.end() ? 0 : it->second;
  }
  void set(const Var& x, std::size_t a) { map_[x] = a; }
  Assignment with(const Var& x, std::size_t a) const {
    Assignment out = *this;
    out.set(x, a);
    return out;
  }
  const std::map<Var, std::size_t>& entries() const { return map_; }

 private:
  std::map<Var, std::size_t> map_;
};

/// An element map between pre-structures that commutes with the function
/// tables and preserves relation values exactly.
struct Morphism {
  std::vector<std::size_t> map;  // source index -> target index

  bool surjective(std::size_t target_size) const;
  /// Checks the morphism conditions exactly; returns the first failure.
  std::optional<std::string> check(const PreStructure& source, const PreStructure& target) const;
};

struct ValidationReport {
  struct Violation {
    std::string kind;    // totality | range | diagonal | symmetry | triangle | modulus
    std::string detail;  // human-readable witnesses
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string text() const;
  /// One line per violation: "VIOLATION <kind> <witnesses>".
  std::string machine() const;
};

std::size_t eval_term(const PreStructure& m, const Assignment& sigma, const Term& t);
/// The value of a core formula; exact, always in [0,1]. sup over the finite
/// carrier is a maximum.
Rational eval(const PreStructure& m, const Assignment& sigma, const Formula& f);
/// True iff every member of gamma evaluates to exactly 0.
bool models(const PreStructure& m, const Assignment& sigma, const std::vector<Formula>& gamma);

/// Checks table totality and ranges, the pseudo-metric axioms, and the
/// moduli conditions, the latter via the exact residual bound implied by each
/// piecewise-linear modulus at each element pair's distance.
ValidationReport validate(const PreStructure& m);

/// Collapses distance-0 classes; the returned surjective morphism preserves
/// every formula value (finite quotient of the completion theorem). Without a
/// metric this is the identity transformation. Rejects unvalidated input.
std::pair<PreStructure, Morphism> quotient_completion(const PreStructure& m);

}  // namespace cfol
