#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cfol/modulus.hpp"
#include "cfol/rational.hpp"

namespace cfol {

using Symbol = std::string;
using Var = std::string;  // canonical family v0, v1, ...; arbitrary names accepted

/// First-order terms: variables and function applications. Immutable, shared.
class Term {
 public:
  Term() = default;
  static Term var(Var name);
  static Term app(Symbol fn, std::vector<Term> args = {});

  bool valid() const { return n_ != nullptr; }
  bool is_var() const;
  const Var& var_name() const;
  const Symbol& fn() const;
  const std::vector<Term>& args() const;

  static int compare(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Term& a, const Term& b) { return compare(a, b) != 0; }
  friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  std::shared_ptr<const Node> n_;
};

/// Core constructors are Atom, Metric, Monus, Neg, Half, Sup and the dyadic
/// Const primitive. The remaining kinds are derived connectives, purely
/// notational; expand_derived eliminates them before kernel or semantics use.
enum class FormulaKind { Atom, Metric, Monus, Neg, Half, Sup, Const, Inf, Wedge, Vee, AbsDiff, TruncPlus };

class Formula {
 public:
  Formula() = default;
  static Formula atom(Symbol rel, std::vector<Term> terms = {});
  static Formula metric(Term a, Term b);
  static Formula monus(Formula a, Formula b);
  static Formula neg(Formula a);
  static Formula half(Formula a);
  static Formula sup(Var x, Formula a);
  static Formula constant(Dyadic d);
  static Formula inf(Var x, Formula a);
  static Formula wedge(Formula a, Formula b);
  static Formula vee(Formula a, Formula b);
  static Formula abs_diff(Formula a, Formula b);
  static Formula trunc_plus(Formula a, Formula b);
  /// Iterated monus (..(a -. b) -. b..) with n copies of b; n = 0 gives a.
  static Formula monus_n(Formula a, const Formula& b, unsigned n);

  bool valid() const { return n_ != nullptr; }
  FormulaKind kind() const;
  bool is_core() const;  // no derived connective anywhere in the tree
  const Symbol& rel() const;
  const std::vector<Term>& terms() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& child() const;  // unary node (Neg, Half, Sup, Inf)
  const Var& bound_var() const;
  const Dyadic& value() const;

  static int compare(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Formula& a, const Formula& b) { return compare(a, b) != 0; }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

/// A continuous signature: relation and function symbols with arities and
/// per-argument moduli of uniform continuity. The distinguished metric symbol
/// d is a binary relation enabled via enable_metric, never declared directly.
class Signature {
 public:
  struct SymbolInfo {
    std::size_t arity = 0;
    std::vector<Modulus> moduli;  // one per argument
  };

  static constexpr const char* kMetricSymbol = "d";

  /// Empty moduli lists are filled with identity_like defaults.
  void add_relation(const Symbol& name, std::size_t arity, std::vector<Modulus> moduli = {});
  void add_function(const Symbol& name, std::size_t arity, std::vector<Modulus> moduli = {});
  void enable_metric(std::vector<Modulus> moduli = {});

  bool has_metric() const { return has_metric_; }
  bool has_relation(const Symbol& name) const { return relations_.count(name) != 0; }
  bool has_function(const Symbol& name) const { return functions_.count(name) != 0; }
  const SymbolInfo& relation(const Symbol& name) const;
  const SymbolInfo& function(const Symbol& name) const;
  const std::map<Symbol, SymbolInfo>& relations() const { return relations_; }
  const std::map<Symbol, SymbolInfo>& functions() const { return functions_; }

 private:
  std::map<Symbol, SymbolInfo> relations_;  // includes d when has_metric_
  std::map<Symbol, SymbolInfo> functions_;
  bool has_metric_ = false;
};

void collect_term_vars(const Term& t, std::set<Var>& out);
std::set<Var> free_vars(const Formula& f);
std::set<Var> all_vars(const Formula& f);  // free, bound, and term variables

/// Syntactic complexity measure driving the term-model induction. Defined on
/// core formulas; Const counts as rank 0.
unsigned long rank(const Formula& f);

/// Rewrites every derived connective into the core language. Idempotent and
/// value-preserving.
Formula expand_derived(const Formula& f);

/// Replaces every Const node by its definable encoding from the formula
/// 1 := neg(base -. base) using half and monus. The result evaluates to the
/// dyadic value in every pre-structure under every assignment.
Formula expand_numerals(const Formula& f, const Formula& base);
/// Default base: the alphabetically least relation symbol applied to v0, ...
Formula expand_numerals(const Formula& f, const Signature& sig);

/// Splits off the maximal prefix of sup binders. Every formula is a
/// generalization of itself: the prefix may be empty.
std::pair<Formula, std::vector<Var>> strip_generalization(const Formula& f);
/// Re-wraps: wrap_sups(m, {x, y}) = sup x . sup y . m.
Formula wrap_sups(Formula matrix, const std::vector<Var>& prefix);

/// Least index k such that v<k> is not in `used`.
Var fresh_var(const std::set<Var>& used);
std::vector<Var> fresh_vars(std::set<Var> used, std::size_t count);

/// Checks arities, symbol existence, and metric usage against a signature.
/// Returns a description of the first problem, or nullopt if well-formed.
std::optional<std::string> well_formed_error(const Formula& f, const Signature& sig);
std::optional<std::string> well_formed_error(const Term& t, const Signature& sig);

}  // namespace cfol
