#include "cfol/syntax.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfol {

struct Term::Node {
  bool is_var;
  Var var;
  Symbol fn;
  std::vector<Term> args;
};

Term Term::var(Var name) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->var = std::move(name);
  Term t;
  t.n_ = std::move(n);
  return t;
}

Term Term::app(Symbol fn, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->is_var = false;
  n->fn = std::move(fn);
  n->args = std::move(args);
  Term t;
  t.n_ = std::move(n);
  return t;
}

bool Term::is_var() const { return n_->is_var; }
const Var& Term::var_name() const { return n_->var; }
const Symbol& Term::fn() const { return n_->fn; }
const std::vector<Term>& Term::args() const { return n_->args; }

int Term::compare(const Term& a, const Term& b) {
  if (a.n_ == b.n_) return 0;
  if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
  if (a.is_var()) return a.var_name().compare(b.var_name());
  if (int c = a.fn().compare(b.fn()); c != 0) return c;
  if (a.args().size() != b.args().size()) return a.args().size() < b.args().size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
  return 0;
}

struct Formula::Node {
  FormulaKind kind;
  Symbol rel;
  std::vector<Term> terms;
  std::vector<Formula> sub;
  Var bound;
  Dyadic value;
  bool core;
};

Formula Formula::atom(Symbol rel, std::vector<Term> terms) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->rel = std::move(rel);
  n->terms = std::move(terms);
  n->core = true;
  return Formula(std::move(n));
}

Formula Formula::metric(Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Metric;
  n->terms = {std::move(a), std::move(b)};
  n->core = true;
  return Formula(std::move(n));
}

#define CFOL_BINARY(name, kindtag, corev)                          \
  Formula Formula::name(Formula a, Formula b) {                    \
    auto n = std::make_shared<Node>();                             \
    n->kind = FormulaKind::kindtag;                                \
    n->core = (corev) && a.is_core() && b.is_core();               \
    n->sub = {std::move(a), std::move(b)};                         \
    return Formula(std::move(n));                                  \
  }

CFOL_BINARY(monus, Monus, true)
CFOL_BINARY(wedge, Wedge, false)
CFOL_BINARY(vee, Vee, false)
CFOL_BINARY(abs_diff, AbsDiff, false)
CFOL_BINARY(trunc_plus, TruncPlus, false)
#undef CFOL_BINARY

Formula Formula::neg(Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Neg;
  n->core = a.is_core();
  n->sub = {std::move(a)};
  return Formula(std::move(n));
}

Formula Formula::half(Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Half;
  n->core = a.is_core();
  n->sub = {std::move(a)};
  return Formula(std::move(n));
}

Formula Formula::sup(Var x, Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Sup;
  n->core = a.is_core();
  n->bound = std::move(x);
  n->sub = {std::move(a)};
  return Formula(std::move(n));
}

Formula Formula::inf(Var x, Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Inf;
  n->core = false;
  n->bound = std::move(x);
  n->sub = {std::move(a)};
  return Formula(std::move(n));
}

Formula Formula::constant(Dyadic d) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Const;
  n->value = std::move(d);
  n->core = true;
  return Formula(std::move(n));
}

Formula Formula::monus_n(Formula a, const Formula& b, unsigned n) {
  Formula out = std::move(a);
  for (unsigned i = 0; i < n; ++i) out = monus(out, b);
  return out;
}

FormulaKind Formula::kind() const { return n_->kind; }
bool Formula::is_core() const { return n_->core; }
const Symbol& Formula::rel() const { return n_->rel; }
const std::vector<Term>& Formula::terms() const { return n_->terms; }
const Formula& Formula::lhs() const { return n_->sub.at(0); }
const Formula& Formula::rhs() const { return n_->sub.at(1); }
const Formula& Formula::child() const { return n_->sub.at(0); }
const Var& Formula::bound_var() const { return n_->bound; }
const Dyadic& Formula::value() const { return n_->value; }

int Formula::compare(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return 0;
  if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case FormulaKind::Atom:
      if (int c = a.rel().compare(b.rel()); c != 0) return c;
      [[fallthrough]];
    case FormulaKind::Metric: {
      if (a.terms().size() != b.terms().size()) return a.terms().size() < b.terms().size() ? -1 : 1;
      for (std::size_t i = 0; i < a.terms().size(); ++i)
        if (int c = Term::compare(a.terms()[i], b.terms()[i]); c != 0) return c;
      return 0;
    }
    case FormulaKind::Const: {
      if (a.value() == b.value()) return 0;
      return a.value() < b.value() ? -1 : 1;
    }
    case FormulaKind::Sup:
    case FormulaKind::Inf:
      if (int c = a.bound_var().compare(b.bound_var()); c != 0) return c;
      return compare(a.child(), b.child());
    case FormulaKind::Neg:
    case FormulaKind::Half:
      return compare(a.child(), b.child());
    default: {  // binary connectives
      if (int c = compare(a.lhs(), b.lhs()); c != 0) return c;
      return compare(a.rhs(), b.rhs());
    }
  }
}

void Signature::add_relation(const Symbol& name, std::size_t arity, std::vector<Modulus> moduli) {
  if (name == kMetricSymbol)
    throw std::invalid_argument("Signature: the metric symbol d is reserved; use enable_metric");
  if (relations_.count(name) || functions_.count(name))
    throw std::invalid_argument("Signature: duplicate symbol '" + name + "'");
  if (moduli.empty()) moduli.assign(arity, Modulus::identity_like());
  if (moduli.size() != arity) throw std::invalid_argument("Signature: one modulus per argument required");
  relations_.emplace(name, SymbolInfo{arity, std::move(moduli)});
}

void Signature::add_function(const Symbol& name, std::size_t arity, std::vector<Modulus> moduli) {
  if (name == kMetricSymbol) throw std::invalid_argument("Signature: the metric symbol d is reserved");
  if (relations_.count(name) || functions_.count(name))
    throw std::invalid_argument("Signature: duplicate symbol '" + name + "'");
  if (moduli.empty()) moduli.assign(arity, Modulus::identity_like());
  if (moduli.size() != arity) throw std::invalid_argument("Signature: one modulus per argument required");
  functions_.emplace(name, SymbolInfo{arity, std::move(moduli)});
}

void Signature::enable_metric(std::vector<Modulus> moduli) {
  if (has_metric_) relations_.erase(kMetricSymbol);
  if (moduli.empty()) moduli.assign(2, Modulus::identity_like());
  if (moduli.size() != 2) throw std::invalid_argument("Signature: the metric takes two argument moduli");
  relations_.emplace(kMetricSymbol, SymbolInfo{2, std::move(moduli)});
  has_metric_ = true;
}

const Signature::SymbolInfo& Signature::relation(const Symbol& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw std::out_of_range("Signature: unknown relation '" + name + "'");
  return it->second;
}

const Signature::SymbolInfo& Signature::function(const Symbol& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) throw std::out_of_range("Signature: unknown function '" + name + "'");
  return it->second;
}

void collect_term_vars(const Term& t, std::set<Var>& out) {
  if (t.is_var()) {
    out.insert(t.var_name());
    return;
  }
  for (const auto& a : t.args()) collect_term_vars(a, out);
}

namespace {

void free_vars_rec(const Formula& f, std::set<Var>& bound, std::set<Var>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Metric: {
      std::set<Var> vs;
      for (const auto& t : f.terms()) collect_term_vars(t, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case FormulaKind::Const:
      return;
    case FormulaKind::Neg:
    case FormulaKind::Half:
      free_vars_rec(f.child(), bound, out);
      return;
    case FormulaKind::Sup:
    case FormulaKind::Inf: {
      bool fresh = bound.insert(f.bound_var()).second;
      free_vars_rec(f.child(), bound, out);
      if (fresh) bound.erase(f.bound_var());
      return;
    }
    default:
      free_vars_rec(f.lhs(), bound, out);
      free_vars_rec(f.rhs(), bound, out);
      return;
  }
}

void all_vars_rec(const Formula& f, std::set<Var>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Metric:
      for (const auto& t : f.terms()) collect_term_vars(t, out);
      return;
    case FormulaKind::Const:
      return;
    case FormulaKind::Neg:
    case FormulaKind::Half:
      all_vars_rec(f.child(), out);
      return;
    case FormulaKind::Sup:
    case FormulaKind::Inf:
      out.insert(f.bound_var());
      all_vars_rec(f.child(), out);
      return;
    default:
      all_vars_rec(f.lhs(), out);
      all_vars_rec(f.rhs(), out);
      return;
  }
}

}  // namespace

std::set<Var> free_vars(const Formula& f) {
  std::set<Var> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

std::set<Var> all_vars(const Formula& f) {
  std::set<Var> out;
  all_vars_rec(f, out);
  return out;
}

unsigned long rank(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Metric:
    case FormulaKind::Const:
      return 0;
    case FormulaKind::Neg:
    case FormulaKind::Half:
      return rank(f.child()) + 1;
    case FormulaKind::Sup:
      return rank(f.child()) + 1;
    case FormulaKind::Monus:
      return rank(f.lhs()) + rank(f.rhs()) + 1;
    default:
      throw std::invalid_argument("rank: derived connectives must be expanded first");
  }
}

Formula expand_derived(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Metric:
    case FormulaKind::Const:
      return f;
    case FormulaKind::Neg:
      return f.is_core() ? f : Formula::neg(expand_derived(f.child()));
    case FormulaKind::Half:
      return f.is_core() ? f : Formula::half(expand_derived(f.child()));
    case FormulaKind::Sup:
      return f.is_core() ? f : Formula::sup(f.bound_var(), expand_derived(f.child()));
    case FormulaKind::Monus:
      return f.is_core() ? f : Formula::monus(expand_derived(f.lhs()), expand_derived(f.rhs()));
    case FormulaKind::Inf:
      return Formula::neg(Formula::sup(f.bound_var(), Formula::neg(expand_derived(f.child()))));
    case FormulaKind::Wedge: {
      Formula a = expand_derived(f.lhs()), b = expand_derived(f.rhs());
      return Formula::monus(a, Formula::monus(a, b));
    }
    case FormulaKind::Vee: {
      // neg(neg a /\ neg b)
      Formula na = Formula::neg(expand_derived(f.lhs()));
      Formula nb = Formula::neg(expand_derived(f.rhs()));
      return Formula::neg(Formula::monus(na, Formula::monus(na, nb)));
    }
    case FormulaKind::AbsDiff: {
      Formula a = expand_derived(f.lhs()), b = expand_derived(f.rhs());
      return expand_derived(Formula::vee(Formula::monus(a, b), Formula::monus(b, a)));
    }
    case FormulaKind::TruncPlus: {
      Formula a = expand_derived(f.lhs()), b = expand_derived(f.rhs());
      return Formula::neg(Formula::monus(Formula::neg(a), b));
    }
  }
  throw std::logic_error("expand_derived: unreachable");
}

namespace {

Formula encode_dyadic(const Dyadic& d, const Formula& base) {
  Formula one = Formula::neg(Formula::monus(base, base));
  if (d == Dyadic::one()) return one;
  if (d.is_zero()) return Formula::neg(one);
  if (d.k() == 1) {  // 2^-n, the paper's half-iterated numeral
    Formula out = one;
    for (unsigned i = 0; i < d.n(); ++i) out = Formula::half(out);
    return out;
  }
  // Horner scheme over the binary digits b_1..b_n of k (MSB first):
  // u := 0; for i = n..1: u := half u, then u := u +. half 1 when b_i is set.
  // Intermediate sums stay at most 1, so the truncated plus never saturates.
  Formula half_one = Formula::half(one);
  Formula u = Formula::monus(base, base);
  for (unsigned i = 0; i < d.n(); ++i) {
    u = Formula::half(u);
    if (mpz_tstbit(d.k().get_mpz_t(), i)) u = Formula::neg(Formula::monus(Formula::neg(u), half_one));
  }
  return u;
}

}  // namespace

Formula expand_numerals(const Formula& f, const Formula& base) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Metric:
      return f;
    case FormulaKind::Const:
      return encode_dyadic(f.value(), base);
    case FormulaKind::Neg:
      return Formula::neg(expand_numerals(f.child(), base));
    case FormulaKind::Half:
      return Formula::half(expand_numerals(f.child(), base));
    case FormulaKind::Sup:
      return Formula::sup(f.bound_var(), expand_numerals(f.child(), base));
    case FormulaKind::Inf:
      return Formula::inf(f.bound_var(), expand_numerals(f.child(), base));
    case FormulaKind::Monus:
      return Formula::monus(expand_numerals(f.lhs(), base), expand_numerals(f.rhs(), base));
    case FormulaKind::Wedge:
      return Formula::wedge(expand_numerals(f.lhs(), base), expand_numerals(f.rhs(), base));
    case FormulaKind::Vee:
      return Formula::vee(expand_numerals(f.lhs(), base), expand_numerals(f.rhs(), base));
    case FormulaKind::AbsDiff:
      return Formula::abs_diff(expand_numerals(f.lhs(), base), expand_numerals(f.rhs(), base));
    case FormulaKind::TruncPlus:
      return Formula::trunc_plus(expand_numerals(f.lhs(), base), expand_numerals(f.rhs(), base));
  }
  throw std::logic_error("expand_numerals: unreachable");
}

Formula expand_numerals(const Formula& f, const Signature& sig) {
  if (sig.relations().empty()) throw std::invalid_argument("expand_numerals: signature has no relation symbol");
  const auto& [name, info] = *sig.relations().begin();
  std::vector<Term> args;
  for (std::size_t i = 0; i < info.arity; ++i) args.push_back(Term::var("v" + std::to_string(i)));
  Formula base = (name == Signature::kMetricSymbol) ? Formula::metric(args[0], args[1])
                                                    : Formula::atom(name, std::move(args));
  return expand_numerals(f, base);
}

std::pair<Formula, std::vector<Var>> strip_generalization(const Formula& f) {
  std::vector<Var> prefix;
  Formula m = f;
  while (m.kind() == FormulaKind::Sup) {
    prefix.push_back(m.bound_var());
    m = m.child();
  }
  return {m, prefix};
}

Formula wrap_sups(Formula matrix, const std::vector<Var>& prefix) {
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) matrix = Formula::sup(*it, std::move(matrix));
  return matrix;
}

Var fresh_var(const std::set<Var>& used) {
  for (unsigned long k = 0;; ++k) {
    Var v = "v" + std::to_string(k);
    if (!used.count(v)) return v;
  }
}

std::vector<Var> fresh_vars(std::set<Var> used, std::size_t count) {
  std::vector<Var> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(fresh_var(used));
    used.insert(out.back());
  }
  return out;
}

std::optional<std::string> well_formed_error(const Term& t, const Signature& sig) {
  if (t.is_var()) return std::nullopt;
  if (!sig.has_function(t.fn())) return "unknown function symbol '" + t.fn() + "'";
  if (sig.function(t.fn()).arity != t.args().size())
    return "arity mismatch for function '" + t.fn() + "'";
  for (const auto& a : t.args())
    if (auto e = well_formed_error(a, sig)) return e;
  return std::nullopt;
}

std::optional<std::string> well_formed_error(const Formula& f, const Signature& sig) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      if (f.rel() == Signature::kMetricSymbol) return std::string("the metric is a Metric node, not an Atom");
      if (!sig.has_relation(f.rel())) return "unknown relation symbol '" + f.rel() + "'";
      if (sig.relation(f.rel()).arity != f.terms().size())
        return "arity mismatch for relation '" + f.rel() + "'";
      for (const auto& t : f.terms())
        if (auto e = well_formed_error(t, sig)) return e;
      return std::nullopt;
    }
    case FormulaKind::Metric: {
      if (!sig.has_metric()) return std::string("metric symbol used in a signature without a metric");
      for (const auto& t : f.terms())
        if (auto e = well_formed_error(t, sig)) return e;
      return std::nullopt;
    }
    case FormulaKind::Const:
      return std::nullopt;
    case FormulaKind::Neg:
    case FormulaKind::Half:
    case FormulaKind::Sup:
    case FormulaKind::Inf:
      return well_formed_error(f.child(), sig);
    default: {
      if (auto e = well_formed_error(f.lhs(), sig)) return e;
      return well_formed_error(f.rhs(), sig);
    }
  }
}

}  // namespace cfol
