#include "cfol/subst.hpp"

#include <stdexcept>

namespace cfol {

Term term_subst(const Term& t, const Var& x, const Term& replacement) {
  if (t.is_var()) return t.var_name() == x ? replacement : t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(term_subst(a, x, replacement));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::app(t.fn(), std::move(args)) : t;
}

namespace {

struct FreeSubst {
  const Var& x;
  const Term& t;
  std::set<Var> term_vars;
  bool correct = true;

  Formula run(const Formula& f, std::set<Var>& binders) {
    switch (f.kind()) {
      case FormulaKind::Atom: {
        std::vector<Term> ts;
        bool hit = false;
        for (const auto& a : f.terms()) {
          ts.push_back(term_subst(a, x, t));
          hit = hit || !(ts.back() == a);
        }
        if (hit) note_capture(binders);
        return hit ? Formula::atom(f.rel(), std::move(ts)) : f;
      }
      case FormulaKind::Metric: {
        Term a = term_subst(f.terms()[0], x, t);
        Term b = term_subst(f.terms()[1], x, t);
        if (!(a == f.terms()[0]) || !(b == f.terms()[1])) {
          note_capture(binders);
          return Formula::metric(std::move(a), std::move(b));
        }
        return f;
      }
      case FormulaKind::Const:
        return f;
      case FormulaKind::Neg:
        return Formula::neg(run(f.child(), binders));
      case FormulaKind::Half:
        return Formula::half(run(f.child(), binders));
      case FormulaKind::Sup:
      case FormulaKind::Inf: {
        if (f.bound_var() == x) return f;  // x not free below
        bool fresh = binders.insert(f.bound_var()).second;
        Formula inner = run(f.child(), binders);
        if (fresh) binders.erase(f.bound_var());
        return f.kind() == FormulaKind::Sup ? Formula::sup(f.bound_var(), std::move(inner))
                                            : Formula::inf(f.bound_var(), std::move(inner));
      }
      case FormulaKind::Monus:
        return Formula::monus(run(f.lhs(), binders), run(f.rhs(), binders));
      case FormulaKind::Wedge:
        return Formula::wedge(run(f.lhs(), binders), run(f.rhs(), binders));
      case FormulaKind::Vee:
        return Formula::vee(run(f.lhs(), binders), run(f.rhs(), binders));
      case FormulaKind::AbsDiff:
        return Formula::abs_diff(run(f.lhs(), binders), run(f.rhs(), binders));
      case FormulaKind::TruncPlus:
        return Formula::trunc_plus(run(f.lhs(), binders), run(f.rhs(), binders));
    }
    throw std::logic_error("subst_free: unreachable");
  }

  void note_capture(const std::set<Var>& binders) {
    // A replacement happened under these binders; any of them occurring in t
    // captures a variable of t.
    for (const auto& b : binders)
      if (term_vars.count(b)) {
        correct = false;
        return;
      }
  }
};

}  // namespace

SubstResult subst_free(const Formula& f, const Term& t, const Var& x) {
  FreeSubst s{x, t, {}, true};
  collect_term_vars(t, s.term_vars);
  std::set<Var> binders;
  Formula out = s.run(f, binders);
  return {std::move(out), s.correct};
}

namespace {

struct BoundSubst {
  const Var& y;
  const Var& x;
  bool correct = true;

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Atom:
      case FormulaKind::Metric:
      case FormulaKind::Const:
        return f;
      case FormulaKind::Neg:
        return Formula::neg(run(f.child()));
      case FormulaKind::Half:
        return Formula::half(run(f.child()));
      case FormulaKind::Sup:
      case FormulaKind::Inf: {
        Formula inner = run(f.child());
        if (f.bound_var() != x)
          return f.kind() == FormulaKind::Sup ? Formula::sup(f.bound_var(), std::move(inner))
                                              : Formula::inf(f.bound_var(), std::move(inner));
        if (free_vars(inner).count(y)) correct = false;
        SubstResult renamed = subst_free(inner, Term::var(y), x);
        if (!renamed.correct) correct = false;
        return f.kind() == FormulaKind::Sup ? Formula::sup(y, std::move(renamed.formula))
                                            : Formula::inf(y, std::move(renamed.formula));
      }
      case FormulaKind::Monus:
        return Formula::monus(run(f.lhs()), run(f.rhs()));
      case FormulaKind::Wedge:
        return Formula::wedge(run(f.lhs()), run(f.rhs()));
      case FormulaKind::Vee:
        return Formula::vee(run(f.lhs()), run(f.rhs()));
      case FormulaKind::AbsDiff:
        return Formula::abs_diff(run(f.lhs()), run(f.rhs()));
      case FormulaKind::TruncPlus:
        return Formula::trunc_plus(run(f.lhs()), run(f.rhs()));
    }
    throw std::logic_error("subst_bound: unreachable");
  }
};

Formula rename_apart_rec(const Formula& f, const std::set<Var>& targets, std::set<Var>& used) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Metric:
    case FormulaKind::Const:
      return f;
    case FormulaKind::Neg:
      return Formula::neg(rename_apart_rec(f.child(), targets, used));
    case FormulaKind::Half:
      return Formula::half(rename_apart_rec(f.child(), targets, used));
    case FormulaKind::Sup:
    case FormulaKind::Inf: {
      Formula inner = rename_apart_rec(f.child(), targets, used);
      Var v = f.bound_var();
      if (targets.count(v)) {
        Var fresh = fresh_var(used);
        used.insert(fresh);
        inner = subst_free(inner, Term::var(fresh), v).formula;  // fresh: never captured
        v = fresh;
      }
      return f.kind() == FormulaKind::Sup ? Formula::sup(v, std::move(inner))
                                          : Formula::inf(v, std::move(inner));
    }
    case FormulaKind::Monus:
      return Formula::monus(rename_apart_rec(f.lhs(), targets, used), rename_apart_rec(f.rhs(), targets, used));
    case FormulaKind::Wedge:
      return Formula::wedge(rename_apart_rec(f.lhs(), targets, used), rename_apart_rec(f.rhs(), targets, used));
    case FormulaKind::Vee:
      return Formula::vee(rename_apart_rec(f.lhs(), targets, used), rename_apart_rec(f.rhs(), targets, used));
    case FormulaKind::AbsDiff:
      return Formula::abs_diff(rename_apart_rec(f.lhs(), targets, used), rename_apart_rec(f.rhs(), targets, used));
    case FormulaKind::TruncPlus:
      return Formula::trunc_plus(rename_apart_rec(f.lhs(), targets, used), rename_apart_rec(f.rhs(), targets, used));
  }
  throw std::logic_error("rename_apart: unreachable");
}

Term term_unconst(const Term& t, const Var& x, const Symbol& c) {
  if (t.is_var()) return t;
  if (t.fn() == c && t.args().empty()) return Term::var(x);
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(term_unconst(a, x, c));
  return Term::app(t.fn(), std::move(args));
}

Formula formula_unconst(const Formula& f, const Var& x, const Symbol& c) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      std::vector<Term> ts;
      for (const auto& t : f.terms()) ts.push_back(term_unconst(t, x, c));
      return Formula::atom(f.rel(), std::move(ts));
    }
    case FormulaKind::Metric:
      return Formula::metric(term_unconst(f.terms()[0], x, c), term_unconst(f.terms()[1], x, c));
    case FormulaKind::Const:
      return f;
    case FormulaKind::Neg:
      return Formula::neg(formula_unconst(f.child(), x, c));
    case FormulaKind::Half:
      return Formula::half(formula_unconst(f.child(), x, c));
    case FormulaKind::Sup:
      return Formula::sup(f.bound_var(), formula_unconst(f.child(), x, c));
    case FormulaKind::Inf:
      return Formula::inf(f.bound_var(), formula_unconst(f.child(), x, c));
    case FormulaKind::Monus:
      return Formula::monus(formula_unconst(f.lhs(), x, c), formula_unconst(f.rhs(), x, c));
    case FormulaKind::Wedge:
      return Formula::wedge(formula_unconst(f.lhs(), x, c), formula_unconst(f.rhs(), x, c));
    case FormulaKind::Vee:
      return Formula::vee(formula_unconst(f.lhs(), x, c), formula_unconst(f.rhs(), x, c));
    case FormulaKind::AbsDiff:
      return Formula::abs_diff(formula_unconst(f.lhs(), x, c), formula_unconst(f.rhs(), x, c));
    case FormulaKind::TruncPlus:
      return Formula::trunc_plus(formula_unconst(f.lhs(), x, c), formula_unconst(f.rhs(), x, c));
  }
  throw std::logic_error("subst_const: unreachable");
}

}  // namespace

SubstResult subst_bound(const Formula& f, const Var& y, const Var& x) {
  BoundSubst s{y, x, true};
  Formula out = s.run(f);
  return {std::move(out), s.correct};
}

Formula rename_apart(const Formula& f, const std::vector<Var>& xs) {
  std::set<Var> targets(xs.begin(), xs.end());
  std::set<Var> used = all_vars(f);
  used.insert(targets.begin(), targets.end());
  return rename_apart_rec(f, targets, used);
}

Formula subst_const(const Formula& f, const Var& x, const Symbol& c) {
  if (all_vars(f).count(x))
    throw std::invalid_argument("subst_const: variable '" + x + "' already occurs in the formula");
  return formula_unconst(f, x, c);
}

}  // namespace cfol
