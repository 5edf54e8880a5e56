#pragma once

#include <vector>

#include "cfol/syntax.hpp"

namespace cfol {

/// Result of a substitution together with its correctness verdict: correct
/// means no variable of the substituted term was captured (free substitution)
/// or the renaming conditions held (bound substitution). The substitution is
/// performed either way.
struct SubstResult {
  Formula formula;
  bool correct = true;
};

/// Free substitution f[t/x]: replaces the free occurrences of x by t.
SubstResult subst_free(const Formula& f, const Term& t, const Var& x);
Term term_subst(const Term& t, const Var& x, const Term& replacement);

/// Bound substitution f{y/x}: rewrites each subformula sup x . a into
/// sup y . a[y/x]. Correct iff y is not free in a and a[y/x] is correct for
/// every affected subformula.
SubstResult subst_bound(const Formula& f, const Var& y, const Var& x);

/// Renames every binder over a variable in xs to a fresh variable, so that no
/// member of xs is bound in the result. Evaluation-equivalent to f.
Formula rename_apart(const Formula& f, const std::vector<Var>& xs);

/// f[x/c]: replaces every occurrence of the constant symbol c by the variable
/// x. Requires that x does not occur in f at all.
Formula subst_const(const Formula& f, const Var& x, const Symbol& c);

}  // namespace cfol
