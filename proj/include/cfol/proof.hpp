#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cfol/syntax.hpp"

namespace cfol {

/// One step of a formal deduction. MP(i, j) requires step j to be shaped
/// psi -. phi with phi the formula of step i, and concludes psi. Taut steps
/// (extended checking mode only) carry their conclusion and the indices of
/// the premise steps; strict mode forbids them.
struct Step {
  enum class Kind { Hyp, Ax, MP, Taut };
  Kind kind;
  std::size_t hyp_index = 0;
  Formula formula;  // Ax instance or Taut conclusion
  std::size_t mp_minor = 0;
  std::size_t mp_major = 0;
  std::vector<std::size_t> premises;

  static Step hyp(std::size_t k) {
    Step s{Kind::Hyp};
    s.hyp_index = k;
    return s;
  }
  static Step ax(Formula f) {
    Step s{Kind::Ax};
    s.formula = std::move(f);
    return s;
  }
  static Step mp(std::size_t minor, std::size_t major) {
    Step s{Kind::MP};
    s.mp_minor = minor;
    s.mp_major = major;
    return s;
  }
  static Step taut(std::vector<std::size_t> premises, Formula conclusion) {
    Step s{Kind::Taut};
    s.premises = std::move(premises);
    s.formula = std::move(conclusion);
    return s;
  }
};

/// A formal deduction from a list of hypotheses: a finite sequence of steps,
/// each a hypothesis, an axiom instance, a modus ponens application, or an
/// extended propositional-consequence step.
struct Proof {
  std::vector<Formula> hypotheses;
  std::vector<Step> steps;
};

}  // namespace cfol
