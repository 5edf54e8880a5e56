#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cfol/rational.hpp"

namespace cfol {

/// A modulus of uniform continuity delta : (0,1] -> (0,1], restricted to
/// nondecreasing piecewise-linear functions with rational breakpoints so that
/// everything downstream (axiom-instance side conditions, pre-structure
/// validation) is exactly decidable.
///
/// Representation: an ordered list of (epsilon, delta) breakpoints,
/// nondecreasing in both coordinates. The function interpolates linearly
/// between breakpoints and extends constantly left of the first and right of
/// the last one. A repeated epsilon with two delta values encodes an upward
/// jump: the value at the point is the last entry, the left limit the first.
class Modulus {
 public:
  using Point = std::pair<Rational, Rational>;

  /// Throws std::invalid_argument unless the breakpoint list is non-empty,
  /// lies in (0,1] x (0,1], and is nondecreasing in both coordinates.
  explicit Modulus(std::vector<Point> breakpoints);

  /// delta(eps) = eps on [floor,1], constant floor below.
  static Modulus identity_like(const Rational& floor = Rational(1, 1024));
  static Modulus constant(const Rational& value);

  const std::vector<Point>& breakpoints() const { return points_; }

  /// Exact value at eps in (0,1]. Rejects eps = 0 and eps > 1.
  Rational eval(const Rational& eps) const;

  /// sup{delta(eps) : 0 < eps < r} for r in (0,1], i.e. the left limit at r.
  /// A dyadic q admits a witnessing eps < r with q < delta(eps) iff q is
  /// strictly below this value.
  Rational sup_below(const Rational& r) const;

  /// inf{eps in (0,1] : delta(eps) > bound}, or nullopt when delta never
  /// exceeds the bound. This is the exact residual tolerance a pre-structure
  /// validator must enforce on value differences at distance `bound`.
  std::optional<Rational> first_exceed(const Rational& bound) const;

  friend bool operator==(const Modulus& a, const Modulus& b) { return a.points_ == b.points_; }

 private:
  std::vector<Point> points_;
};

/// The per-symbol modulus min{delta_0(eps/n), ..., delta_{n-1}(eps/n)} built
/// from per-argument moduli, again as a piecewise-linear Modulus. `n` must
/// equal deltas.size(); the empty list is rejected.
Modulus combined_modulus(const std::vector<Modulus>& deltas, std::size_t n);

}  // namespace cfol
