#include "cfol/modulus.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cfol {

namespace {

const Rational kZero(0);
const Rational kOne(1);

Rational interpolate(const Modulus::Point& lo, const Modulus::Point& hi, const Rational& eps) {
  // Precondition: lo.first < hi.first, lo.first <= eps <= hi.first.
  return lo.second + (eps - lo.first) * (hi.second - lo.second) / (hi.first - lo.first);
}

void check_domain(const Rational& eps) {
  if (eps <= kZero || eps > kOne) throw std::domain_error("Modulus: argument outside (0,1]");
}

}  // namespace

Modulus::Modulus(std::vector<Point> breakpoints) : points_(std::move(breakpoints)) {
  if (points_.empty()) throw std::invalid_argument("Modulus: empty breakpoint list");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& [e, d] = points_[i];
    if (e <= kZero || e > kOne || d <= kZero || d > kOne)
      throw std::invalid_argument("Modulus: breakpoints must lie in (0,1] x (0,1]");
    if (i > 0 && (e < points_[i - 1].first || d < points_[i - 1].second))
      throw std::invalid_argument("Modulus: breakpoints must be nondecreasing");
  }
}

Modulus Modulus::identity_like(const Rational& floor) {
  if (floor >= kOne) return constant(kOne);
  return Modulus({{floor, floor}, {kOne, kOne}});
}

Modulus Modulus::constant(const Rational& value) { return Modulus({{kOne, value}}); }

Rational Modulus::eval(const Rational& eps) const {
  check_domain(eps);
  // Last breakpoint with e_i <= eps; the last entry wins at a repeated e.
  std::size_t i = points_.size();
  while (i > 0 && points_[i - 1].first > eps) --i;
  if (i == 0) return points_.front().second;        // constant left extension
  if (points_[i - 1].first == eps) return points_[i - 1].second;
  if (i == points_.size()) return points_.back().second;  // constant right extension
  return interpolate(points_[i - 1], points_[i], eps);
}

Rational Modulus::sup_below(const Rational& r) const {
  check_domain(r);
  // Last breakpoint strictly left of r.
  std::size_t i = points_.size();
  while (i > 0 && points_[i - 1].first >= r) --i;
  if (i == 0) return points_.front().second;  // delta constant on (0, r)
  if (i == points_.size()) return points_.back().second;
  // points_[i] is the first breakpoint with e >= r; interpolating toward its
  // first entry gives the left limit, which is the value approached on (0,r).
  return interpolate(points_[i - 1], points_[i], r);
}

std::optional<Rational> Modulus::first_exceed(const Rational& bound) const {
  if (points_.front().second > bound) return kZero;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const auto& prev = points_[i - 1];
    const auto& cur = points_[i];
    if (cur.second <= bound) continue;
    if (prev.first == cur.first) return cur.first;  // jump above the bound
    // Linear segment crosses the bound: delta(eps) > bound iff eps > crossing.
    return prev.first + (bound - prev.second) * (cur.first - prev.first) / (cur.second - prev.second);
  }
  return std::nullopt;  // constant right extension stays <= bound
}

namespace {

// Linear form a*eps + b of delta(eps/n) on an open interval free of scaled
// breakpoints and containing mid.
std::pair<Rational, Rational> scaled_linear_form(const Modulus& delta, const Rational& n, const Rational& mid) {
  const auto& pts = delta.breakpoints();
  Rational x = mid / n;
  std::size_t i = pts.size();
  while (i > 0 && pts[i - 1].first >= x) --i;
  if (i == 0) return {kZero, pts.front().second};
  if (i == pts.size()) return {kZero, pts.back().second};
  const auto& lo = pts[i - 1];
  const auto& hi = pts[i];
  Rational slope = (hi.second - lo.second) / (hi.first - lo.first);
  // delta(eps/n) = lo.d + (eps/n - lo.e) * slope
  return {slope / n, lo.second - lo.first * slope};
}

}  // namespace

Modulus combined_modulus(const std::vector<Modulus>& deltas, std::size_t n) {
  if (deltas.empty()) throw std::invalid_argument("combined_modulus: empty modulus list");
  if (deltas.size() != n) throw std::invalid_argument("combined_modulus: n must equal the number of moduli");
  const Rational nr(static_cast<long>(n));

  auto value_at = [&](const Rational& eps) {
    Rational v = deltas[0].eval(eps / nr);
    for (std::size_t i = 1; i < deltas.size(); ++i) v = min(v, deltas[i].eval(eps / nr));
    return v;
  };
  auto left_limit_at = [&](const Rational& eps) {
    Rational v = deltas[0].sup_below(eps / nr);
    for (std::size_t i = 1; i < deltas.size(); ++i) v = min(v, deltas[i].sup_below(eps / nr));
    return v;
  };

  // Candidate breakpoints: scaled input breakpoints, 1, and the pairwise
  // crossings of the linear pieces between them (the lower envelope of linear
  // functions can break where two of them meet).
  std::set<Rational> knots;
  knots.insert(kOne);
  for (const auto& delta : deltas)
    for (const auto& [e, d] : delta.breakpoints()) {
      Rational scaled = e * nr;
      if (scaled > kZero && scaled < kOne) knots.insert(scaled);
    }
  std::vector<Rational> base(knots.begin(), knots.end());
  Rational prev = kZero;
  for (const auto& k : base) {
    Rational mid = (prev + k) / Rational(2);
    std::vector<std::pair<Rational, Rational>> forms;
    forms.reserve(deltas.size());
    for (const auto& delta : deltas) forms.push_back(scaled_linear_form(delta, nr, mid));
    for (std::size_t i = 0; i < forms.size(); ++i)
      for (std::size_t j = i + 1; j < forms.size(); ++j) {
        if (forms[i].first == forms[j].first) continue;
        Rational cross = (forms[j].second - forms[i].second) / (forms[i].first - forms[j].first);
        if (cross > prev && cross < k) knots.insert(cross);
      }
    prev = k;
  }

  std::vector<Modulus::Point> out;
  for (const auto& eps : knots) {
    Rational lo = left_limit_at(eps);
    Rational at = value_at(eps);
    out.emplace_back(eps, lo);
    if (at != lo) out.emplace_back(eps, at);
  }

  // Drop collinear interior points and redundant constant tails.
  std::vector<Modulus::Point> slim;
  for (const auto& p : out) {
    while (slim.size() >= 2) {
      const auto& a = slim[slim.size() - 2];
      const auto& b = slim[slim.size() - 1];
      bool collinear;
      if (a.first == b.first || b.first == p.first)
        collinear = (a.second == b.second && b.second == p.second) ||
                    (a.first == b.first && b.first == p.first);
      else
        collinear = (b.second - a.second) * (p.first - b.first) == (p.second - b.second) * (b.first - a.first);
      if (!collinear) break;
      slim.pop_back();
    }
    if (!slim.empty() && slim.back() == p) continue;
    slim.push_back(p);
  }
  if (slim.size() >= 2 && slim[0].second == slim[1].second && slim[0].first < slim[1].first)
    slim.erase(slim.begin());  // leading constant already covered by left extension
  return Modulus(std::move(slim));
}

}  // namespace cfol
