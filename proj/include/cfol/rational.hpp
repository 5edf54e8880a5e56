#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace cfol {

/// Exact rational arithmetic backed by GMP. Values are always canonical
/// (lowest terms, positive denominator). Truth values and distances live in
/// [0,1]; intermediate arithmetic may leave the unit interval.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long num) : q_(num) {}  // NOLINT: implicit on purpose
  Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "a/b" or "a". Throws std::domain_error on malformed input.
  static Rational parse(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0 || text.empty())
      throw std::domain_error("Rational: cannot parse '" + text + "'");
    if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    q.canonicalize();
    return Rational(std::move(q));
  }

  const mpq_class& mpq() const { return q_; }
  std::string str() const { return q_.get_str(); }

  bool in_unit() const { return *this >= Rational(0) && *this <= Rational(1); }
  bool is_zero() const { return sgn(q_) == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
  }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& b) { q_ += b.q_; return *this; }
  Rational& operator-=(const Rational& b) { q_ -= b.q_; return *this; }
  Rational& operator*=(const Rational& b) { q_ *= b.q_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend const Rational& min(const Rational& a, const Rational& b) { return a < b ? a : b; }
  friend const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

 private:
  mpq_class q_;
};

/// max(a - b, 0), the semantic counterpart of the monus connective.
inline Rational truncated_sub(const Rational& a, const Rational& b) {
  Rational d = a - b;
  return d < Rational(0) ? Rational(0) : d;
}

/// A dyadic number k/2^n in [0,1], canonical with k odd or k = 0 (n minimal).
/// Kept distinct from Rational: the definable constants of the logic and the
/// parameters of the metric axiom schemata range over dyadics specifically.
class Dyadic {
 public:
  Dyadic() : k_(0), n_(0) {}
  Dyadic(mpz_class k, unsigned n) : k_(std::move(k)), n_(n) {
    if (sgn(k_) < 0) throw std::domain_error("Dyadic: negative numerator");
    mpz_class pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), 2, n_);
    if (k_ > pow) throw std::domain_error("Dyadic: value exceeds 1");
    canonicalize();
  }
  static Dyadic zero() { return Dyadic(); }
  static Dyadic one() { return Dyadic(1, 0); }
  /// 2^-n.
  static Dyadic pow2(unsigned n) { return Dyadic(1, n); }

  static std::optional<Dyadic> from_rational(const Rational& r) {
    if (!r.in_unit()) return std::nullopt;
    mpz_class den = r.mpq().get_den();
    unsigned n = 0;
    while (mpz_even_p(den.get_mpz_t()) && den > 1) {
      den /= 2;
      ++n;
    }
    if (den != 1) return std::nullopt;  // not a power of two
    return Dyadic(r.mpq().get_num(), n);
  }

  const mpz_class& k() const { return k_; }
  unsigned n() const { return n_; }
  bool is_zero() const { return k_ == 0; }

  Rational value() const {
    mpz_class pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), 2, n_);
    return Rational(mpq_class(k_, pow));
  }

  Dyadic half() const { return Dyadic(k_, is_zero() ? 0 : n_ + 1); }

  std::string str() const {
    if (k_ == 0) return "0";
    if (n_ == 0) return "1";
    return k_.get_str() + "/2^" + std::to_string(n_);
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.k_ == b.k_ && a.n_ == b.n_; }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return a.value() < b.value(); }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

 private:
  void canonicalize() {
    while (n_ > 0 && mpz_even_p(k_.get_mpz_t())) {
      k_ /= 2;
      --n_;
    }
    if (k_ == 0) n_ = 0;
  }

  mpz_class k_;
  unsigned n_;
};

/// Largest multiple of 2^-grain that is <= r (r clamped to [0,1]).
inline Dyadic floor_dyadic(const Rational& r, unsigned grain) {
  if (r <= Rational(0)) return Dyadic::zero();
  if (r >= Rational(1)) return Dyadic::one();
  mpz_class pow;
  mpz_ui_pow_ui(pow.get_mpz_t(), 2, grain);
  mpq_class scaled = r.mpq() * pow;
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
  return Dyadic(k, grain);
}

/// Smallest multiple of 2^-grain that is >= r (r clamped to [0,1]).
inline Dyadic ceil_dyadic(const Rational& r, unsigned grain) {
  if (r <= Rational(0)) return Dyadic::zero();
  if (r >= Rational(1)) return Dyadic::one();
  mpz_class pow;
  mpz_ui_pow_ui(pow.get_mpz_t(), 2, grain);
  mpq_class scaled = r.mpq() * pow;
  mpz_class k;
  mpz_cdiv_q(k.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
  return Dyadic(k, grain);
}

}  // namespace cfol
