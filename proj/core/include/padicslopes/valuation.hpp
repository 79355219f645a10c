#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>

namespace padicslopes {

/// A rational prime. Construction runs a deterministic primality check
/// (trial division, then Miller-Rabin with a base set that is provably
/// sufficient below 3.317e24) and throws std::domain_error otherwise.
class Prime {
 public:
  explicit Prime(mpz_class p);
  explicit Prime(long p) : Prime(mpz_class(p)) {}

  const mpz_class& value() const { return p_; }

  /// p^e for e >= 0.
  mpz_class pow(long e) const;

  friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }

 private:
  mpz_class p_;
};

/// A p-adic valuation: an integer (negative allowed, for valuations of
/// rationals) or the distinguished value infinity. Infinity is absorbing
/// under addition and maximal in the ordering.
class Valuation {
 public:
  Valuation() = default;
  explicit Valuation(long v) : finite_(true), v_(v) {}

  static Valuation infinity() {
    Valuation v;
    v.finite_ = false;
    return v;
  }

  bool is_infinity() const { return !finite_; }

  long value() const {
    if (!finite_) throw std::logic_error("valuation is infinite");
    return v_;
  }

  Valuation operator+(const Valuation& o) const {
    if (!finite_ || !o.finite_) return infinity();
    return Valuation(v_ + o.v_);
  }
  Valuation& operator+=(const Valuation& o) { return *this = *this + o; }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.v_ == b.v_);
  }
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.finite_ && b.finite_) return a.v_ <=> b.v_;
    if (a.finite_) return std::strong_ordering::less;
    if (b.finite_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Valuation& a, long b) { return a.finite_ && a.v_ == b; }
  friend bool operator>=(const Valuation& a, long b) { return !a.finite_ || a.v_ >= b; }

  friend Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

 private:
  bool finite_ = true;
  long v_ = 0;
};

/// Largest s with p^s | z; infinity iff z = 0. The sign of z is ignored.
Valuation vp(const mpz_class& z, const Prime& p);

/// vp(num) - vp(den); infinity iff num = 0. Throws on den = 0.
Valuation vp_rational(const mpz_class& num, const mpz_class& den, const Prime& p);

}  // namespace padicslopes
