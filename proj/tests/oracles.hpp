// Independent test oracles. Everything here recomputes expected values by a
// route different from the library implementation it checks.
#pragma once

#include <gmpxx.h>

#include <vector>

#include "padicslopes/bounds.hpp"
#include "padicslopes/matrix.hpp"
#include "padicslopes/valuation.hpp"

namespace oracles {

using padicslopes::IntegerMatrix;
using padicslopes::Prime;
using padicslopes::QuotientShape;

// Dense univariate polynomial, ascending coefficients.
using Poly = std::vector<mpz_class>;

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline Poly poly_scale(const Poly& a, const mpz_class& s) {
  Poly r = a;
  for (auto& x : r) x *= s;
  return r;
}

// Determinant of a polynomial matrix by Laplace expansion along the first row.
inline Poly poly_det(const std::vector<std::vector<Poly>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  Poly det;
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Poly>> minor;
    minor.reserve(n - 1);
    for (size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Poly term = poly_mul(m[0][j], poly_det(minor));
    if (j % 2) term = poly_scale(term, -1);
    det = poly_add(det, term);
  }
  return det;
}

// det(X I - A) by cofactor expansion, returned as d_0..d_t with
// d_s the coefficient of X^(t-s).
inline std::vector<mpz_class> charpoly_cofactor(const IntegerMatrix& a) {
  long t = a.dim();
  std::vector<std::vector<Poly>> m(static_cast<size_t>(t), std::vector<Poly>(static_cast<size_t>(t)));
  for (long i = 0; i < t; ++i)
    for (long j = 0; j < t; ++j) {
      if (i == j)
        m[i][j] = Poly{-a.at(i, j), mpz_class(1)};
      else
        m[i][j] = Poly{-a.at(i, j)};
    }
  Poly det = poly_det(m);
  det.resize(static_cast<size_t>(t) + 1, mpz_class(0));
  std::vector<mpz_class> d(static_cast<size_t>(t) + 1);
  for (long s = 0; s <= t; ++s) d[static_cast<size_t>(s)] = det[static_cast<size_t>(t - s)];
  return d;
}

// Exactly the shifted-bound values, by direct summation from the shape.
inline mpq_class T_direct(const QuotientShape& shape, long x) {
  return mpq_class(padicslopes::half_depth(shape.n)) + shape.B_at(x - 1);
}

// inf T(x)/x over x >= 1: the breakpoints of T are integers, so the exact
// infimum is the minimum over all integers up to past the last breakpoint
// together with the terminal slope n.
inline mpq_class c_oracle(const QuotientShape& shape) {
  mpq_class best(shape.n);
  for (long x = 1; x <= shape.t + 2; ++x) {
    mpq_class ratio = T_direct(shape, x) / x;
    if (ratio < best) best = ratio;
  }
  return best;
}

inline long n_alpha_oracle(const mpq_class& alpha, long d, long h, long max_n = 512) {
  for (long n = 1; n <= max_n; ++n) {
    padicslopes::SigmaProfile prof = padicslopes::sigma_profile(d, h, n);
    QuotientShape shape = padicslopes::shape_from_profile(prof, prof.total() + 1);
    if (alpha < c_oracle(shape)) return n;
  }
  throw std::runtime_error("n_alpha_oracle exhausted");
}

class TestRng {
 public:
  explicit TestRng(unsigned long seed) : state_(gmp_randinit_mt) { state_.seed(seed); }

  mpz_class below(const mpz_class& bound) { return bound <= 1 ? mpz_class(0) : state_.get_z_range(bound); }

  long in_range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(hi - lo + 1).get_ui());
  }

  mpz_class signed_below(const mpz_class& bound) { return below(2 * bound + 1) - bound; }

 private:
  gmp_randclass state_;
};

// Product of random elementary row/column operations applied to the identity:
// unimodular over the integers, hence invertible over the p-local integers.
inline IntegerMatrix random_unimodular(long t, TestRng& rng, int steps = 20) {
  IntegerMatrix u = IntegerMatrix::identity(t);
  for (int s = 0; s < steps; ++s) {
    long i = rng.in_range(0, t - 1);
    long j = rng.in_range(0, t - 1);
    if (i == j) continue;
    mpz_class k = rng.signed_below(4);
    for (long col = 0; col < t; ++col) u.at(i, col) += k * u.at(j, col);
  }
  return u;
}

inline IntegerMatrix mat_mul(const IntegerMatrix& a, const IntegerMatrix& b) {
  long t = a.dim();
  IntegerMatrix r(t);
  for (long i = 0; i < t; ++i)
    for (long k = 0; k < t; ++k) {
      if (a.at(i, k) == 0) continue;
      for (long j = 0; j < t; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

}  // namespace oracles
