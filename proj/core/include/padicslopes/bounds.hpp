#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "padicslopes/matrix.hpp"

namespace padicslopes {

/// Multiplicities sigma_i = (i^d - (i-1)^d) * h, i = 1..n. The associated
/// quotient has sigma_i summands O/p^{n-i+1}O, and partial sums satisfy
/// sum_{i<=j} sigma_i = j^d * h.
struct SigmaProfile {
  long d = 1;
  long h = 1;
  long n = 1;
  std::vector<long> sigma;

  long total() const;  // sum of all sigma_i = n^d * h
};

SigmaProfile sigma_profile(long d, long h, long n);

/// sigma_1 copies of n, sigma_2 copies of n-1, ..., sigma_n copies of 1,
/// zero-padded to rank t. Throws if t < total().
QuotientShape shape_from_profile(const SigmaProfile& profile, long t);

/// Convex piecewise-linear function on [0, inf): integer slopes on intervals
/// between exact rational breakpoints, the last slope extending indefinitely.
/// Canonical form: breaks[0] = 0 and slopes strictly increasing.
struct PiecewiseBound {
  mpq_class value0;
  std::vector<mpq_class> breaks;
  std::vector<long> slopes;
  std::vector<mpq_class> values;  // value at each break, derived

  mpq_class operator()(const mpq_class& x) const;
  long terminal_slope() const { return slopes.back(); }
};

/// Canonicalizing constructor: merges adjacent pieces of equal slope and
/// precomputes break values. breaks and slopes must have equal size with
/// breaks[0] = 0, breaks strictly increasing, slopes weakly increasing.
PiecewiseBound make_bound(mpq_class value0, std::vector<mpq_class> breaks, std::vector<long> slopes);

/// B(0) = 0, slope b_i on [i-1, i] for i <= t, slope n beyond t; B(j) at
/// integers equals sum_{i<=j} (n - a_i).
PiecewiseBound B_function(const QuotientShape& shape);

/// Same function built directly from a profile: slope r on
/// [r^d h, (r+1)^d h] for r < n, slope n beyond n^d h.
PiecewiseBound B_from_profile(const SigmaProfile& profile);

/// Smallest M with 2M >= n.
long half_depth(long n);

/// T(x) = M + B(x - 1); constant M on [0, 1].
PiecewiseBound T_function(const QuotientShape& shape);
PiecewiseBound shift_up_right(const PiecewiseBound& B, long m);

/// Exact inf of T(x)/x over x >= 1. On each linear piece the ratio is
/// monotone, so the infimum is attained at x = 1 or at a breakpoint, except
/// on the final ray where the limit is the terminal slope n.
mpq_class critical_slope_from_T(const PiecewiseBound& T);
mpq_class critical_slope_c(const QuotientShape& shape);
mpq_class critical_slope_c(const SigmaProfile& profile);

/// The heuristic closed form c = min{c_1 n^{1/(d+1)}, n} with
/// c_1 = (1/(d+1))^{d/(d+1)} (1/h^{d/(d+1)} + 1). Reporting and sanity
/// comparison only; the exact c above is authoritative.
struct ClosedFormC {
  double c1;
  double c1_term;      // c_1 * n^{1/(d+1)}
  double n_cap;        // n
  double value;        // min of the two
  double stationary_x; // h * (M(d+1))^{d/(d+1)}
};
ClosedFormC closed_form_c(long d, long h, long n);

/// Q(x) = (d/(d+1)) (x/h)^{(d+1)/d} - x, the integral minorant of B.
double closed_form_Q(long d, long h, double x);

/// Smallest n >= 1 with alpha < c(d, h, n), found by upward search with the
/// exact c. Throws std::runtime_error when the guard max_n is exceeded.
long n_alpha(const mpq_class& alpha, long d, long h, long max_n = 4096);

/// floor(3 m (alpha+1)^2 / 2) * m.
mpz_class iq_bound_paper(long m, const mpq_class& alpha);

/// Supremum of x2 - x1 over lines of slope alpha through (x1, bound(x1))
/// that stay on or above the bound on [x1, x2]. Exact breakpoint scan;
/// nullopt (= infinity) when the terminal slope is <= alpha.
std::optional<mpq_class> max_chord_above(const PiecewiseBound& bound, const mpq_class& alpha);

/// Chord over the full quadratic staircase (slope r on [r^2 h, (r+1)^2 h] for
/// every r >= 0): the profile is deepened until the chord stabilizes, so the
/// value no longer depends on the truncation depth.
mpq_class max_chord_quadratic(long h, const mpq_class& alpha);

/// Structured-text export: one "(breakpoint, value, outgoing slope)" triple
/// per piece, exact rationals as num/den.
std::string bound_to_text(const PiecewiseBound& bound);

}  // namespace padicslopes
