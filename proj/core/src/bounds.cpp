#include "padicslopes/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "padicslopes/rational.hpp"

namespace padicslopes {

long SigmaProfile::total() const {
  long s = 0;
  for (long x : sigma) s += x;
  return s;
}

SigmaProfile sigma_profile(long d, long h, long n) {
  if (d < 1 || h < 1 || n < 1) throw std::invalid_argument("sigma_profile requires d, h, n >= 1");
  SigmaProfile prof{d, h, n, {}};
  prof.sigma.reserve(static_cast<size_t>(n));
  auto powd = [d](long x) {
    long r = 1;
    for (long i = 0; i < d; ++i) r *= x;
    return r;
  };
  for (long i = 1; i <= n; ++i) prof.sigma.push_back((powd(i) - powd(i - 1)) * h);
  return prof;
}

QuotientShape shape_from_profile(const SigmaProfile& profile, long t) {
  if (t < profile.total()) throw std::invalid_argument("rank t smaller than the profile total");
  std::vector<long> a;
  a.reserve(static_cast<size_t>(t));
  for (long i = 1; i <= profile.n; ++i)
    for (long c = 0; c < profile.sigma[static_cast<size_t>(i - 1)]; ++c) a.push_back(profile.n - i + 1);
  a.resize(static_cast<size_t>(t), 0);
  return QuotientShape(profile.n, std::move(a));
}

mpq_class PiecewiseBound::operator()(const mpq_class& x) const {
  if (x < 0) throw std::invalid_argument("bound evaluated at negative x");
  size_t i = breaks.size() - 1;
  while (i > 0 && breaks[i] > x) --i;
  return values[i] + slopes[i] * (x - breaks[i]);
}

PiecewiseBound make_bound(mpq_class value0, std::vector<mpq_class> breaks, std::vector<long> slopes) {
  if (breaks.empty() || breaks.size() != slopes.size() || breaks[0] != 0)
    throw std::invalid_argument("bound needs matching breaks/slopes starting at 0");
  PiecewiseBound b;
  b.value0 = value0;
  for (size_t i = 0; i < breaks.size(); ++i) {
    if (i > 0 && breaks[i] <= breaks[i - 1]) throw std::invalid_argument("breakpoints must increase");
    if (i > 0 && slopes[i] < slopes[i - 1]) throw std::invalid_argument("slopes must not decrease");
    if (!b.slopes.empty() && slopes[i] == b.slopes.back()) continue;
    b.breaks.push_back(breaks[i]);
    b.slopes.push_back(slopes[i]);
  }
  b.values.resize(b.breaks.size());
  b.values[0] = b.value0;
  for (size_t i = 1; i < b.breaks.size(); ++i)
    b.values[i] = b.values[i - 1] + b.slopes[i - 1] * (b.breaks[i] - b.breaks[i - 1]);
  return b;
}

PiecewiseBound B_function(const QuotientShape& shape) {
  std::vector<mpq_class> breaks;
  std::vector<long> slopes;
  for (long i = 1; i <= shape.t; ++i) {
    breaks.emplace_back(i - 1);
    slopes.push_back(shape.b(i - 1));
  }
  breaks.emplace_back(shape.t);
  slopes.push_back(shape.n);
  return make_bound(0, std::move(breaks), std::move(slopes));
}

PiecewiseBound B_from_profile(const SigmaProfile& profile) {
  std::vector<mpq_class> breaks;
  std::vector<long> slopes;
  long acc = 0;
  breaks.emplace_back(0);
  slopes.push_back(0);
  for (long j = 1; j <= profile.n; ++j) {
    acc += profile.sigma[static_cast<size_t>(j - 1)];
    breaks.emplace_back(acc);
    slopes.push_back(j);
  }
  return make_bound(0, std::move(breaks), std::move(slopes));
}

long half_depth(long n) { return (n + 1) / 2; }

PiecewiseBound shift_up_right(const PiecewiseBound& B, long m) {
  std::vector<mpq_class> breaks{0};
  std::vector<long> slopes{0};
  for (size_t i = 0; i < B.breaks.size(); ++i) {
    breaks.push_back(B.breaks[i] + 1);
    slopes.push_back(B.slopes[i]);
  }
  return make_bound(mpq_class(m) + B.value0, std::move(breaks), std::move(slopes));
}

PiecewiseBound T_function(const QuotientShape& shape) {
  return shift_up_right(B_function(shape), half_depth(shape.n));
}

mpq_class critical_slope_from_T(const PiecewiseBound& T) {
  mpq_class best = T(1);
  for (size_t i = 0; i < T.breaks.size(); ++i) {
    if (T.breaks[i] < 1) continue;
    mpq_class ratio = T.values[i] / T.breaks[i];
    if (ratio < best) best = ratio;
  }
  mpq_class terminal(T.terminal_slope());
  if (terminal < best) best = terminal;
  return best;
}

mpq_class critical_slope_c(const QuotientShape& shape) {
  return critical_slope_from_T(T_function(shape));
}

mpq_class critical_slope_c(const SigmaProfile& profile) {
  return critical_slope_from_T(shift_up_right(B_from_profile(profile), half_depth(profile.n)));
}

ClosedFormC closed_form_c(long d, long h, long n) {
  double dd = static_cast<double>(d);
  double c1 = std::pow(1.0 / (dd + 1.0), dd / (dd + 1.0)) * (1.0 / std::pow(static_cast<double>(h), dd / (dd + 1.0)) + 1.0);
  double c1_term = c1 * std::pow(static_cast<double>(n), 1.0 / (dd + 1.0));
  double m = static_cast<double>(half_depth(n));
  double stationary = static_cast<double>(h) * std::pow(m * (dd + 1.0), dd / (dd + 1.0));
  return {c1, c1_term, static_cast<double>(n), std::min(c1_term, static_cast<double>(n)), stationary};
}

double closed_form_Q(long d, long h, double x) {
  double dd = static_cast<double>(d);
  return (dd / (dd + 1.0)) * std::pow(x / static_cast<double>(h), (dd + 1.0) / dd) - x;
}

long n_alpha(const mpq_class& alpha, long d, long h, long max_n) {
  if (alpha < 0) throw std::invalid_argument("alpha must be nonnegative");
  for (long n = 1; n <= max_n; ++n) {
    if (alpha < critical_slope_c(sigma_profile(d, h, n))) return n;
  }
  throw std::runtime_error("n_alpha search exceeded the max-n guard");
}

mpz_class iq_bound_paper(long m, const mpq_class& alpha) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  mpq_class v = mpq_class(3 * m) * (alpha + 1) * (alpha + 1) / 2;
  return floor_rational(v) * m;
}

std::optional<mpq_class> max_chord_above(const PiecewiseBound& bound, const mpq_class& alpha) {
  if (mpq_class(bound.terminal_slope()) <= alpha) return std::nullopt;
  const size_t pieces = bound.breaks.size();
  mpq_class best = 0;
  for (size_t i = 0; i < pieces; ++i) {
    const mpq_class& x1 = bound.breaks[i];
    const mpq_class& y1 = bound.values[i];
    // Walk right from x1 until the line y1 + alpha (x - x1) meets the bound.
    // Crossing can only happen inside a piece of slope > alpha.
    std::optional<mpq_class> x2;
    for (size_t j = i; j < pieces; ++j) {
      if (mpq_class(bound.slopes[j]) <= alpha) continue;
      // The line is still above the bound when piece j starts, so the
      // crossing point lands at or right of breaks[j].
      mpq_class cross = (y1 - alpha * x1 - bound.values[j] + bound.slopes[j] * bound.breaks[j]) /
                        (mpq_class(bound.slopes[j]) - alpha);
      if (j + 1 == pieces || cross <= bound.breaks[j + 1]) {
        x2 = cross;
        break;
      }
    }
    if (!x2) return std::nullopt;  // unreachable given the terminal check
    mpq_class len = *x2 - x1;
    if (len > best) best = len;
  }
  return best;
}

mpq_class max_chord_quadratic(long h, const mpq_class& alpha) {
  // A depth-n profile agrees with the infinite staircase up to (n+1)^2 h, so
  // two consecutive depths giving the same chord pin the stable value.
  long depth = static_cast<long>(floor_rational(alpha).get_si()) + 2;
  auto chord_at = [h, &alpha](long n) {
    auto c = max_chord_above(B_from_profile(sigma_profile(2, h, n)), alpha);
    if (!c) throw std::logic_error("quadratic staircase chord must be finite");
    return *c;
  };
  mpq_class prev = chord_at(depth);
  for (long n = depth + 1;; ++n) {
    mpq_class cur = chord_at(n);
    if (cur == prev) return cur;
    prev = cur;
  }
}

std::string bound_to_text(const PiecewiseBound& bound) {
  std::ostringstream os;
  os << "piecewise-bound " << bound.breaks.size() << "\n";
  for (size_t i = 0; i < bound.breaks.size(); ++i)
    os << rational_str(bound.breaks[i]) << ' ' << rational_str(bound.values[i]) << ' '
       << rational_str(mpq_class(bound.slopes[i])) << '\n';
  return os.str();
}

}  // namespace padicslopes
