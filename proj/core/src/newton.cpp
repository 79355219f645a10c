#include "padicslopes/newton.hpp"

#include <sstream>

namespace padicslopes {

namespace {

// Cross product (a->b) x (a->c); positive when the chain turns left.
long long cross(const NewtonPolygon::Point& a, const NewtonPolygon::Point& b, const NewtonPolygon::Point& c) {
  return static_cast<long long>(b.index - a.index) * (c.valuation - a.valuation) -
         static_cast<long long>(b.valuation - a.valuation) * (c.index - a.index);
}

}  // namespace

NewtonPolygon newton_polygon(const CharPolyCoeffs& coeffs, const Prime& p) {
  if (coeffs.d.empty() || coeffs.d[0] == 0) throw std::invalid_argument("leading coefficient must be nonzero");
  NewtonPolygon np;
  np.degree = coeffs.degree();

  long last_nonzero = 0;
  for (long s = 0; s <= np.degree; ++s)
    if (coeffs.d[static_cast<size_t>(s)] != 0) last_nonzero = s;
  np.kernel_multiplicity = np.degree - last_nonzero;

  for (long s = 0; s <= last_nonzero; ++s) {
    const mpz_class& c = coeffs.d[static_cast<size_t>(s)];
    if (c == 0) continue;
    np.points.push_back({s, vp(c, p).value()});
  }

  // Monotone chain over points already sorted by index; collinear middle
  // points are dropped so segment slopes increase strictly.
  for (const auto& pt : np.points) {
    while (np.vertices.size() >= 2 &&
           cross(np.vertices[np.vertices.size() - 2], np.vertices.back(), pt) <= 0)
      np.vertices.pop_back();
    np.vertices.push_back(pt);
  }

  for (size_t i = 1; i < np.vertices.size(); ++i) {
    const auto& a = np.vertices[i - 1];
    const auto& b = np.vertices[i];
    mpq_class slope(b.valuation - a.valuation, b.index - a.index);
    slope.canonicalize();
    np.segments.push_back({slope, b.index - a.index});
  }

  // Conservation: total rise equals vp of the last nonzero coefficient.
  mpq_class total = 0;
  for (const auto& seg : np.segments) total += seg.slope * seg.horizontal_length;
  if (total != np.points.back().valuation - np.points.front().valuation)
    throw std::logic_error("newton polygon conservation identity violated");

  return np;
}

SlopeCount slope_multiplicities(const NewtonPolygon& np) {
  SlopeCount counts;
  for (const auto& seg : np.segments) counts[seg.slope] += seg.horizontal_length;
  return counts;
}

long count_slope(const NewtonPolygon& np, const mpq_class& alpha) {
  for (const auto& seg : np.segments)
    if (seg.slope == alpha) return seg.horizontal_length;
  return 0;
}

namespace {
std::string csv(const std::vector<NewtonPolygon::Point>& pts) {
  std::ostringstream os;
  os << "index,valuation\n";
  for (const auto& pt : pts) os << pt.index << ',' << pt.valuation << '\n';
  return os.str();
}
}  // namespace

std::string points_csv(const NewtonPolygon& np) { return csv(np.points); }
std::string vertices_csv(const NewtonPolygon& np) { return csv(np.vertices); }

}  // namespace padicslopes
