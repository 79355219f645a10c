#include "svg.hpp"

#include <algorithm>
#include <sstream>

namespace padicslopes::cli {

namespace {

// Sample a bound at the integers 0..xmax. Breakpoints of B and T are
// integers, so this loses nothing.
std::vector<std::pair<long, mpq_class>> sample_bound(const PiecewiseBound& f, long xmax) {
  std::vector<std::pair<long, mpq_class>> pts;
  for (long x = 0; x <= xmax; ++x) pts.emplace_back(x, f(mpq_class(x)));
  return pts;
}

long ceil_to_long(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return static_cast<long>(r.get_si());
}

}  // namespace

std::string svg_plot(const NewtonPolygon& polygon, const PiecewiseBound& b, const PiecewiseBound& t,
                     long scale) {
  const long xmax = std::max<long>(polygon.degree, 1);
  long ymax = 1;
  for (const auto& pt : polygon.points) ymax = std::max(ymax, pt.valuation);
  ymax = std::max(ymax, ceil_to_long(b(mpq_class(xmax))));
  ymax = std::max(ymax, ceil_to_long(t(mpq_class(xmax))));

  const long margin = scale;
  const long width = xmax * scale + 2 * margin;
  const long height = ymax * scale + 2 * margin;
  auto px = [&](long x) { return margin + x * scale; };
  auto py = [&](const mpq_class& y) {
    // y is integral at every emitted vertex; flip the axis for SVG.
    mpq_class flipped = (mpq_class(ymax) - y) * scale;
    mpz_class v = flipped.get_num() / flipped.get_den();
    return margin + v.get_si();
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" data-scale=\"" << scale << "\">\n";
  os << "  <!-- model coordinates scaled by " << scale << " pixels per unit -->\n";

  auto polyline = [&os, &px, &py](const std::vector<std::pair<long, mpq_class>>& pts, const char* color,
                                  const char* name) {
    os << "  <polyline data-series=\"" << name << "\" fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
      if (i) os << ' ';
      os << px(pts[i].first) << ',' << py(pts[i].second);
    }
    os << "\"/>\n";
  };

  polyline(sample_bound(b, xmax), "#2c7fb8", "B");
  polyline(sample_bound(t, xmax), "#7fcdbb", "T");

  std::vector<std::pair<long, mpq_class>> hull;
  for (const auto& v : polygon.vertices) hull.emplace_back(v.index, mpq_class(v.valuation));
  polyline(hull, "#d95f02", "newton-polygon");

  for (const auto& pt : polygon.points)
    os << "  <circle cx=\"" << px(pt.index) << "\" cy=\"" << py(mpq_class(pt.valuation))
       << "\" r=\"3\" fill=\"#d95f02\"/>\n";

  os << "</svg>\n";
  return os.str();
}

}  // namespace padicslopes::cli
