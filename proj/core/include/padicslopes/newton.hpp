#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "padicslopes/matrix.hpp"
#include "padicslopes/valuation.hpp"

namespace padicslopes {

/// Lower convex hull of the points (s, vp(d_s)) for the nonzero coefficients
/// of a monic polynomial sum d_s X^(t-s). With d_0 = 1 anchored at (0, 0),
/// segment slopes equal the p-adic valuations of the roots and segment
/// horizontal lengths their multiplicities (descending-power convention).
/// Trailing zero coefficients contribute kernel_multiplicity instead of a
/// finite segment.
struct NewtonPolygon {
  struct Point {
    long index;
    long valuation;
    friend bool operator==(const Point&, const Point&) = default;
  };
  struct Segment {
    mpq_class slope;
    long horizontal_length;
  };

  long degree = 0;               // t
  std::vector<Point> points;     // plotted points, increasing index
  std::vector<Point> vertices;   // hull vertices, increasing index
  std::vector<Segment> segments; // strictly increasing slopes
  long kernel_multiplicity = 0;  // t - (largest index with d != 0)
};

/// Slope -> multiplicity; multiplicities sum to t - kernel_multiplicity.
using SlopeCount = std::map<mpq_class, long>;

/// Builds the polygon. Throws std::logic_error if the conservation identity
/// sum(slope * length) = vp(last nonzero coefficient) fails; that identity is
/// checked on every construction.
NewtonPolygon newton_polygon(const CharPolyCoeffs& coeffs, const Prime& p);

SlopeCount slope_multiplicities(const NewtonPolygon& np);

long count_slope(const NewtonPolygon& np, const mpq_class& alpha);

/// CSV with header "index,valuation": one row per plotted point.
std::string points_csv(const NewtonPolygon& np);
/// Same header, one row per hull vertex.
std::string vertices_csv(const NewtonPolygon& np);

}  // namespace padicslopes
