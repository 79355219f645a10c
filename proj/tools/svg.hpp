#pragma once

#include <string>

#include "padicslopes/bounds.hpp"
#include "padicslopes/newton.hpp"

namespace padicslopes::cli {

/// Renders the polygon together with the B and T bounds as three polylines.
/// All model coordinates here are integers; they are multiplied by `scale`
/// (stated in the data-scale attribute), so the SVG vertices are exact.
std::string svg_plot(const NewtonPolygon& polygon, const PiecewiseBound& b, const PiecewiseBound& t,
                     long scale = 24);

}  // namespace padicslopes::cli
