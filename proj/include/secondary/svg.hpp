#pragma once

#include <string>

#include "secondary/regularity.hpp"

namespace secondary {

/// Deterministic SVG of a subdivision: shaded cells, wall segments, labeled
/// points, unused points cross-marked. Viewport = configuration bounding box
/// plus a 10% margin; coordinates printed with 4 decimals; no timestamps.
std::string render_subdivision_svg(const Configuration& config, const Subdivision& d);

/// Deterministic SVG of an affine fan: vertices, bounded edges, rays drawn to
/// a fixed length. Viewport = bounding box of the drawn primitives plus a 10%
/// margin.
std::string render_fan_svg(const AffineFan& fan);

}  // namespace secondary
