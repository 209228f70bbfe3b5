#pragma once

#include <array>
#include <optional>

#include "secondary/lp.hpp"
#include "secondary/subdivision.hpp"

namespace secondary {

/// Barycentric coordinates of p in the (non-degenerate) triangle (a, b, c):
/// returns (alpha, beta, gamma) with p = alpha*a + beta*b + gamma*c, sum 1.
std::array<Rational, 3> barycentric(const Point& a, const Point& b, const Point& c, const Point& p);

struct RegularityResult {
    bool regular;
    std::optional<WeightVector> witness;  ///< D(witness) = D when regular
};

/// Exact LP decision: does some weight vector induce exactly this subdivision?
/// Flatness on every cell, strict bend across every wall, strict below-ness at
/// unused points (strictness encoded as ">= 1"; valid by cone scale-invariance).
/// Throws WrongRegion unless D covers the full convex hull.
RegularityResult is_regular(const Configuration& config, const Subdivision& d);

/// Affine fan dual to a subdivision: one vertex per cell, one bounded edge per
/// wall, one unbounded ray per region boundary edge (outward normal direction).
struct AffineFan {
    std::vector<Point> vertices;  ///< per cell, translated so cell 0 sits at the origin
    struct Ray {
        int cell;            ///< incident cell index
        Wall boundary_edge;  ///< region edge it is dual to
        Point direction;     ///< primitive outward normal
    };
    std::vector<Ray> rays;  ///< in region boundary order
    // Bounded edges connect vertices[a] to vertices[b] for each wall (a, b) of
    // the subdivision's dual graph, in canonical wall order.
    std::vector<std::pair<int, int>> bounded_edges;
};

/// The normal fan of a regular subdivision (vertices = negated witness-lift
/// gradients), or nullopt when the subdivision is irregular.
std::optional<AffineFan> normal_fan(const Configuration& config, const Subdivision& d);

/// Closure description of {w : D(w) = D as a marked subdivision}.
struct SecondaryCone {
    std::vector<QVec> equalities;    ///< flatness rows, = 0
    std::vector<QVec> inequalities;  ///< bend and unused rows, >= 0
    int dim;                         ///< |A| - rank(equalities); includes the 3-dim lineality
};

SecondaryCone secondary_cone(const Configuration& config, const Subdivision& d);

/// Conical fan as a deduplicated, angularly sorted list of primitive ray directions.
struct ConicalFan {
    std::vector<Point> rays;

    friend bool operator==(const ConicalFan& a, const ConicalFan& b) { return a.rays == b.rays; }
};

/// Rescale the affine fan toward zero: bounded edges collapse, ray directions remain.
ConicalFan recession_fan(const AffineFan& fan);

/// Normal fan of the region polygon (outward edge normals), for comparison.
ConicalFan region_normal_fan(const Configuration& config, const Region& region);

/// Strict angular order on nonzero directions starting at the positive x-axis.
bool angle_less(const Point& a, const Point& b);

}  // namespace secondary
