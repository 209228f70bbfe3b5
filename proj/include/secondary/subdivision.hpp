#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "secondary/geometry.hpp"

namespace secondary {

/// Counterclockwise simple polygon given by configuration labels.
struct Region {
    std::vector<int> boundary;

    friend bool operator==(const Region& a, const Region& b) { return a.boundary == b.boundary; }
    friend bool operator<(const Region& a, const Region& b) { return a.boundary < b.boundary; }
};

/// Strictly convex counterclockwise cell, stored with the smallest label first.
struct Cell {
    std::vector<int> vertices;

    friend bool operator==(const Cell& a, const Cell& b) { return a.vertices == b.vertices; }
    friend bool operator<(const Cell& a, const Cell& b) { return a.vertices < b.vertices; }
};

using Wall = std::pair<int, int>;  ///< unordered label pair, stored with first < second

/// A region partitioned into convex cells; walls and unused interior points are derived.
struct Subdivision {
    Region region;
    std::vector<Cell> cells;      ///< canonical: each rotated to smallest label, sorted
    std::vector<Wall> walls;      ///< sorted label pairs shared by exactly two cells
    std::vector<int> unused;      ///< labels strictly inside some cell, ascending

    friend bool operator==(const Subdivision& a, const Subdivision& b) {
        return a.region == b.region && a.cells == b.cells;
    }
    friend bool operator!=(const Subdivision& a, const Subdivision& b) { return !(a == b); }
    friend bool operator<(const Subdivision& a, const Subdivision& b) {
        if (!(a.region == b.region)) return a.region < b.region;
        return a.cells < b.cells;
    }
};

/// One weight per configuration label.
using WeightVector = std::vector<Rational>;

/// Checks the region invariants (labels valid, simple, counterclockwise).
Region validate_region(const Configuration& config, const std::vector<int>& boundary);

/// Full structural validation: convex CCW cells, pairwise disjoint interiors,
/// cells exactly cover the region, walls shared by exactly two cells, boundary
/// edges covered once. Returns the canonical Subdivision with derived fields.
Subdivision validate_subdivision(const Configuration& config, const Region& region,
                                 std::vector<Cell> cells);

/// The trivial one-cell subdivision of a convex region.
Subdivision trivial_subdivision(const Configuration& config, const Region& region);

/// 2*|cells| - |walls| - 2 (may be <= 0).
int codimension(const Subdivision& d);

/// Which cell index contains the given unused label (strictly inside).
int containing_cell(const Configuration& config, const Subdivision& d, int label);

constexpr long long kDefaultBudget = 1'000'000;

/// All subdivisions of the region, complete and duplicate-free, in canonical
/// order; optionally filtered to codimension <= max_codim.
/// Throws BudgetExceeded when the DFS exceeds `budget` search nodes.
std::vector<Subdivision> enumerate_subdivisions(const Configuration& config, const Region& region,
                                                std::optional<int> max_codim = std::nullopt,
                                                long long budget = kDefaultBudget);

/// Non-trivial subdivisions of one cell's polygon with codimension <= max_codim.
std::vector<Subdivision> refinement_splits(const Configuration& config, const Cell& cell,
                                           int max_codim, long long budget = kDefaultBudget);

/// Lift points by w, take the concave majorant (upper hull), project the
/// domains of linearity. Always a valid subdivision of conv(A).
Subdivision subdivision_from_weights(const Configuration& config, const WeightVector& w);

/// Region = convex hull of all configuration points.
Region hull_region(const Configuration& config);

/// True when the region is exactly the convex hull of the configuration.
bool region_is_hull(const Configuration& config, const Region& region);

/// Cell polygon as points.
std::vector<Point> cell_points(const Configuration& config, const Cell& cell);

/// Replace cell `cell_index` of `d` by the cells of `split` (a subdivision of
/// that cell's polygon); revalidates and returns the canonical result.
Subdivision refine_cell(const Configuration& config, const Subdivision& d, int cell_index,
                        const Subdivision& split);

}  // namespace secondary
