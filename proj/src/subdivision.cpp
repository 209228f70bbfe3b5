#include "secondary/subdivision.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "secondary/errors.hpp"

namespace secondary {

namespace {

std::vector<Point> label_points(const Configuration& config, const std::vector<int>& labels) {
    std::vector<Point> pts;
    pts.reserve(labels.size());
    for (int l : labels) pts.push_back(config[l]);
    return pts;
}

Point midpoint(const Point& a, const Point& b) {
    return Point{Rational((a.x + b.x) / 2), Rational((a.y + b.y) / 2)};
}

/// Cell must fit inside the (possibly non-convex) region: vertices inside, no
/// proper crossing with boundary edges, no region vertex or boundary-edge
/// midpoint strictly inside, no cell-edge midpoint outside.
bool cell_inside_region(const std::vector<Point>& regionPts, const std::vector<Point>& cellPts) {
    const size_t m = cellPts.size(), r = regionPts.size();
    for (const Point& p : cellPts)
        if (locate_in_polygon(regionPts, p) == Where::Outside) return false;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < r; ++j)
            if (segments_cross_properly(cellPts[i], cellPts[(i + 1) % m], regionPts[j],
                                        regionPts[(j + 1) % r]))
                return false;
    for (const Point& p : regionPts)
        if (strictly_inside_convex(cellPts, p)) return false;
    for (size_t i = 0; i < m; ++i)
        if (locate_in_polygon(regionPts, midpoint(cellPts[i], cellPts[(i + 1) % m])) == Where::Outside)
            return false;
    for (size_t j = 0; j < r; ++j)
        if (strictly_inside_convex(cellPts, midpoint(regionPts[j], regionPts[(j + 1) % r])))
            return false;
    return true;
}

void check_cell_shape(const Configuration& config, const Cell& cell) {
    const auto& v = cell.vertices;
    if (v.size() < 3) throw InvalidSubdivision("cell with fewer than 3 vertices");
    std::set<int> distinct(v.begin(), v.end());
    if (distinct.size() != v.size()) throw InvalidSubdivision("cell repeats a vertex");
    for (int l : v)
        if (l < 0 || l >= config.size()) throw InvalidSubdivision("cell label out of range");
    const size_t m = v.size();
    for (size_t i = 0; i < m; ++i)
        if (orientation(config[v[i]], config[v[(i + 1) % m]], config[v[(i + 2) % m]]) != +1)
            throw InvalidSubdivision("cell is not strictly convex counterclockwise");
}

}  // namespace

Region validate_region(const Configuration& config, const std::vector<int>& boundary) {
    if (boundary.size() < 3) throw InvalidSubdivision("region with fewer than 3 vertices");
    for (int l : boundary)
        if (l < 0 || l >= config.size()) throw InvalidSubdivision("region label out of range");
    std::set<int> distinct(boundary.begin(), boundary.end());
    if (distinct.size() != boundary.size()) throw InvalidSubdivision("region repeats a vertex");
    std::vector<Point> pts = label_points(config, boundary);
    if (!is_simple_polygon(pts)) throw InvalidSubdivision("region boundary is not simple");
    if (twice_signed_area(pts) <= 0) throw InvalidSubdivision("region boundary is not counterclockwise");
    return Region{rotate_to_smallest(boundary)};
}

Subdivision validate_subdivision(const Configuration& config, const Region& region,
                                 std::vector<Cell> cells) {
    Region reg{rotate_to_smallest(region.boundary)};
    std::vector<Point> regionPts = label_points(config, reg.boundary);
    if (!is_simple_polygon(regionPts) || twice_signed_area(regionPts) <= 0)
        throw InvalidSubdivision("region boundary is not a counterclockwise simple polygon");

    if (cells.empty()) throw InvalidSubdivision("no cells");
    for (Cell& c : cells) c.vertices = rotate_to_smallest(c.vertices);
    std::sort(cells.begin(), cells.end());
    if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
        throw InvalidSubdivision("duplicate cell");

    Rational areaSum = 0;
    std::vector<std::vector<Point>> cellPts;
    for (const Cell& c : cells) {
        check_cell_shape(config, c);
        cellPts.push_back(label_points(config, c.vertices));
        if (!cell_inside_region(regionPts, cellPts.back()))
            throw InvalidSubdivision("cell leaves the region");
        areaSum += twice_signed_area(cellPts.back());
    }
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = i + 1; j < cells.size(); ++j)
            if (convex_interiors_overlap(cellPts[i], cellPts[j]))
                throw InvalidSubdivision("cells overlap");
    if (areaSum != twice_signed_area(regionPts))
        throw InvalidSubdivision("cells do not cover the region");

    // Directed edge bookkeeping: each undirected edge appears once (boundary,
    // in the region's own direction) or twice (wall, once per direction).
    std::map<Wall, std::vector<int>> incidence;  // undirected edge -> incident cell indices
    std::set<std::pair<int, int>> directed;
    for (size_t ci = 0; ci < cells.size(); ++ci) {
        const auto& v = cells[ci].vertices;
        for (size_t i = 0; i < v.size(); ++i) {
            int a = v[i], b = v[(i + 1) % v.size()];
            if (!directed.insert({a, b}).second)
                throw InvalidSubdivision("directed edge used twice");
            incidence[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(ci));
        }
    }
    std::set<Wall> boundaryEdges;
    for (size_t i = 0; i < reg.boundary.size(); ++i) {
        int a = reg.boundary[i], b = reg.boundary[(i + 1) % reg.boundary.size()];
        boundaryEdges.insert({std::min(a, b), std::max(a, b)});
        if (!directed.count({a, b}))
            throw InvalidSubdivision("region boundary edge not covered by a cell");
    }
    std::vector<Wall> walls;
    for (const auto& [edge, inc] : incidence) {
        if (inc.size() == 1) {
            if (!boundaryEdges.count(edge))
                throw InvalidSubdivision("interior edge covered on one side only");
        } else if (inc.size() == 2) {
            if (boundaryEdges.count(edge))
                throw InvalidSubdivision("boundary edge shared by two cells");
            walls.push_back(edge);
        } else {
            throw InvalidSubdivision("edge shared by more than two cells");
        }
    }

    std::vector<int> unused;
    for (int l = 0; l < config.size(); ++l) {
        if (locate_in_polygon(regionPts, config[l]) != Where::Inside) continue;
        bool used = false;
        for (const Cell& c : cells)
            used = used || std::find(c.vertices.begin(), c.vertices.end(), l) != c.vertices.end();
        if (!used) unused.push_back(l);
    }

    return Subdivision{reg, std::move(cells), std::move(walls), std::move(unused)};
}

Subdivision trivial_subdivision(const Configuration& config, const Region& region) {
    return validate_subdivision(config, region, {Cell{region.boundary}});
}

int codimension(const Subdivision& d) {
    return 2 * static_cast<int>(d.cells.size()) - static_cast<int>(d.walls.size()) - 2;
}

int containing_cell(const Configuration& config, const Subdivision& d, int label) {
    for (size_t ci = 0; ci < d.cells.size(); ++ci)
        if (strictly_inside_convex(cell_points(config, d.cells[ci]), config[label]))
            return static_cast<int>(ci);
    throw WorkbenchError("label " + std::to_string(label) + " is not inside any cell");
}

std::vector<Point> cell_points(const Configuration& config, const Cell& cell) {
    return label_points(config, cell.vertices);
}

Region hull_region(const Configuration& config) {
    return Region{convex_hull(config).hull};
}

bool region_is_hull(const Configuration& config, const Region& region) {
    return region.boundary == convex_hull(config).hull;
}

namespace {

/// Depth-first enumeration over partial coverings. The frontier is the set of
/// directed edges whose left side is still uncovered; we always extend its
/// lexicographically smallest edge, so every subdivision is built exactly once.
struct Enumerator {
    const Configuration& config;
    const Region& region;
    std::vector<Point> regionPts;
    std::vector<int> usable;  // labels inside or on the region, ascending
    long long budget;
    long long nodes = 0;
    std::vector<Subdivision> out;
    std::set<std::vector<Cell>> seen;

    Enumerator(const Configuration& c, const Region& r, long long b)
        : config(c), region(r), budget(b) {
        regionPts = label_points(config, region.boundary);
        for (int l = 0; l < config.size(); ++l)
            if (locate_in_polygon(regionPts, config[l]) != Where::Outside) usable.push_back(l);
    }

    /// All strictly convex CCW cells (a, b, c1..ck) on usable labels with every
    /// ci strictly left of the directed edge (a, b), in deterministic order.
    const std::vector<std::vector<int>>& candidate_cells(int a, int b) {
        auto it = candidateCache.find({a, b});
        if (it != candidateCache.end()) return it->second;
        std::vector<std::vector<int>> result;
        std::vector<int> chain = {a, b};
        grow_chain(a, b, chain, result);
        return candidateCache.emplace(std::make_pair(a, b), std::move(result)).first->second;
    }

    void grow_chain(int a, int b, std::vector<int>& chain, std::vector<std::vector<int>>& result) {
        for (int c : usable) {
            if (std::find(chain.begin(), chain.end(), c) != chain.end()) continue;
            if (orientation(config[a], config[b], config[c]) != +1) continue;
            // Left turn at the current last vertex (for chain [a, b] this repeats
            // the line-side test above).
            if (chain.size() >= 3 &&
                orientation(config[chain[chain.size() - 2]], config[chain.back()], config[c]) != +1)
                continue;
            chain.push_back(c);
            // Closing turns: (last, c, a) and (c, a, b) must also be left turns.
            if (orientation(config[chain[chain.size() - 2]], config[c], config[a]) == +1 &&
                orientation(config[c], config[a], config[b]) == +1)
                result.push_back(chain);
            grow_chain(a, b, chain, result);
            chain.pop_back();
        }
    }

    std::map<std::pair<int, int>, std::vector<std::vector<int>>> candidateCache;

    void dfs(std::set<std::pair<int, int>>& frontier, std::vector<Cell>& placed,
             std::vector<std::vector<Point>>& placedPts) {
        if (frontier.empty()) {
            std::vector<Cell> cells = placed;
            for (Cell& c : cells) c.vertices = rotate_to_smallest(c.vertices);
            std::sort(cells.begin(), cells.end());
            if (seen.insert(cells).second)
                out.push_back(validate_subdivision(config, region, cells));
            return;
        }
        const auto [a, b] = *frontier.begin();
        for (const auto& cycle : candidate_cells(a, b)) {
            if (++nodes > budget) throw BudgetExceeded(budget);
            if (!compatible(cycle, frontier, placedPts)) continue;
            // Apply frontier update.
            std::vector<std::pair<int, int>> removed, added;
            const size_t m = cycle.size();
            for (size_t i = 0; i < m; ++i) {
                std::pair<int, int> e{cycle[i], cycle[(i + 1) % m]};
                if (frontier.count(e)) {
                    frontier.erase(e);
                    removed.push_back(e);
                } else {
                    std::pair<int, int> rev{e.second, e.first};
                    frontier.insert(rev);
                    added.push_back(rev);
                }
            }
            placed.push_back(Cell{cycle});
            placedPts.push_back(label_points(config, cycle));
            dfs(frontier, placed, placedPts);
            placedPts.pop_back();
            placed.pop_back();
            for (const auto& e : added) frontier.erase(e);
            for (const auto& e : removed) frontier.insert(e);
        }
    }

    bool compatible(const std::vector<int>& cycle, const std::set<std::pair<int, int>>& frontier,
                    const std::vector<std::vector<Point>>& placedPts) {
        const size_t m = cycle.size();
        // A cell edge opposing a frontier edge would cover already-covered ground.
        for (size_t i = 0; i < m; ++i)
            if (frontier.count({cycle[(i + 1) % m], cycle[i]})) return false;
        std::vector<Point> pts = label_points(config, cycle);
        if (!cell_inside_region(regionPts, pts)) return false;
        for (const auto& other : placedPts)
            if (convex_interiors_overlap(pts, other)) return false;
        return true;
    }
};

}  // namespace

std::vector<Subdivision> enumerate_subdivisions(const Configuration& config, const Region& region,
                                                std::optional<int> max_codim, long long budget) {
    Region reg = validate_region(config, region.boundary);
    Enumerator en(config, reg, budget);
    std::set<std::pair<int, int>> frontier;
    const auto& bd = reg.boundary;
    for (size_t i = 0; i < bd.size(); ++i) frontier.insert({bd[i], bd[(i + 1) % bd.size()]});
    std::vector<Cell> placed;
    std::vector<std::vector<Point>> placedPts;
    en.dfs(frontier, placed, placedPts);

    std::vector<Subdivision> result = std::move(en.out);
    if (max_codim) {
        std::vector<Subdivision> filtered;
        for (auto& d : result)
            if (codimension(d) <= *max_codim) filtered.push_back(std::move(d));
        result = std::move(filtered);
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<Subdivision> refinement_splits(const Configuration& config, const Cell& cell,
                                           int max_codim, long long budget) {
    Region cellRegion{rotate_to_smallest(cell.vertices)};
    auto all = enumerate_subdivisions(config, cellRegion, max_codim, budget);
    std::vector<Subdivision> out;
    for (auto& d : all)
        if (d.cells.size() > 1) out.push_back(std::move(d));
    return out;
}

Subdivision subdivision_from_weights(const Configuration& config, const WeightVector& w) {
    const int n = config.size();
    if (static_cast<int>(w.size()) != n) throw WorkbenchError("weight vector has wrong length");
    if (n < 3) throw WorkbenchError("need at least 3 points");

    // Upper (concave) hull of the lift: a supporting plane z = ax + by + c through
    // three lifted points is an upper facet iff every lifted point is on or below.
    using PlaneKey = std::vector<Rational>;
    std::map<PlaneKey, std::vector<int>> facets;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const Point &pi = config[i], &pj = config[j], &pk = config[k];
                Rational det = cross(pj - pi, pk - pi);
                // Solve for the plane through the three lifted points.
                Rational a = ((w[j] - w[i]) * (pk.y - pi.y) - (w[k] - w[i]) * (pj.y - pi.y)) / det;
                Rational b = ((w[k] - w[i]) * (pj.x - pi.x) - (w[j] - w[i]) * (pk.x - pi.x)) / det;
                Rational c = w[i] - a * pi.x - b * pi.y;
                bool upper = true;
                std::vector<int> on;
                for (int m = 0; m < n && upper; ++m) {
                    Rational h = a * config[m].x + b * config[m].y + c;
                    if (h < w[m]) upper = false;
                    else if (h == w[m]) on.push_back(m);
                }
                if (upper) facets.emplace(PlaneKey{a, b, c}, std::move(on));
            }

    std::vector<Cell> cells;
    for (const auto& [plane, on] : facets) {
        (void)plane;
        cells.push_back(Cell{convex_hull(config, on).hull});
    }
    return validate_subdivision(config, hull_region(config), std::move(cells));
}

Subdivision refine_cell(const Configuration& config, const Subdivision& d, int cell_index,
                        const Subdivision& split) {
    std::vector<Cell> cells;
    for (size_t i = 0; i < d.cells.size(); ++i)
        if (static_cast<int>(i) != cell_index) cells.push_back(d.cells[i]);
    for (const Cell& c : split.cells) cells.push_back(c);
    return validate_subdivision(config, d.region, std::move(cells));
}

}  // namespace secondary
