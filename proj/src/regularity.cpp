#include "secondary/regularity.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "secondary/errors.hpp"

namespace secondary {

std::array<Rational, 3> barycentric(const Point& a, const Point& b, const Point& c, const Point& p) {
    Rational det = cross(b - a, c - a);
    Rational beta = cross(p - a, c - a) / det;
    Rational gamma = cross(b - a, p - a) / det;
    return {Rational(1 - beta - gamma), beta, gamma};
}

namespace {

void require_hull_region(const Configuration& config, const Subdivision& d) {
    if (d.region.boundary != convex_hull(config).hull) throw WrongRegion();
}

/// Linear form (over the weight variables) evaluating cell c's affine extension
/// g_c at point p: barycentric combination of the first three cell vertices.
QVec cell_lift_at(const Configuration& config, int n, const Cell& cell, const Point& p) {
    const auto& v = cell.vertices;
    auto coeffs = barycentric(config[v[0]], config[v[1]], config[v[2]], p);
    QVec row(static_cast<size_t>(n), Rational(0));
    for (int i = 0; i < 3; ++i) row[static_cast<size_t>(v[static_cast<size_t>(i)])] += coeffs[static_cast<size_t>(i)];
    return row;
}

struct ConeRows {
    std::vector<QVec> equalities;    // row . w = 0
    std::vector<QVec> inequalities;  // row . w >= 0 (closure) / >= 1 (strict query)
};

/// Shared row builder for is_regular and secondary_cone.
ConeRows cone_rows(const Configuration& config, const Subdivision& d) {
    const int n = config.size();
    ConeRows rows;

    // Flatness: every vertex beyond the first three lies on the cell's affine lift.
    for (const Cell& cell : d.cells) {
        const auto& v = cell.vertices;
        for (size_t i = 3; i < v.size(); ++i) {
            QVec row = cell_lift_at(config, n, cell, config[v[i]]);
            row[static_cast<size_t>(v[i])] -= 1;
            rows.equalities.push_back(std::move(row));
        }
    }

    // Bend: walls are strict creases. For wall (a, b) demand g_a(u) > w(u) at
    // every vertex u of cell b off the wall.
    for (const Wall& wall : d.walls) {
        std::vector<int> incident;
        for (size_t ci = 0; ci < d.cells.size(); ++ci) {
            const auto& v = d.cells[ci].vertices;
            bool hasI = std::find(v.begin(), v.end(), wall.first) != v.end();
            bool hasJ = std::find(v.begin(), v.end(), wall.second) != v.end();
            if (hasI && hasJ) incident.push_back(static_cast<int>(ci));
        }
        const Cell& cellA = d.cells[static_cast<size_t>(incident[0])];
        const Cell& cellB = d.cells[static_cast<size_t>(incident[1])];
        for (int u : cellB.vertices) {
            if (u == wall.first || u == wall.second) continue;
            QVec row = cell_lift_at(config, n, cellA, config[u]);
            row[static_cast<size_t>(u)] -= 1;
            rows.inequalities.push_back(std::move(row));
        }
    }

    // Unused points sit strictly below their cell's lift.
    for (int p : d.unused) {
        const Cell& cell = d.cells[static_cast<size_t>(containing_cell(config, d, p))];
        QVec row = cell_lift_at(config, n, cell, config[p]);
        row[static_cast<size_t>(p)] -= 1;
        rows.inequalities.push_back(std::move(row));
    }
    return rows;
}

/// Gradient (a, b) of the affine function through the lifted first three
/// vertices of a cell.
Point lift_gradient(const Configuration& config, const Cell& cell, const WeightVector& w) {
    const auto& v = cell.vertices;
    const Point &pi = config[v[0]], &pj = config[v[1]], &pk = config[v[2]];
    const Rational &wi = w[static_cast<size_t>(v[0])], &wj = w[static_cast<size_t>(v[1])],
                   &wk = w[static_cast<size_t>(v[2])];
    Rational det = cross(pj - pi, pk - pi);
    Rational a = ((wj - wi) * (pk.y - pi.y) - (wk - wi) * (pj.y - pi.y)) / det;
    Rational b = ((wk - wi) * (pj.x - pi.x) - (wj - wi) * (pk.x - pi.x)) / det;
    return Point{a, b};
}

Point outward_normal(const Configuration& config, int from, int to) {
    Point e = config[to] - config[from];
    return primitive_direction(Point{e.y, Rational(-e.x)});
}

}  // namespace

RegularityResult is_regular(const Configuration& config, const Subdivision& d) {
    require_hull_region(config, d);
    ConeRows rows = cone_rows(config, d);
    std::vector<LinearConstraint> cons;
    for (auto& r : rows.equalities) cons.push_back({std::move(r), RelOp::Eq, Rational(0)});
    for (auto& r : rows.inequalities) cons.push_back({std::move(r), RelOp::Ge, Rational(1)});
    auto witness = lp_feasible(config.size(), cons);
    if (!witness) return {false, std::nullopt};
    return {true, std::move(witness)};
}

std::optional<AffineFan> normal_fan(const Configuration& config, const Subdivision& d) {
    RegularityResult reg = is_regular(config, d);
    if (!reg.regular) return std::nullopt;

    AffineFan fan;
    // Fan vertex of a cell = negated gradient of the concave witness lift,
    // translated so cell 0 sits at the origin. Crossing a wall from cell a to
    // cell b then moves by a positive multiple of the wall's direction.
    std::vector<Point> gamma;
    for (const Cell& cell : d.cells) {
        Point g = lift_gradient(config, cell, *reg.witness);
        gamma.push_back(Point{Rational(-g.x), Rational(-g.y)});
    }
    Point base = gamma[0];
    for (Point& g : gamma) g = g - base;
    fan.vertices = std::move(gamma);

    for (const Wall& wall : d.walls) {
        std::vector<int> incident;
        for (size_t ci = 0; ci < d.cells.size(); ++ci) {
            const auto& v = d.cells[ci].vertices;
            if (std::find(v.begin(), v.end(), wall.first) != v.end() &&
                std::find(v.begin(), v.end(), wall.second) != v.end())
                incident.push_back(static_cast<int>(ci));
        }
        fan.bounded_edges.emplace_back(incident[0], incident[1]);
    }

    const auto& bd = d.region.boundary;
    for (size_t i = 0; i < bd.size(); ++i) {
        int u = bd[i], v = bd[(i + 1) % bd.size()];
        int cell = -1;
        for (size_t ci = 0; ci < d.cells.size(); ++ci) {
            const auto& cv = d.cells[ci].vertices;
            for (size_t j = 0; j < cv.size(); ++j)
                if (cv[j] == u && cv[(j + 1) % cv.size()] == v) cell = static_cast<int>(ci);
        }
        fan.rays.push_back({cell, {std::min(u, v), std::max(u, v)}, outward_normal(config, u, v)});
    }
    return fan;
}

SecondaryCone secondary_cone(const Configuration& config, const Subdivision& d) {
    require_hull_region(config, d);
    ConeRows rows = cone_rows(config, d);
    SecondaryCone cone;
    cone.dim = config.size() - rank_of(rows.equalities);
    cone.equalities = std::move(rows.equalities);
    cone.inequalities = std::move(rows.inequalities);
    return cone;
}

bool angle_less(const Point& a, const Point& b) {
    auto half = [](const Point& p) { return (p.y > 0 || (p.y == 0 && p.x > 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
}

ConicalFan recession_fan(const AffineFan& fan) {
    std::vector<Point> dirs;
    for (const auto& ray : fan.rays) dirs.push_back(ray.direction);
    std::sort(dirs.begin(), dirs.end(), angle_less);
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    return ConicalFan{std::move(dirs)};
}

ConicalFan region_normal_fan(const Configuration& config, const Region& region) {
    std::vector<Point> dirs;
    const auto& bd = region.boundary;
    for (size_t i = 0; i < bd.size(); ++i)
        dirs.push_back(outward_normal(config, bd[i], bd[(i + 1) % bd.size()]));
    std::sort(dirs.begin(), dirs.end(), angle_less);
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    return ConicalFan{std::move(dirs)};
}

}  // namespace secondary
