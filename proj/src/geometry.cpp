#include "secondary/geometry.hpp"

#include <algorithm>

#include "secondary/errors.hpp"

namespace secondary {

Configuration validate_configuration(const std::vector<Point>& points) {
    if (points.empty()) throw WorkbenchError("empty point list");
    const int n = static_cast<int>(points.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (points[i] == points[j]) throw DuplicatePoint(i, j);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (orientation(points[i], points[j], points[k]) == 0) throw CollinearTriple(i, j, k);
    return Configuration{points};
}

std::vector<int> rotate_to_smallest(const std::vector<int>& cycle) {
    auto it = std::min_element(cycle.begin(), cycle.end());
    std::vector<int> out(it, cycle.end());
    out.insert(out.end(), cycle.begin(), it);
    return out;
}

HullResult convex_hull(const Configuration& config, const std::vector<int>& indices) {
    if (indices.size() < 3) throw WorkbenchError("convex hull needs at least 3 indices");
    std::vector<int> order = indices;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return config[a] < config[b]; });

    // Monotone chain; strict turns only, so collinear points never arise
    // (impossible anyway by the configuration invariant).
    auto build = [&](bool upper) {
        std::vector<int> chain;
        for (int idx : order) {
            while (chain.size() >= 2) {
                int o = orientation(config[chain[chain.size() - 2]], config[chain.back()], config[idx]);
                if (upper ? (o >= 0) : (o <= 0))
                    chain.pop_back();
                else
                    break;
            }
            chain.push_back(idx);
        }
        return chain;
    };
    std::vector<int> lower = build(false);
    std::vector<int> upper = build(true);
    std::vector<int> hull(lower.begin(), lower.end() - 1);
    hull.insert(hull.end(), upper.rbegin(), upper.rend() - 1);

    std::vector<int> interior;
    for (int idx : indices)
        if (std::find(hull.begin(), hull.end(), idx) == hull.end()) interior.push_back(idx);
    std::sort(interior.begin(), interior.end());
    return HullResult{rotate_to_smallest(hull), interior};
}

HullResult convex_hull(const Configuration& config) {
    std::vector<int> all(static_cast<size_t>(config.size()));
    for (int i = 0; i < config.size(); ++i) all[static_cast<size_t>(i)] = i;
    return convex_hull(config, all);
}

bool strictly_inside_convex(const std::vector<Point>& poly, const Point& p) {
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i)
        if (orientation(poly[i], poly[(i + 1) % m], p) <= 0) return false;
    return true;
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
    if (orientation(a, b, p) != 0) return false;
    return dot(p - a, b - a) >= 0 && dot(p - b, a - b) >= 0;
}

bool segments_cross_properly(const Point& a, const Point& b, const Point& c, const Point& d) {
    int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
    int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

Where locate_in_polygon(const std::vector<Point>& polygon, const Point& p) {
    const size_t m = polygon.size();
    bool inside = false;
    for (size_t i = 0; i < m; ++i) {
        const Point& a = polygon[i];
        const Point& b = polygon[(i + 1) % m];
        if (on_segment(a, b, p)) return Where::Boundary;
        // Half-open crossing rule: count the edge iff it spans p's horizontal line,
        // with the intersection strictly to the right of p.
        if ((a.y > p.y) != (b.y > p.y)) {
            // x-coordinate of the edge at height p.y, compared exactly against p.x.
            Rational t = Rational(p.y - a.y) / Rational(b.y - a.y);
            Rational xint = a.x + t * Rational(b.x - a.x);
            if (xint > p.x) inside = !inside;
        }
    }
    return inside ? Where::Inside : Where::Outside;
}

Rational twice_signed_area(const std::vector<Point>& polygon) {
    Rational acc = 0;
    const size_t m = polygon.size();
    for (size_t i = 0; i < m; ++i) acc += cross(polygon[i], polygon[(i + 1) % m]);
    return acc;
}

bool is_simple_polygon(const std::vector<Point>& polygon) {
    const size_t m = polygon.size();
    if (m < 3) return false;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (polygon[i] == polygon[j]) return false;
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
            const Point &a = polygon[i], &b = polygon[(i + 1) % m];
            const Point &c = polygon[j], &d = polygon[(j + 1) % m];
            if (adjacent) continue;
            if (segments_cross_properly(a, b, c, d)) return false;
            // Vertex on a non-adjacent edge (includes collinear overlap cases).
            if (on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b))
                return false;
        }
    }
    return true;
}

Point primitive_direction(const Point& v) {
    if (v.x == 0 && v.y == 0) throw WorkbenchError("primitive direction of zero vector");
    Integer px = numerator(v.x), qx = denominator(v.x);
    Integer py = numerator(v.y), qy = denominator(v.y);
    Integer l = lcm(qx, qy);
    Integer a = px * (l / qx), b = py * (l / qy);
    Integer g = gcd(abs(a), abs(b));
    return Point{Rational(a / g), Rational(b / g)};
}

bool convex_interiors_overlap(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a == b) return true;
    for (const Point& p : a)
        if (strictly_inside_convex(b, p)) return true;
    for (const Point& p : b)
        if (strictly_inside_convex(a, p)) return true;
    const size_t ma = a.size(), mb = b.size();
    for (size_t i = 0; i < ma; ++i)
        for (size_t j = 0; j < mb; ++j)
            if (segments_cross_properly(a[i], a[(i + 1) % ma], b[j], b[(j + 1) % mb])) return true;
    // Chord case: an edge whose endpoints sit on the other polygon's boundary but
    // whose interior passes through it (e.g. a triangle on a square's diagonal).
    auto half = [](const Point& p, const Point& q) {
        return Point{Rational((p.x + q.x) / 2), Rational((p.y + q.y) / 2)};
    };
    for (size_t i = 0; i < ma; ++i)
        if (strictly_inside_convex(b, half(a[i], a[(i + 1) % ma]))) return true;
    for (size_t j = 0; j < mb; ++j)
        if (strictly_inside_convex(a, half(b[j], b[(j + 1) % mb]))) return true;
    return false;
}

}  // namespace secondary
