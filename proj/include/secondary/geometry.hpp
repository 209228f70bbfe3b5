#pragma once

#include <vector>

#include "secondary/rational.hpp"

namespace secondary {

struct Point {
    Rational x, y;

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend bool operator<(const Point& a, const Point& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
    friend Point operator-(const Point& a, const Point& b) {
        return Point{Rational(a.x - b.x), Rational(a.y - b.y)};
    }
    friend Point operator+(const Point& a, const Point& b) {
        return Point{Rational(a.x + b.x), Rational(a.y + b.y)};
    }
};

/// Cross product of plane vectors (z-component of the 3D cross product).
inline Rational cross(const Point& u, const Point& v) { return Rational(u.x * v.y - u.y * v.x); }
inline Rational dot(const Point& u, const Point& v) { return Rational(u.x * v.x + u.y * v.y); }

/// Rotate a vector by +90 degrees.
inline Point rot90(const Point& v) { return Point{Rational(-v.y), Rational(v.x)}; }

/// Sign of the determinant |q-p, r-p|: +1 = counterclockwise turn, 0 = collinear.
inline int orientation(const Point& p, const Point& q, const Point& r) {
    return sign_of(cross(q - p, r - p));
}

/// Labeled planar point set with no duplicates and no three points collinear.
struct Configuration {
    std::vector<Point> points;

    int size() const { return static_cast<int>(points.size()); }
    const Point& operator[](int label) const { return points[static_cast<size_t>(label)]; }
};

/// Validates distinctness and general position; throws DuplicatePoint / CollinearTriple.
Configuration validate_configuration(const std::vector<Point>& points);

struct HullResult {
    std::vector<int> hull;      ///< counterclockwise cycle, rotated to start at smallest label
    std::vector<int> interior;  ///< labels strictly inside, ascending
};

/// Convex hull of a subset of labels (at least 3). Collinearity cannot occur by
/// the configuration invariant.
HullResult convex_hull(const Configuration& config, const std::vector<int>& indices);

/// Convex hull of all labels.
HullResult convex_hull(const Configuration& config);

/// True iff p is strictly inside the counterclockwise convex polygon.
bool strictly_inside_convex(const std::vector<Point>& ccw_polygon, const Point& p);

/// True iff p lies on the closed segment [a, b].
bool on_segment(const Point& a, const Point& b, const Point& p);

/// True iff the open segments (a,b) and (c,d) cross in a single interior point.
bool segments_cross_properly(const Point& a, const Point& b, const Point& c, const Point& d);

enum class Where { Inside, Boundary, Outside };

/// Exact point location in a simple polygon (vertices in any orientation).
Where locate_in_polygon(const std::vector<Point>& polygon, const Point& p);

/// Twice the signed area of a polygon (positive = counterclockwise).
Rational twice_signed_area(const std::vector<Point>& polygon);

/// True iff the polygon is simple: distinct vertices, no two non-adjacent edges
/// intersect, adjacent edges meet only at their shared vertex.
bool is_simple_polygon(const std::vector<Point>& polygon);

/// Scale a nonzero rational vector to the coprime integer vector with the same
/// direction, e.g. (2/3, -4) -> (1, -6).
Point primitive_direction(const Point& v);

/// Rotate a label cycle so the smallest label comes first (orientation kept).
std::vector<int> rotate_to_smallest(const std::vector<int>& cycle);

/// True iff interiors of two strictly convex CCW polygons intersect.
bool convex_interiors_overlap(const std::vector<Point>& a, const std::vector<Point>& b);

}  // namespace secondary
