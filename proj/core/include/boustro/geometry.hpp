#pragma once

#include <vector>

#include "boustro/errors.hpp"

namespace boustro {

/// Planar position, meters east (x) / north (y).
struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Axis-aligned rectangular operating area.
struct AreaBounds {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    bool valid() const { return x_min < x_max && y_min < y_max; }
    bool contains(const Point2& p, double tol = 0.0) const {
        return p.x >= x_min - tol && p.x <= x_max + tol &&
               p.y >= y_min - tol && p.y <= y_max + tol;
    }
};

/// Strictly convex polygon, vertices in counter-clockwise order.
/// Construct through convex_hull() or ellipse_polygon() to guarantee the
/// invariants; hand-built instances can be checked with validate().
struct ConvexPolygon {
    std::vector<Point2> vertices;

    double area() const;
    double min_x() const;
    double max_x() const;
    double min_y() const;
    double max_y() const;
    bool contains(const Point2& p, double tol = 1e-9) const;

    /// Throws ValidationError if the polygon is not a strictly convex CCW
    /// polygon with at least 3 distinct vertices.
    void validate() const;
};

/// One horizontal survey line at ordinate y, spanning [x_start, x_end].
struct Trackline {
    double y = 0.0;
    double x_start = 0.0;
    double x_end = 0.0;

    double length() const { return x_end - x_start; }
};

/// Minimal convex polygon containing all input points, CCW.
/// Throws DegenerateGeometry when the input is collinear (< 3 hull vertices).
ConvexPolygon convex_hull(std::vector<Point2> points);

/// Length of the horizontal segment {y = line_y, x in [x_start, x_end]}
/// inside the polygon. Disjoint configurations return 0.
double clip_segment_length(const ConvexPolygon& poly, double line_y,
                           double x_start, double x_end);

/// One candidate trackline per y-extremum of every source polygon, spanning
/// the full area x-extent. Ordinates closer than dedup_tol collapse to the
/// first occurrence; result is sorted by y.
std::vector<Trackline> generate_tracklines(const std::vector<ConvexPolygon>& sources,
                                           const AreaBounds& area,
                                           double dedup_tol = 1.0);

/// Convex polygonalization of an ellipse (boundary samples -> hull).
ConvexPolygon ellipse_polygon(const Point2& center, double semi_a, double semi_b,
                              double rotation, int samples = 32);

}  // namespace boustro
