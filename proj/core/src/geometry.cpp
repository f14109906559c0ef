#include "boustro/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace boustro {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Collinearity threshold for hull construction, in m^2 (signed doubled area).
constexpr double kHullEps = 1e-9;

}  // namespace

double ConvexPolygon::area() const {
    double twice = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = vertices[i];
        const Point2& b = vertices[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * twice;
}

double ConvexPolygon::min_x() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) m = std::min(m, v.x);
    return m;
}

double ConvexPolygon::max_x() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) m = std::max(m, v.x);
    return m;
}

double ConvexPolygon::min_y() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) m = std::min(m, v.y);
    return m;
}

double ConvexPolygon::max_y() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) m = std::max(m, v.y);
    return m;
}

bool ConvexPolygon::contains(const Point2& p, double tol) const {
    const std::size_t n = vertices.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = vertices[i];
        const Point2& b = vertices[(i + 1) % n];
        // p must be on or left of every CCW edge.
        if (cross(a, b, p) < -tol) return false;
    }
    return true;
}

void ConvexPolygon::validate() const {
    const std::size_t n = vertices.size();
    if (n < 3) throw ValidationError("polygon", "polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = vertices[i];
        const Point2& b = vertices[(i + 1) % n];
        const Point2& c = vertices[(i + 2) % n];
        if (!std::isfinite(a.x) || !std::isfinite(a.y))
            throw ValidationError("polygon", "polygon vertex is not finite");
        const double dx = b.x - a.x;
        const double dy = b.y - a.y;
        if (dx * dx + dy * dy < 1e-18)
            throw ValidationError("polygon", "duplicate polygon vertices");
        if (cross(a, b, c) <= 0.0)
            throw ValidationError("polygon", "polygon is not strictly convex CCW");
    }
}

ConvexPolygon convex_hull(std::vector<Point2> points) {
    if (points.size() < 3)
        throw DegenerateGeometry("convex hull needs at least 3 points");

    std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Point2& a, const Point2& b) {
                                 return std::abs(a.x - b.x) <= 1e-9 &&
                                        std::abs(a.y - b.y) <= 1e-9;
                             }),
                 points.end());
    if (points.size() < 3)
        throw DegenerateGeometry("convex hull needs at least 3 distinct points");

    // Andrew monotone chain; strict turns only, so collinear points drop out.
    const std::size_t n = points.size();
    std::vector<Point2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= kHullEps) --k;
        hull[k++] = points[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= kHullEps) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);  // last point equals the first

    if (hull.size() < 3)
        throw DegenerateGeometry("input points are collinear");

    ConvexPolygon poly{std::move(hull)};
    poly.validate();
    return poly;
}

double clip_segment_length(const ConvexPolygon& poly, double line_y,
                           double x_start, double x_end) {
    const double dx = x_end - x_start;
    if (dx <= 0.0) return 0.0;

    // Parameterize P(t) = (x_start + t*dx, line_y), t in [0,1], and intersect
    // the t-interval with every CCW edge half-plane.
    double t_lo = 0.0;
    double t_hi = 1.0;
    const std::size_t n = poly.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = poly.vertices[i];
        const Point2& b = poly.vertices[(i + 1) % n];
        const double ex = b.x - a.x;
        const double ey = b.y - a.y;
        // inside: ex*(P.y - a.y) - ey*(P.x - a.x) >= 0, affine in t.
        const double c0 = ex * (line_y - a.y) - ey * (x_start - a.x);
        const double c1 = -ey * dx;
        if (c1 == 0.0) {
            if (c0 < 0.0) return 0.0;
            continue;
        }
        const double t = -c0 / c1;
        if (c1 > 0.0) {
            t_lo = std::max(t_lo, t);
        } else {
            t_hi = std::min(t_hi, t);
        }
        if (t_lo >= t_hi) return 0.0;
    }
    return (t_hi - t_lo) * dx;
}

std::vector<Trackline> generate_tracklines(const std::vector<ConvexPolygon>& sources,
                                           const AreaBounds& area,
                                           double dedup_tol) {
    std::vector<double> ordinates;
    ordinates.reserve(2 * sources.size());
    for (const auto& poly : sources) {
        ordinates.push_back(poly.min_y());
        ordinates.push_back(poly.max_y());
    }
    std::sort(ordinates.begin(), ordinates.end());

    std::vector<Trackline> lines;
    lines.reserve(ordinates.size());
    for (double y : ordinates) {
        if (!lines.empty() && y - lines.back().y < dedup_tol) continue;
        lines.push_back(Trackline{y, area.x_min, area.x_max});
    }
    return lines;
}

ConvexPolygon ellipse_polygon(const Point2& center, double semi_a, double semi_b,
                              double rotation, int samples) {
    if (samples < 3) throw DegenerateGeometry("ellipse needs at least 3 samples");
    if (semi_a <= 0.0 || semi_b <= 0.0)
        throw DegenerateGeometry("ellipse semi-axes must be positive");

    const double ct = std::cos(rotation);
    const double st = std::sin(rotation);
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / samples;
        const double ex = semi_a * std::cos(phi);
        const double ey = semi_b * std::sin(phi);
        pts.push_back(Point2{center.x + ct * ex - st * ey,
                             center.y + st * ex + ct * ey});
    }
    return convex_hull(std::move(pts));
}

}  // namespace boustro
