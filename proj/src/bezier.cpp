#include "roadgrid/bezier.hpp"

#include <cmath>

namespace roadgrid {

namespace {

double point_line_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double len2 = ab.squared_norm();
    if (len2 <= 0.0) return (p - a).norm();
    double t = (p - a).dot(ab) / len2;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    return (p - (a + t * ab)).norm();
}

bool flat_enough(const CubicSegment& s, double tol) {
    // Control points bound the curve; if both inner controls are within tol
    // of the chord, so is every curve point.
    return point_line_distance(s.c1, s.p0, s.p1) <= tol &&
           point_line_distance(s.c2, s.p0, s.p1) <= tol;
}

void split(const CubicSegment& s, CubicSegment& left, CubicSegment& right) {
    Vec2 m01 = 0.5 * (s.p0 + s.c1);
    Vec2 m12 = 0.5 * (s.c1 + s.c2);
    Vec2 m23 = 0.5 * (s.c2 + s.p1);
    Vec2 m012 = 0.5 * (m01 + m12);
    Vec2 m123 = 0.5 * (m12 + m23);
    Vec2 mid = 0.5 * (m012 + m123);
    left = {s.p0, m01, m012, mid};
    right = {mid, m123, m23, s.p1};
}

void flatten_segment(const CubicSegment& s, double tol, int depth,
                     std::vector<Vec2>& out) {
    if (depth >= 24 || flat_enough(s, tol)) {
        out.push_back(s.p1);
        return;
    }
    CubicSegment left, right;
    split(s, left, right);
    flatten_segment(left, tol, depth + 1, out);
    flatten_segment(right, tol, depth + 1, out);
}

}  // namespace

BezierChain autosmooth(const std::vector<Vec2>& points) {
    const std::size_t n = points.size();
    if (n < 2) throw DegeneratePolyline("need at least 2 control points");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if ((points[i + 1] - points[i]).norm() <= 0.0)
            throw DegeneratePolyline("zero-length polyline edge");

    // Unit tangent at every node.
    std::vector<Vec2> tangent(n);
    tangent[0] = (points[1] - points[0]).normalized();
    tangent[n - 1] = (points[n - 1] - points[n - 2]).normalized();
    for (std::size_t i = 1; i + 1 < n; ++i)
        tangent[i] = (points[i + 1] - points[i - 1]).normalized();

    BezierChain chain;
    chain.segments.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double chord = (points[i + 1] - points[i]).norm();
        chain.segments.push_back({points[i],
                                  points[i] + tangent[i] * (chord / 3.0),
                                  points[i + 1] - tangent[i + 1] * (chord / 3.0),
                                  points[i + 1]});
    }
    return chain;
}

std::vector<Vec2> flatten(const BezierChain& chain, double tol) {
    if (tol <= 0.0) throw Error("flatten tolerance must be positive");
    std::vector<Vec2> out;
    if (chain.segments.empty()) return out;
    out.push_back(chain.segments.front().p0);
    for (const CubicSegment& s : chain.segments)
        flatten_segment(s, tol, 0, out);
    return out;
}

}  // namespace roadgrid
