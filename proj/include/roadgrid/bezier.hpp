#pragma once

#include <vector>

#include "roadgrid/types.hpp"

namespace roadgrid {

struct CubicSegment {
    Vec2 p0, c1, c2, p1;

    Vec2 eval(double t) const {
        double u = 1.0 - t;
        return u * u * u * p0 + 3.0 * u * u * t * c1 + 3.0 * u * t * t * c2 +
               t * t * t * p1;
    }
};

// Chain of cubic segments, C1-continuous at the joints.
struct BezierChain {
    std::vector<CubicSegment> segments;
};

// Turns a control polyline into a cubic Bezier chain, one segment per edge.
// Interior tangents point along p[i+1] - p[i-1]; handle length is 1/3 of the
// adjacent chord. Endpoint handles lie on the single adjacent chord.
BezierChain autosmooth(const std::vector<Vec2>& points);

// Piecewise-linear approximation by adaptive subdivision; max deviation from
// the true curve is bounded by tol.
std::vector<Vec2> flatten(const BezierChain& chain, double tol = 0.01);

}  // namespace roadgrid
