#pragma once

#include <vector>

#include "roadgrid/annotations.hpp"
#include "roadgrid/grid_map.hpp"
#include "roadgrid/rddf.hpp"

namespace roadgrid {

struct CarParams {
    double wheelbase = 2.6;    // m
    double speed = 5.0;        // m/s
    double lookahead = 3.0;    // m
    double dt = 0.05;          // s
    double max_steer = 0.55;   // rad
    double steer_blend = 0.2;  // first-order actuator lag, fraction per step
};

struct TraceRow {
    double t, x, y, yaw, steer, cte;
};

struct FollowResult {
    std::vector<TraceRow> trace;
    double rms_cte = 0.0;
    double max_cte = 0.0;
    double steer_rate_max = 0.0;
    bool completed = false;   // reached the end of the truth centerline
    bool left_lane = false;   // extraction failed mid-run
};

// Kinematic bicycle following per-step recomputed RDDF crops by pure
// pursuit; cross-track error is measured against the truth centerline.
FollowResult simulate_follow(const Pose& start, const RoadGridMap& road,
                             const LaneAnnotation& truth_centerline,
                             const CarParams& params = {}, double horizon_s = 120.0,
                             const LaneSearchParams& search = {});

}  // namespace roadgrid
