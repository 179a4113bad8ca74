#include "roadgrid/follower.hpp"

#include <algorithm>
#include <cmath>

namespace roadgrid {

namespace {

// First waypoint at or beyond the lookahead distance, searching forward from
// the current-pose index; falls back to the last waypoint near the chain end.
const Waypoint* pick_target(const RddfCrop& crop, const Pose& car, double lookahead) {
    for (std::size_t i = crop.current_index; i < crop.waypoints.size(); ++i) {
        const Waypoint& w = crop.waypoints[i];
        Vec2 to{w.pose.x - car.x, w.pose.y - car.y};
        if (to.dot(car.heading()) <= 0.0) continue;  // behind the car
        if (to.norm() >= lookahead) return &w;
    }
    if (crop.waypoints.empty()) return nullptr;
    const Waypoint& last = crop.waypoints.back();
    Vec2 to{last.pose.x - car.x, last.pose.y - car.y};
    return to.dot(car.heading()) > 0.0 ? &last : nullptr;
}

}  // namespace

FollowResult simulate_follow(const Pose& start, const RoadGridMap& road,
                             const LaneAnnotation& truth_centerline,
                             const CarParams& params, double horizon_s,
                             const LaneSearchParams& search) {
    if (params.wheelbase <= 0.0 || params.speed <= 0.0 || params.lookahead <= 0.0 ||
        params.dt <= 0.0 || params.max_steer <= 0.0 || params.steer_blend <= 0.0 ||
        params.steer_blend > 1.0)
        throw Error("car parameters must be positive");
    if (params.lookahead <= params.dt * params.speed)
        throw Error("lookahead must exceed the per-step travel distance");

    Centerline truth(truth_centerline);
    const double stop_at = truth.length() - std::max(params.lookahead, 3.0);

    FollowResult result;
    Pose car = start;
    double steer = 0.0;
    double prev_steer = 0.0;
    double sum_sq = 0.0;
    const int steps = static_cast<int>(std::ceil(horizon_s / params.dt));

    for (int k = 0; k < steps; ++k) {
        RddfCrop crop;
        try {
            crop = compute_rddf(car, road, search);
        } catch (const NoLaneFound&) {
            result.left_lane = true;
            break;
        }
        const Waypoint* target = pick_target(crop, car, params.lookahead);
        if (target == nullptr) break;

        Vec2 to{target->pose.x - car.x, target->pose.y - car.y};
        double dist = to.norm();
        double alpha = normalize_angle(std::atan2(to.y, to.x) - car.yaw);
        double raw = std::atan2(2.0 * params.wheelbase * std::sin(alpha), dist);
        raw = std::clamp(raw, -params.max_steer, params.max_steer);
        // the wheel tracks the command with a first-order lag; this damps the
        // cell-quantization jitter in the per-step extracted waypoints
        steer += params.steer_blend * (raw - steer);

        double t = k * params.dt;
        CenterlineHit hit = truth.nearest(car.position());
        result.trace.push_back({t, car.x, car.y, car.yaw, steer, hit.distance});
        sum_sq += hit.distance * hit.distance;
        result.max_cte = std::max(result.max_cte, hit.distance);
        if (k > 0)
            result.steer_rate_max =
                std::max(result.steer_rate_max, std::abs(steer - prev_steer) / params.dt);
        prev_steer = steer;

        if (hit.arclength >= stop_at) {
            result.completed = true;
            break;
        }

        car.x += params.speed * std::cos(car.yaw) * params.dt;
        car.y += params.speed * std::sin(car.yaw) * params.dt;
        car.yaw = normalize_angle(car.yaw +
                                  params.speed / params.wheelbase * std::tan(steer) * params.dt);
    }

    if (!result.trace.empty())
        result.rms_cte = std::sqrt(sum_sq / static_cast<double>(result.trace.size()));
    return result;
}

}  // namespace roadgrid
