#include "roadgrid/rddf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace roadgrid {

namespace {

double code_weight(std::uint8_t code, double lane_width) {
    // Boundary codes sit at half the lane width and get zero weight.
    if (code >= kCodeSolid && code <= kCodeBroken50) return 0.0;
    return lane_width / 2.0 - decode_distance(code, lane_width);
}

bool is_in_lane(std::uint8_t code) { return code >= kCodeSolid && code <= kCodeMax; }

}  // namespace

Pose lane_center_pose(const Pose& pose, const RoadGridMap& road,
                      const LaneSearchParams& params) {
    const MapMeta& meta = road.meta();
    const Vec2 normal = pose.left_normal();
    const double step = meta.resolution / 2.0;
    const int n_half = static_cast<int>(std::floor(params.half_range / step));

    struct Sample {
        double t;
        std::uint8_t code;
    };
    std::vector<Sample> samples;
    samples.reserve(2 * n_half + 1);
    for (int i = -n_half; i <= n_half; ++i) {
        double t = i * step;
        Vec2 p = pose.position() + t * normal;
        std::uint8_t code = kCodeOffLane;
        if (meta.contains(p)) {
            int col = static_cast<int>(std::floor((p.x - meta.origin_x) / meta.resolution));
            int row = static_cast<int>(std::floor((p.y - meta.origin_y) / meta.resolution));
            code = road.at(row, col);
        }
        samples.push_back({t, code});
    }

    // Contiguous in-lane runs; keep the one containing the sample nearest to
    // the pose.
    double best_abs = std::numeric_limits<double>::infinity();
    std::size_t best_first = 0, best_last = 0;
    std::size_t i = 0;
    while (i < samples.size()) {
        if (!is_in_lane(samples[i].code)) {
            ++i;
            continue;
        }
        std::size_t first = i;
        while (i < samples.size() && is_in_lane(samples[i].code)) ++i;
        std::size_t last = i - 1;
        double run_abs = std::numeric_limits<double>::infinity();
        for (std::size_t j = first; j <= last; ++j)
            run_abs = std::min(run_abs, std::abs(samples[j].t));
        if (run_abs < best_abs) {
            best_abs = run_abs;
            best_first = first;
            best_last = last;
        }
    }
    if (std::isinf(best_abs))
        throw NoLaneFound("no in-lane cell within the orthogonal search range");

    double weight_sum = 0.0, weighted_t = 0.0, plain_t = 0.0;
    for (std::size_t j = best_first; j <= best_last; ++j) {
        double w = code_weight(samples[j].code, params.lane_width);
        weight_sum += w;
        weighted_t += w * samples[j].t;
        plain_t += samples[j].t;
    }
    double center_t = weight_sum > 0.0
                          ? weighted_t / weight_sum
                          : plain_t / static_cast<double>(best_last - best_first + 1);
    Vec2 center = pose.position() + center_t * normal;
    return {center.x, center.y, pose.yaw};
}

namespace {

std::vector<Waypoint> trace_waypoints(const Pose& pose, const RoadGridMap& road, int n,
                                      const LaneSearchParams& params, double direction) {
    if (n < 1) throw Error("waypoint count must be at least 1");
    std::vector<Waypoint> out;
    Pose next = pose;
    for (int i = 0; i < n; ++i) {
        if (!road.meta().contains(next.position())) {
            if (i == 0) throw NoLaneFound("start pose outside map");
            break;  // map exit
        }
        Pose center;
        try {
            center = lane_center_pose(next, road, params);
        } catch (const NoLaneFound&) {
            if (i == 0) throw;
            break;  // lane ended
        }
        Waypoint wp;
        wp.pose = center;
        if (i >= 1) {
            const Pose& prev = out.back().pose;
            // travel direction, regardless of the stepping direction
            double dx = direction > 0.0 ? center.x - prev.x : prev.x - center.x;
            double dy = direction > 0.0 ? center.y - prev.y : prev.y - center.y;
            if (dx != 0.0 || dy != 0.0) wp.pose.yaw = std::atan2(dy, dx);
        }
        out.push_back(wp);
        next = {wp.pose.x + direction * params.step * std::cos(wp.pose.yaw),
                wp.pose.y + direction * params.step * std::sin(wp.pose.yaw), wp.pose.yaw};
    }
    return out;
}

}  // namespace

std::vector<Waypoint> waypoints_ahead(const Pose& pose, const RoadGridMap& road, int n,
                                      const LaneSearchParams& params) {
    return trace_waypoints(pose, road, n, params, +1.0);
}

std::vector<Waypoint> waypoints_behind(const Pose& pose, const RoadGridMap& road, int n,
                                       const LaneSearchParams& params) {
    std::vector<Waypoint> out = trace_waypoints(pose, road, n, params, -1.0);
    std::reverse(out.begin(), out.end());
    return out;
}

std::pair<double, std::vector<Vec2>> smoothness_objective(const std::vector<Vec2>& points) {
    const std::size_t n = points.size();
    if (n < 3) throw TooFewPoints("smoothness objective needs at least 3 points");

    std::vector<Vec2> second(n, Vec2{});  // second[i] valid for 1..n-2
    double f = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        second[i] = points[i + 1] - 2.0 * points[i] + points[i - 1];
        f += second[i].squared_norm();
    }
    std::vector<Vec2> grad(n, Vec2{});
    for (std::size_t j = 0; j < n; ++j) {
        Vec2 g{};
        if (j >= 2 && j <= n - 1) g = g + second[j - 1];
        if (j >= 1 && j + 1 < n) g = g - 2.0 * second[j];
        if (j + 2 < n) g = g + second[j + 1];
        grad[j] = 2.0 * g;
    }
    return {f, grad};
}

namespace {

double objective_value(const std::vector<Vec2>& pts) {
    double f = 0.0;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i)
        f += (pts[i + 1] - 2.0 * pts[i] + pts[i - 1]).squared_norm();
    return f;
}


double inf_norm(const std::vector<Vec2>& v, std::size_t first, std::size_t last) {
    double m = 0.0;
    for (std::size_t i = first; i <= last; ++i)
        m = std::max({m, std::abs(v[i].x), std::abs(v[i].y)});
    return m;
}

double dot(const std::vector<Vec2>& a, const std::vector<Vec2>& b, std::size_t first,
           std::size_t last) {
    double s = 0.0;
    for (std::size_t i = first; i <= last; ++i) s += a[i].dot(b[i]);
    return s;
}

}  // namespace

std::vector<Vec2> smooth_path(std::vector<Vec2> points, const SmoothParams& params) {
    const std::size_t n = points.size();
    if (n < 3) throw TooFewPoints("smoothing needs at least 3 points");
    const std::size_t first = 1, last = n - 2;  // interior index range

    auto [f, grad] = smoothness_objective(points);
    if (inf_norm(grad, first, last) <= params.gradient_tol) return points;

    std::vector<Vec2> dir(n, Vec2{});
    for (std::size_t i = first; i <= last; ++i) dir[i] = -1.0 * grad[i];
    double alpha = 1.0;
    std::vector<Vec2> trial(points);

    for (int iter = 0; iter < params.max_iterations; ++iter) {
        double gd = dot(grad, dir, first, last);
        if (gd >= 0.0) {  // not a descent direction; restart on steepest descent
            for (std::size_t i = first; i <= last; ++i) dir[i] = -1.0 * grad[i];
            gd = dot(grad, dir, first, last);
            if (gd >= 0.0) break;
        }

        // Armijo backtracking, warm-started from the previous step size.
        alpha = std::min(alpha * 2.0, 1.0e3);
        double f_trial;
        while (true) {
            for (std::size_t i = first; i <= last; ++i)
                trial[i] = points[i] + alpha * dir[i];
            f_trial = objective_value(trial);
            if (f_trial <= f + 1e-4 * alpha * gd || alpha < 1e-16) break;
            alpha *= 0.5;
        }
        if (alpha < 1e-16) break;
        for (std::size_t i = first; i <= last; ++i) points[i] = trial[i];

        auto [f_new, grad_new] = smoothness_objective(points);
        f = f_new;
        if (inf_norm(grad_new, first, last) <= params.gradient_tol) break;

        double denom = dot(grad, grad, first, last);
        double beta = denom > 0.0 ? std::max(0.0, (dot(grad_new, grad_new, first, last) -
                                                   dot(grad_new, grad, first, last)) /
                                                      denom)
                                  : 0.0;
        for (std::size_t i = first; i <= last; ++i)
            dir[i] = -1.0 * grad_new[i] + beta * dir[i];
        grad = std::move(grad_new);
    }
    return points;
}

void smooth_waypoints(std::vector<Waypoint>& waypoints, const SmoothParams& params) {
    std::vector<Vec2> pts;
    pts.reserve(waypoints.size());
    for (const Waypoint& w : waypoints) pts.push_back(w.pose.position());
    pts = smooth_path(std::move(pts), params);

    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 d;
        if (i == 0)
            d = pts[1] - pts[0];
        else if (i + 1 == n)
            d = pts[n - 1] - pts[n - 2];
        else
            d = pts[i + 1] - pts[i - 1];
        waypoints[i].pose.x = pts[i].x;
        waypoints[i].pose.y = pts[i].y;
        if (d.x != 0.0 || d.y != 0.0) waypoints[i].pose.yaw = std::atan2(d.y, d.x);
    }
}

RddfCrop compute_rddf(const Pose& pose, const RoadGridMap& road,
                      const LaneSearchParams& params) {
    // One extra behind waypoint: the first one is the lane-centered current
    // pose, which re-enters the chain as the first ahead waypoint.
    std::vector<Waypoint> behind = waypoints_behind(pose, road, 51, params);
    if (!behind.empty()) behind.pop_back();
    std::vector<Waypoint> ahead = waypoints_ahead(pose, road, 150, params);

    RddfCrop crop;
    crop.waypoints = std::move(behind);
    crop.current_index = crop.waypoints.size();
    crop.waypoints.insert(crop.waypoints.end(), ahead.begin(), ahead.end());
    if (crop.waypoints.size() >= 3) smooth_waypoints(crop.waypoints);
    return crop;
}

void write_rddf(const std::filesystem::path& file, const std::vector<Waypoint>& waypoints) {
    std::ofstream out(file);
    if (!out) throw StorageFailure("cannot write " + file.string());
    out << "# rddf v1\n";
    for (const Waypoint& w : waypoints) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f %d %.6f\n", w.pose.x, w.pose.y,
                      w.pose.yaw, static_cast<int>(w.annotation), w.annotation_value);
        out << buf;
    }
    if (!out) throw StorageFailure("failed writing " + file.string());
}

std::vector<Waypoint> read_rddf(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw StorageFailure("cannot open " + file.string());
    std::vector<Waypoint> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        Waypoint w;
        int ann;
        if (!(ls >> w.pose.x >> w.pose.y >> w.pose.yaw >> ann >> w.annotation_value))
            throw ParseError(file.string() + ":" + std::to_string(line_no) +
                             ": malformed waypoint line");
        if (ann < 0 || ann > 3)
            throw ParseError(file.string() + ":" + std::to_string(line_no) +
                             ": bad annotation code");
        w.annotation = static_cast<WaypointAnnotation>(ann);
        out.push_back(w);
    }
    return out;
}

}  // namespace roadgrid
