#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "roadgrid/grid_map.hpp"

namespace roadgrid {

enum class WaypointAnnotation : int { none = 0, max_speed = 1, speed_bump = 2, crosswalk = 3 };

struct Waypoint {
    Pose pose;
    WaypointAnnotation annotation = WaypointAnnotation::none;
    double annotation_value = 0.0;  // m/s for max_speed, 0 otherwise
};

// Sliding waypoint window around the current pose, ordered behind-to-ahead.
struct RddfCrop {
    std::vector<Waypoint> waypoints;
    std::size_t current_index = 0;
};

struct LaneSearchParams {
    double half_range = 6.4;               // orthogonal scan half-range, m (2 lane widths)
    double lane_width = kDefaultLaneWidth;
    double step = 0.5;                     // waypoint spacing, m
};

// Scans the line orthogonal to the pose heading, picks the contiguous
// in-lane code run nearest to the pose and returns the lane-center position
// on that run (weighted centroid; boundary codes weigh zero). The returned
// yaw is the input yaw.
Pose lane_center_pose(const Pose& pose, const RoadGridMap& road,
                      const LaneSearchParams& params = {});

// Steps 0.5 m at a time along the lane, re-centering at every step; yaws
// follow the displacement between consecutive centers. Truncates early when
// the lane or the map ends (only an immediate miss is an error).
std::vector<Waypoint> waypoints_ahead(const Pose& pose, const RoadGridMap& road, int n,
                                      const LaneSearchParams& params = {});

// Mirror of waypoints_ahead stepping backwards; waypoint yaws still face the
// travel direction and the list is ordered farthest-behind first.
std::vector<Waypoint> waypoints_behind(const Pose& pose, const RoadGridMap& road, int n,
                                       const LaneSearchParams& params = {});

// f = sum of squared second differences; exact analytic gradient for every
// point (the smoother holds the endpoints fixed).
std::pair<double, std::vector<Vec2>> smoothness_objective(const std::vector<Vec2>& points);

struct SmoothParams {
    int max_iterations = 200;
    double gradient_tol = 1e-6;  // infinity norm, m
};

// Minimizes the smoothness objective over the interior points with both
// endpoints fixed (Polak-Ribiere+ conjugate gradient, backtracking line
// search).
std::vector<Vec2> smooth_path(std::vector<Vec2> points, const SmoothParams& params = {});

// Smooths the waypoint chain in place and recomputes yaws from the smoothed
// neighbors (central difference, one-sided at the ends).
void smooth_waypoints(std::vector<Waypoint>& waypoints, const SmoothParams& params = {});

// 50 waypoints behind + 150 ahead of the pose, smoothed as one chain.
RddfCrop compute_rddf(const Pose& pose, const RoadGridMap& road,
                      const LaneSearchParams& params = {});

// RDDF text file: header "# rddf v1", then one waypoint per line:
// "x_m y_m yaw_rad ann_code ann_value".
void write_rddf(const std::filesystem::path& file, const std::vector<Waypoint>& waypoints);
std::vector<Waypoint> read_rddf(const std::filesystem::path& file);

}  // namespace roadgrid
