#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "roadgrid/bezier.hpp"
#include "roadgrid/grid_map.hpp"
#include "roadgrid/types.hpp"

namespace roadgrid {

enum class Marking { solid, broken, solid_50, broken_50, none };

std::string marking_name(Marking m);
Marking marking_from_name(const std::string& name);
std::uint8_t marking_code(Marking m);  // none maps to off-lane (0)

// A lane centerline: control polyline auto-smoothed into a cubic Bezier
// chain, with the boundary marking class on each side. Direction of travel
// follows the point order. Lower draw_order is drawn first ("main" lane).
struct LaneAnnotation {
    std::vector<Vec2> points;
    Marking left_marking = Marking::none;
    Marking right_marking = Marking::none;
    double lane_width = kDefaultLaneWidth;
    int draw_order = 0;
};

enum class Side { left, right, on };

struct CenterlineHit {
    double distance = 0.0;   // unsigned, m
    Side side = Side::on;
    double arclength = 0.0;  // from chain start to the foot point, m
    double tangent = 0.0;    // centerline heading at the foot point, rad
};

// Flattened centerline with arclength bookkeeping; built once, queried often.
class Centerline {
public:
    explicit Centerline(const LaneAnnotation& ann, double tol = 0.01);

    CenterlineHit nearest(const Vec2& p) const;
    double length() const { return cum_.back(); }
    const std::vector<Vec2>& polyline() const { return pts_; }
    const std::vector<double>& cum_arclength() const { return cum_; }

    // Position and travel heading at a given arclength (clamped to the chain).
    Pose pose_at(double arclength) const;

private:
    std::vector<Vec2> pts_;
    std::vector<double> cum_;
};

CenterlineHit nearest_centerline(const LaneAnnotation& ann, const Vec2& p);

// Annotation file: one block per lane,
//   lane <draw_order> <lane_width_m> <left_marking> <right_marking>
//   pt <x_m> <y_m>
//   ...
//   end
// '#' starts a comment.
std::vector<LaneAnnotation> read_annotations(const std::filesystem::path& file);
void write_annotations(const std::filesystem::path& file,
                       const std::vector<LaneAnnotation>& annotations);

}  // namespace roadgrid
