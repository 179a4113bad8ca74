#pragma once

#include <functional>
#include <vector>

#include "roadgrid/annotations.hpp"
#include "roadgrid/grid_map.hpp"

namespace roadgrid {

// Aligned remission/road crops used for training and evaluation.
struct CropPair {
    RemissionGridMap remission;
    RoadGridMap road;
    Pose center_pose;  // crop center + local road yaw
};

struct BandCell {
    int row = 0;
    int col = 0;
    double distance = 0.0;   // unsigned distance to the centerline, m
    Side side = Side::on;
    double arclength = 0.0;  // along the centerline at the foot point, m
};

// Visits every cell whose center lies within half_width of the centerline,
// with its nearest-point data. Cells are visited once each.
void scan_lane_band(const Centerline& center, const MapMeta& meta, double half_width,
                    const std::function<void(const BandCell&)>& visit);

// Renders annotations (processed in draw order, later overwriting earlier)
// into a road grid map. In-lane cells get quantized distance codes; the
// outermost resolution-wide ring gets the side's boundary-marking code.
RoadGridMap rasterize(std::vector<LaneAnnotation> annotations, const MapMeta& meta);

// Cuts one axis-aligned 120x120 pair per route sample (resampled by
// arclength at the given spacing, both endpoints included), centered at the
// nearest cell to the sample.
std::vector<CropPair> cut_crop_pairs(const RemissionGridMap& remission,
                                     const RoadGridMap& road,
                                     const std::vector<Pose>& route,
                                     double spacing = 5.0);

// Single crop cut helper shared by cut_crop_pairs and the augmentor.
CropPair cut_crop(const RemissionGridMap& remission, const RoadGridMap& road,
                  const Pose& center);

}  // namespace roadgrid
