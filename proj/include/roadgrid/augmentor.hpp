#pragma once

#include <vector>

#include "roadgrid/rasterizer.hpp"

namespace roadgrid {

struct AugmentParams {
    std::vector<double> rotations_deg;  // default 0, 15, ..., 345
    std::vector<double> offsets_m;      // across the road; default -1.5 .. 1.5 step 0.5
    AugmentParams();
};

// Expands one crop center into rotated/translated 120x120 pairs (168 with the
// default parameter sets). Each target cell center is inverse-mapped into the
// full source maps and sampled nearest-neighbor; rotation is about the crop
// center, translation is perpendicular to the local road yaw.
std::vector<CropPair> augment_pair(const RemissionGridMap& remission,
                                   const RoadGridMap& road, const Pose& center,
                                   const AugmentParams& params = AugmentParams());

}  // namespace roadgrid
