#pragma once

#include <cstdint>
#include <vector>

#include "roadgrid/annotations.hpp"
#include "roadgrid/grid_map.hpp"

namespace roadgrid {

struct SynthParams {
    double asphalt_mean = 0.30;
    double marking_mean = 0.85;
    double noise_sd = 0.05;
    double unknown_fraction = 0.02;
    double dash_length = 2.0;  // broken-line dash / gap along arclength, m
    double gap_length = 2.0;
};

// Synthetic remission imagery from lane annotations: bright markings on the
// boundary band, asphalt inside the lane, slightly darker ground elsewhere,
// plus uniformly scattered UNKNOWN holes. Deterministic for a given seed.
RemissionGridMap generate_remission(const std::vector<LaneAnnotation>& annotations,
                                    const MapMeta& meta,
                                    const SynthParams& params = {},
                                    std::uint64_t seed = 0);

}  // namespace roadgrid
