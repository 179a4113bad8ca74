#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "roadgrid/grid_map.hpp"

namespace roadgrid {

// Stand-ins for the trained network: oracle returns the stored ground truth,
// noisy corrupts it cellwise, external reads pre-computed inference images
// ({crop_id}_pred.png, road-map PNG format).
enum class SegmenterKind { oracle, noisy, external };

struct SegmenterConfig {
    SegmenterKind kind = SegmenterKind::oracle;
    double corruption_p = 0.0;  // noisy only, in [0, 1]
    std::uint64_t seed = 0;
    std::filesystem::path inference_dir;  // external only
};

SegmenterConfig parse_segmenter_spec(const std::string& spec);  // "oracle" | "noisy:P:SEED" | "external:DIR"

// Each cell is independently replaced, with probability p, by a uniformly
// random different code.
RoadGridMap corrupt_cells(const RoadGridMap& map, double p, std::uint64_t seed);

RoadGridMap segment(const SegmenterConfig& config, const RemissionGridMap& crop,
                    const RoadGridMap* ground_truth, const std::string& crop_id = "");

}  // namespace roadgrid
