#include "roadgrid/segmenter.hpp"

#include <random>
#include <sstream>

#include "roadgrid/map_io.hpp"

namespace roadgrid {

SegmenterConfig parse_segmenter_spec(const std::string& spec) {
    SegmenterConfig cfg;
    std::istringstream ss(spec);
    std::string kind;
    std::getline(ss, kind, ':');
    if (kind == "oracle") {
        cfg.kind = SegmenterKind::oracle;
    } else if (kind == "noisy") {
        cfg.kind = SegmenterKind::noisy;
        std::string p, seed;
        std::getline(ss, p, ':');
        std::getline(ss, seed, ':');
        try {
            cfg.corruption_p = std::stod(p);
            if (!seed.empty()) cfg.seed = std::stoull(seed);
        } catch (const std::exception&) {
            throw ParseError("bad noisy segmenter spec '" + spec + "'");
        }
        if (cfg.corruption_p < 0.0 || cfg.corruption_p > 1.0)
            throw ParseError("corruption probability must be in [0, 1]");
    } else if (kind == "external") {
        cfg.kind = SegmenterKind::external;
        std::string dir;
        std::getline(ss, dir);
        if (dir.empty()) throw ParseError("external segmenter needs a directory");
        cfg.inference_dir = dir;
    } else {
        throw ParseError("unknown segmenter kind '" + kind + "'");
    }
    return cfg;
}

RoadGridMap corrupt_cells(const RoadGridMap& map, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw Error("corruption probability must be in [0, 1]");
    RoadGridMap out = map;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> other(0, kCodeMax - 1);
    for (std::uint8_t& cell : out.cells()) {
        if (coin(rng) >= p) continue;
        int r = other(rng);
        if (r >= cell) ++r;  // never re-draws the original code
        cell = static_cast<std::uint8_t>(r);
    }
    return out;
}

RoadGridMap segment(const SegmenterConfig& config, const RemissionGridMap& crop,
                    const RoadGridMap* ground_truth, const std::string& crop_id) {
    if (crop.size() != kCropSize)
        throw ShapeMismatch("segmenter input must be a 120x120 crop");

    switch (config.kind) {
        case SegmenterKind::oracle:
        case SegmenterKind::noisy: {
            if (ground_truth == nullptr)
                throw MissingGroundTruth("oracle/noisy segmenter needs ground truth");
            if (!(ground_truth->meta() == crop.meta()))
                throw ShapeMismatch("ground truth crop does not align with input");
            if (config.kind == SegmenterKind::oracle) return *ground_truth;
            return corrupt_cells(*ground_truth, config.corruption_p, config.seed);
        }
        case SegmenterKind::external: {
            auto file = config.inference_dir / (crop_id + "_pred.png");
            if (!std::filesystem::exists(file))
                throw MissingInferenceFile("no inference file " + file.string());
            return read_road_png(file, crop.meta());
        }
    }
    throw Error("bad segmenter kind");
}

}  // namespace roadgrid
