#include "roadgrid/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "roadgrid/rasterizer.hpp"

namespace roadgrid {

RemissionGridMap generate_remission(const std::vector<LaneAnnotation>& annotations,
                                    const MapMeta& meta, const SynthParams& params,
                                    std::uint64_t seed) {
    if (!meta.valid()) throw Error("invalid map meta");

    enum class CellClass : std::uint8_t { ground, asphalt, marking };
    std::vector<CellClass> cls(static_cast<std::size_t>(meta.size) * meta.size,
                               CellClass::ground);

    std::vector<LaneAnnotation> sorted = annotations;
    std::sort(sorted.begin(), sorted.end(),
              [](const LaneAnnotation& a, const LaneAnnotation& b) {
                  return a.draw_order < b.draw_order;
              });
    const double cycle = params.dash_length + params.gap_length;
    for (const LaneAnnotation& ann : sorted) {
        const double half = ann.lane_width / 2.0;
        Centerline center(ann);
        scan_lane_band(center, meta, half, [&](const BandCell& c) {
            std::size_t idx = static_cast<std::size_t>(c.row) * meta.size + c.col;
            if (c.distance > half - meta.resolution) {
                Marking m = c.side == Side::right ? ann.right_marking : ann.left_marking;
                bool lit = false;
                switch (m) {
                    case Marking::solid:
                    case Marking::solid_50:
                        lit = true;
                        break;
                    case Marking::broken:
                    case Marking::broken_50:
                        lit = cycle > 0.0 &&
                              std::fmod(c.arclength, cycle) < params.dash_length;
                        break;
                    case Marking::none:
                        break;
                }
                cls[idx] = lit ? CellClass::marking : CellClass::asphalt;
            } else {
                cls[idx] = CellClass::asphalt;
            }
        });
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    RemissionGridMap map(meta);
    for (std::size_t i = 0; i < cls.size(); ++i) {
        double mean;
        switch (cls[i]) {
            case CellClass::marking: mean = params.marking_mean; break;
            case CellClass::asphalt: mean = params.asphalt_mean; break;
            default: mean = params.asphalt_mean * 0.8; break;
        }
        double v = mean + params.noise_sd * (params.noise_sd > 0.0 ? gauss(rng) : 0.0);
        map.cells()[i] = static_cast<float>(std::clamp(v, 0.0, 1.0));
    }
    if (params.unknown_fraction > 0.0)
        for (float& v : map.cells())
            if (coin(rng) < params.unknown_fraction) v = unknown_remission();
    return map;
}

}  // namespace roadgrid
