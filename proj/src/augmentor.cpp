#include "roadgrid/augmentor.hpp"

#include <cmath>

namespace roadgrid {

AugmentParams::AugmentParams() {
    for (int k = 0; k < 24; ++k) rotations_deg.push_back(k * 15.0);
    for (int i = -3; i <= 3; ++i) offsets_m.push_back(i * 0.5);
}

std::vector<CropPair> augment_pair(const RemissionGridMap& remission,
                                   const RoadGridMap& road, const Pose& center,
                                   const AugmentParams& params) {
    if (!(remission.meta() == road.meta()))
        throw ShapeMismatch("remission and road maps must share meta");
    const MapMeta& meta = road.meta();

    CellIndex cc;
    try {
        cc = world_to_cell(center.position(), meta);
    } catch (const OutOfBounds&) {
        throw InsufficientClearance("crop center outside map");
    }
    const int half = kCropSize / 2;
    int row0 = cc.row - half;
    int col0 = cc.col - half;

    // Every rotated/translated source sample must stay inside the map. A
    // square rotated by theta needs half_extent*(|cos|+|sin|) per axis.
    double max_offset = 0.0;
    for (double t : params.offsets_m) max_offset = std::max(max_offset, std::abs(t));
    double support = 1.0;
    for (double deg : params.rotations_deg) {
        double a = deg * M_PI / 180.0;
        support = std::max(support, std::abs(std::cos(a)) + std::abs(std::sin(a)));
    }
    const double reach = half * meta.resolution * support + max_offset;
    Vec2 pivot{meta.origin_x + (col0 + half) * meta.resolution,
               meta.origin_y + (row0 + half) * meta.resolution};
    if (pivot.x - reach < meta.origin_x || pivot.x + reach > meta.origin_x + meta.extent() ||
        pivot.y - reach < meta.origin_y || pivot.y + reach > meta.origin_y + meta.extent())
        throw InsufficientClearance("rotated crop window would leave the map");

    MapMeta crop_meta{meta.origin_x + col0 * meta.resolution,
                      meta.origin_y + row0 * meta.resolution, meta.resolution, kCropSize};
    Pose center_pose{pivot.x, pivot.y, center.yaw};
    Vec2 across{-std::sin(center.yaw), std::cos(center.yaw)};

    std::vector<CropPair> out;
    out.reserve(params.rotations_deg.size() * params.offsets_m.size());
    for (double deg : params.rotations_deg) {
        double theta = deg * M_PI / 180.0;
        double c = std::cos(theta), s = std::sin(theta);
        for (double t : params.offsets_m) {
            Vec2 shift = t * across;
            RemissionGridMap rem_crop(crop_meta);
            RoadGridMap road_crop(crop_meta);
            for (int r = 0; r < kCropSize; ++r) {
                double oy = (r + 0.5 - half) * meta.resolution;
                for (int cix = 0; cix < kCropSize; ++cix) {
                    double ox = (cix + 0.5 - half) * meta.resolution;
                    // target offset from the pivot, rotated into the source map
                    double sx = pivot.x + c * ox - s * oy + shift.x;
                    double sy = pivot.y + s * ox + c * oy + shift.y;
                    int scol = static_cast<int>(std::floor((sx - meta.origin_x) / meta.resolution));
                    int srow = static_cast<int>(std::floor((sy - meta.origin_y) / meta.resolution));
                    std::size_t dst = static_cast<std::size_t>(r) * kCropSize + cix;
                    if (srow < 0 || srow >= meta.size || scol < 0 || scol >= meta.size) {
                        rem_crop.cells()[dst] = unknown_remission();
                        road_crop.cells()[dst] = kCodeOffLane;
                    } else {
                        rem_crop.cells()[dst] = remission.at(srow, scol);
                        road_crop.cells()[dst] = road.at(srow, scol);
                    }
                }
            }
            out.push_back({std::move(rem_crop), std::move(road_crop), center_pose});
        }
    }
    return out;
}

}  // namespace roadgrid
