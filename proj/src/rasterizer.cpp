#include "roadgrid/rasterizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace roadgrid {

namespace {

struct NearestData {
    double distance = std::numeric_limits<double>::infinity();
    float arclength = 0.0f;
    std::int8_t side = 0;  // -1 right, 0 on, +1 left
};

// The flattened centerline is walked in chunks of roughly this length so the
// per-chunk bounding boxes stay small.
constexpr double kChunkLength = 1.0;

}  // namespace

void scan_lane_band(const Centerline& center, const MapMeta& meta, double half_width,
                    const std::function<void(const BandCell&)>& visit) {
    if (half_width <= 0.0) return;
    const std::vector<Vec2>& pts = center.polyline();
    const std::vector<double>& cum = center.cum_arclength();
    if (pts.size() < 2) return;

    std::vector<NearestData> best(static_cast<std::size_t>(meta.size) * meta.size);
    std::vector<std::size_t> touched;

    const double inflate = half_width + meta.resolution;
    std::size_t seg = 0;
    while (seg + 1 < pts.size()) {
        // Collect one chunk of segments.
        std::size_t first = seg;
        double chunk_len = 0.0;
        double min_x = pts[seg].x, max_x = pts[seg].x;
        double min_y = pts[seg].y, max_y = pts[seg].y;
        while (seg + 1 < pts.size() && chunk_len < kChunkLength) {
            chunk_len += (pts[seg + 1] - pts[seg]).norm();
            min_x = std::min(min_x, pts[seg + 1].x);
            max_x = std::max(max_x, pts[seg + 1].x);
            min_y = std::min(min_y, pts[seg + 1].y);
            max_y = std::max(max_y, pts[seg + 1].y);
            ++seg;
        }

        int col0 = std::max(0, static_cast<int>(std::floor((min_x - inflate - meta.origin_x) / meta.resolution)));
        int col1 = std::min(meta.size - 1, static_cast<int>(std::floor((max_x + inflate - meta.origin_x) / meta.resolution)));
        int row0 = std::max(0, static_cast<int>(std::floor((min_y - inflate - meta.origin_y) / meta.resolution)));
        int row1 = std::min(meta.size - 1, static_cast<int>(std::floor((max_y + inflate - meta.origin_y) / meta.resolution)));

        for (int row = row0; row <= row1; ++row) {
            double cy = meta.origin_y + (row + 0.5) * meta.resolution;
            for (int col = col0; col <= col1; ++col) {
                double cx = meta.origin_x + (col + 0.5) * meta.resolution;
                Vec2 p{cx, cy};
                std::size_t idx = static_cast<std::size_t>(row) * meta.size + col;
                NearestData& nd = best[idx];
                for (std::size_t i = first; i < seg; ++i) {
                    Vec2 ab = pts[i + 1] - pts[i];
                    double len2 = ab.squared_norm();
                    double t = len2 > 0.0
                                   ? std::clamp((p - pts[i]).dot(ab) / len2, 0.0, 1.0)
                                   : 0.0;
                    Vec2 foot = pts[i] + t * ab;
                    double d = (p - foot).norm();
                    if (d < nd.distance) {
                        if (std::isinf(nd.distance)) touched.push_back(idx);
                        nd.distance = d;
                        nd.arclength = static_cast<float>(cum[i] + t * std::sqrt(len2));
                        double cr = ab.normalized().cross(p - foot);
                        nd.side = std::abs(cr) < 1e-9 ? 0 : (cr > 0.0 ? 1 : -1);
                    }
                }
            }
        }
    }

    for (std::size_t idx : touched) {
        const NearestData& nd = best[idx];
        if (nd.distance > half_width) continue;
        BandCell cell;
        cell.row = static_cast<int>(idx / meta.size);
        cell.col = static_cast<int>(idx % meta.size);
        cell.distance = nd.distance;
        cell.side = nd.side == 0 ? Side::on : (nd.side > 0 ? Side::left : Side::right);
        cell.arclength = nd.arclength;
        visit(cell);
    }
}

RoadGridMap rasterize(std::vector<LaneAnnotation> annotations, const MapMeta& meta) {
    RoadGridMap map(meta, kCodeOffLane);
    std::sort(annotations.begin(), annotations.end(),
              [](const LaneAnnotation& a, const LaneAnnotation& b) {
                  return a.draw_order < b.draw_order;
              });
    for (const LaneAnnotation& ann : annotations) {
        const double half = ann.lane_width / 2.0;
        // fine flattening: keeps quantization-bin flips well under cell size
        Centerline center(ann, 0.001);
        scan_lane_band(center, meta, half, [&](const BandCell& c) {
            std::uint8_t code;
            if (c.distance > half - meta.resolution) {
                Marking m = c.side == Side::right ? ann.right_marking : ann.left_marking;
                code = m != Marking::none
                           ? marking_code(m)
                           : encode_distance_code(std::min(c.distance, half), ann.lane_width);
            } else {
                code = encode_distance_code(c.distance, ann.lane_width);
            }
            map.set(c.row, c.col, code);
        });
    }
    return map;
}

CropPair cut_crop(const RemissionGridMap& remission, const RoadGridMap& road,
                  const Pose& center) {
    if (!(remission.meta() == road.meta()))
        throw ShapeMismatch("remission and road maps must share meta");
    const MapMeta& meta = road.meta();

    CellIndex cc;
    try {
        cc = world_to_cell(center.position(), meta);
    } catch (const OutOfBounds&) {
        throw CropOutsideMap("crop center outside map");
    }
    int row0 = cc.row - kCropSize / 2;
    int col0 = cc.col - kCropSize / 2;
    if (row0 < 0 || col0 < 0 || row0 + kCropSize > meta.size || col0 + kCropSize > meta.size)
        throw CropOutsideMap("crop window exceeds map extent");

    MapMeta crop_meta{meta.origin_x + col0 * meta.resolution,
                      meta.origin_y + row0 * meta.resolution, meta.resolution, kCropSize};
    RemissionGridMap rem_crop(crop_meta);
    RoadGridMap road_crop(crop_meta);
    for (int r = 0; r < kCropSize; ++r)
        for (int c = 0; c < kCropSize; ++c) {
            rem_crop.cells()[static_cast<std::size_t>(r) * kCropSize + c] =
                remission.at(row0 + r, col0 + c);
            road_crop.cells()[static_cast<std::size_t>(r) * kCropSize + c] =
                road.at(row0 + r, col0 + c);
        }
    Vec2 center_world = cell_to_world(cc, meta);
    return {std::move(rem_crop), std::move(road_crop),
            {center_world.x, center_world.y, center.yaw}};
}

std::vector<CropPair> cut_crop_pairs(const RemissionGridMap& remission,
                                     const RoadGridMap& road,
                                     const std::vector<Pose>& route, double spacing) {
    if (spacing <= 0.0) throw Error("crop spacing must be positive");
    if (route.empty()) return {};

    // Resample the route polyline by arclength.
    std::vector<Vec2> pts;
    pts.reserve(route.size());
    for (const Pose& p : route) pts.push_back(p.position());
    std::vector<double> cum(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i)
        cum[i] = cum[i - 1] + (pts[i] - pts[i - 1]).norm();
    double total = cum.back();

    std::vector<CropPair> out;
    int n_samples = static_cast<int>(std::floor(total / spacing + 1e-9)) + 1;
    for (int k = 0; k < n_samples; ++k) {
        double s = std::min(k * spacing, total);
        auto it = std::upper_bound(cum.begin(), cum.end(), s);
        std::size_t i = it == cum.begin() ? 0 : (it - cum.begin()) - 1;
        if (i + 1 >= pts.size()) i = pts.size() > 1 ? pts.size() - 2 : 0;
        Pose sample;
        if (pts.size() == 1) {
            sample = route.front();
        } else {
            Vec2 seg = pts[i + 1] - pts[i];
            double len = seg.norm();
            double t = len > 0.0 ? (s - cum[i]) / len : 0.0;
            Vec2 pos = pts[i] + t * seg;
            sample = {pos.x, pos.y, std::atan2(seg.y, seg.x)};
        }
        out.push_back(cut_crop(remission, road, sample));
    }
    return out;
}

}  // namespace roadgrid
