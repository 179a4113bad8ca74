#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "roadgrid/types.hpp"

namespace roadgrid {

// Lane cell codes:
//   0       off lane
//   1       solid line
//   2       broken line
//   3       solid line, 50% confidence
//   4       broken line, 50% confidence
//   5..16   quantized unsigned distance to the lane center
//           (0, 1/22, 2/22, ..., 11/22 of the lane width)
inline constexpr std::uint8_t kCodeOffLane = 0;
inline constexpr std::uint8_t kCodeSolid = 1;
inline constexpr std::uint8_t kCodeBroken = 2;
inline constexpr std::uint8_t kCodeSolid50 = 3;
inline constexpr std::uint8_t kCodeBroken50 = 4;
inline constexpr std::uint8_t kDistCodeFirst = 5;
inline constexpr std::uint8_t kDistCodeLast = 16;
inline constexpr std::uint8_t kCodeMax = 16;
inline constexpr int kNumCodes = 17;

inline constexpr double kDefaultResolution = 0.2;   // m per cell
inline constexpr int kDefaultMapSize = 1050;        // cells
inline constexpr int kCropSize = 120;               // cells
inline constexpr double kDefaultLaneWidth = 3.2;    // m

struct MapMeta {
    double origin_x = 0.0;   // world x of the lower-left corner (m)
    double origin_y = 0.0;   // world y of the lower-left corner (m)
    double resolution = kDefaultResolution;
    int size = kDefaultMapSize;

    bool valid() const { return resolution > 0.0 && size > 0; }
    double extent() const { return size * resolution; }
    bool contains(const Vec2& p) const {
        return p.x >= origin_x && p.x < origin_x + extent() &&
               p.y >= origin_y && p.y < origin_y + extent();
    }
    bool operator==(const MapMeta&) const = default;
};

struct CellIndex {
    int row = 0;  // y axis
    int col = 0;  // x axis
    bool operator==(const CellIndex&) const = default;
};

// Row = y axis, column = x axis, origin at the lower-left corner,
// half-open cell intervals.
CellIndex world_to_cell(const Vec2& p, const MapMeta& meta);
Vec2 cell_to_world(const CellIndex& c, const MapMeta& meta);  // cell center

// code = 5 + min(11, round_half_up(22 * d / lane_width)), d unsigned.
std::uint8_t encode_distance_code(double d, double lane_width = kDefaultLaneWidth);
double decode_distance(std::uint8_t code, double lane_width = kDefaultLaneWidth);

class RoadGridMap {
public:
    explicit RoadGridMap(const MapMeta& meta, std::uint8_t fill = kCodeOffLane);
    RoadGridMap(const MapMeta& meta, std::vector<std::uint8_t> cells);

    const MapMeta& meta() const { return meta_; }
    int size() const { return meta_.size; }

    std::uint8_t at(int row, int col) const { return cells_[index(row, col)]; }
    std::uint8_t at(const CellIndex& c) const { return at(c.row, c.col); }
    void set(int row, int col, std::uint8_t code);

    const std::vector<std::uint8_t>& cells() const { return cells_; }
    std::vector<std::uint8_t>& cells() { return cells_; }

    bool in_bounds(int row, int col) const {
        return row >= 0 && row < meta_.size && col >= 0 && col < meta_.size;
    }

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * meta_.size + col;
    }

    MapMeta meta_;
    std::vector<std::uint8_t> cells_;
};

// Remission values are in [0, 1]; cells never touched by a LiDAR ray carry
// the UNKNOWN sentinel (NaN in memory; the -1 of the wire format only exists
// in the PNG encoding).
inline float unknown_remission() {
    return std::numeric_limits<float>::quiet_NaN();
}
inline bool is_unknown(float v) { return std::isnan(v); }

class RemissionGridMap {
public:
    explicit RemissionGridMap(const MapMeta& meta);  // all cells UNKNOWN
    RemissionGridMap(const MapMeta& meta, std::vector<float> cells);

    const MapMeta& meta() const { return meta_; }
    int size() const { return meta_.size; }

    float at(int row, int col) const { return cells_[index(row, col)]; }
    float at(const CellIndex& c) const { return at(c.row, c.col); }
    void set(int row, int col, float v);

    const std::vector<float>& cells() const { return cells_; }
    std::vector<float>& cells() { return cells_; }

    bool in_bounds(int row, int col) const {
        return row >= 0 && row < meta_.size && col >= 0 && col < meta_.size;
    }

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * meta_.size + col;
    }

    MapMeta meta_;
    std::vector<float> cells_;
};

}  // namespace roadgrid
