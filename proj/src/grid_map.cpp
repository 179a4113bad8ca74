#include "roadgrid/grid_map.hpp"

#include <cmath>

namespace roadgrid {

namespace {

void check_meta(const MapMeta& meta) {
    if (!meta.valid())
        throw Error("invalid map meta: resolution and size must be positive");
}

}  // namespace

CellIndex world_to_cell(const Vec2& p, const MapMeta& meta) {
    check_meta(meta);
    int col = static_cast<int>(std::floor((p.x - meta.origin_x) / meta.resolution));
    int row = static_cast<int>(std::floor((p.y - meta.origin_y) / meta.resolution));
    if (col < 0 || col >= meta.size || row < 0 || row >= meta.size)
        throw OutOfBounds("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                          ") outside map extent");
    return {row, col};
}

Vec2 cell_to_world(const CellIndex& c, const MapMeta& meta) {
    check_meta(meta);
    if (c.row < 0 || c.row >= meta.size || c.col < 0 || c.col >= meta.size)
        throw OutOfBounds("cell (" + std::to_string(c.row) + ", " + std::to_string(c.col) +
                          ") outside map");
    return {meta.origin_x + (c.col + 0.5) * meta.resolution,
            meta.origin_y + (c.row + 0.5) * meta.resolution};
}

std::uint8_t encode_distance_code(double d, double lane_width) {
    if (lane_width <= 0.0) throw InvalidDistance("lane_width must be positive");
    if (d < 0.0 || d > lane_width / 2.0 + 1e-9)
        throw InvalidDistance("distance " + std::to_string(d) +
                              " outside [0, lane_width/2]");
    // round half up
    int bin = static_cast<int>(std::floor(22.0 * d / lane_width + 0.5));
    if (bin > 11) bin = 11;
    return static_cast<std::uint8_t>(kDistCodeFirst + bin);
}

double decode_distance(std::uint8_t code, double lane_width) {
    if (code < kDistCodeFirst || code > kDistCodeLast)
        throw InvalidCode("code " + std::to_string(code) + " is not a distance code");
    return (code - kDistCodeFirst) / 22.0 * lane_width;
}

RoadGridMap::RoadGridMap(const MapMeta& meta, std::uint8_t fill) : meta_(meta) {
    check_meta(meta);
    if (fill > kCodeMax) throw InvalidCode("fill code out of range");
    cells_.assign(static_cast<std::size_t>(meta.size) * meta.size, fill);
}

RoadGridMap::RoadGridMap(const MapMeta& meta, std::vector<std::uint8_t> cells)
    : meta_(meta), cells_(std::move(cells)) {
    check_meta(meta);
    if (cells_.size() != static_cast<std::size_t>(meta.size) * meta.size)
        throw ShapeMismatch("cell buffer size does not match meta");
    for (std::uint8_t c : cells_)
        if (c > kCodeMax) throw InvalidCode("cell code out of range 0..16");
}

void RoadGridMap::set(int row, int col, std::uint8_t code) {
    if (!in_bounds(row, col)) throw OutOfBounds("cell index outside map");
    if (code > kCodeMax) throw InvalidCode("cell code out of range 0..16");
    cells_[index(row, col)] = code;
}

RemissionGridMap::RemissionGridMap(const MapMeta& meta) : meta_(meta) {
    check_meta(meta);
    cells_.assign(static_cast<std::size_t>(meta.size) * meta.size, unknown_remission());
}

RemissionGridMap::RemissionGridMap(const MapMeta& meta, std::vector<float> cells)
    : meta_(meta), cells_(std::move(cells)) {
    check_meta(meta);
    if (cells_.size() != static_cast<std::size_t>(meta.size) * meta.size)
        throw ShapeMismatch("cell buffer size does not match meta");
    for (float v : cells_)
        if (!is_unknown(v) && (v < 0.0f || v > 1.0f))
            throw Error("remission value outside [0, 1]");
}

void RemissionGridMap::set(int row, int col, float v) {
    if (!in_bounds(row, col)) throw OutOfBounds("cell index outside map");
    if (!is_unknown(v) && (v < 0.0f || v > 1.0f))
        throw Error("remission value outside [0, 1]");
    cells_[index(row, col)] = v;
}

}  // namespace roadgrid
