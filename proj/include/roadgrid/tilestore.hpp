#pragma once

#include <filesystem>
#include <vector>

#include "roadgrid/grid_map.hpp"

namespace roadgrid {

inline constexpr int kTileCells = 350;
inline constexpr double kTileMeters = 70.0;

enum class MapKind { remission, road };

struct TileKey {
    MapKind kind = MapKind::road;
    int tile_x = 0;  // floor(world x / 70 m)
    int tile_y = 0;
    bool operator==(const TileKey&) const = default;
};

std::string tile_filename(const TileKey& key);

// Splits a full map into 70 m x 70 m tiles (350x350 cells each), written as
// PNG files named {kind}_{tile_x}_{tile_y}.png. The map origin must lie on
// the 70 m grid and its size must be a multiple of 350 cells.
std::vector<TileKey> save_map_as_tiles(const RoadGridMap& map,
                                       const std::filesystem::path& dir);
std::vector<TileKey> save_map_as_tiles(const RemissionGridMap& map,
                                       const std::filesystem::path& dir);

// Stitches the 3x3 tile window whose central tile contains the pose.
// Missing neighbor tiles are filled (off-lane / UNKNOWN); a missing central
// tile is an error.
RoadGridMap load_road_window(const Pose& pose, const std::filesystem::path& dir);
RemissionGridMap load_remission_window(const Pose& pose, const std::filesystem::path& dir);

// Stitches every stored tile of one kind into a single map covering the full
// bounding extent (missing interior tiles filled).
RoadGridMap load_full_road_map(const std::filesystem::path& dir);
RemissionGridMap load_full_remission_map(const std::filesystem::path& dir);

}  // namespace roadgrid
