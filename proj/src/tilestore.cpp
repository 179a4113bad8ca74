#include "roadgrid/tilestore.hpp"

#include <cmath>
#include <optional>
#include <regex>

#include "roadgrid/map_io.hpp"

namespace roadgrid {

namespace {

const char* kind_name(MapKind k) {
    return k == MapKind::remission ? "remission" : "road";
}

void check_tileable(const MapMeta& meta) {
    if (std::abs(meta.resolution * kTileCells - kTileMeters) > 1e-9)
        throw MisalignedOrigin("map resolution incompatible with 70 m tiles");
    if (meta.size % kTileCells != 0)
        throw MisalignedOrigin("map size must be a multiple of 350 cells");
    double tx = meta.origin_x / kTileMeters;
    double ty = meta.origin_y / kTileMeters;
    if (std::abs(tx - std::round(tx)) > 1e-9 || std::abs(ty - std::round(ty)) > 1e-9)
        throw MisalignedOrigin("map origin must lie on the 70 m tile grid");
}

MapMeta tile_meta(const TileKey& key, double resolution) {
    return {key.tile_x * kTileMeters, key.tile_y * kTileMeters, resolution, kTileCells};
}

void write_resolution_sidecar(const std::filesystem::path& dir, double resolution) {
    MapMeta m{0.0, 0.0, resolution, kTileCells};
    write_meta_file(dir / "meta.txt", m);
}

double read_resolution_sidecar(const std::filesystem::path& dir) {
    auto f = dir / "meta.txt";
    if (!std::filesystem::exists(f)) return kDefaultResolution;
    return read_meta_file(f).resolution;
}

template <typename MapT, typename CellT>
MapT extract_block(const MapT& map, int row0, int col0, const MapMeta& block_meta) {
    MapT block(block_meta);
    for (int r = 0; r < kTileCells; ++r) {
        const CellT* src =
            map.cells().data() + static_cast<std::size_t>(row0 + r) * map.size() + col0;
        CellT* dst = block.cells().data() + static_cast<std::size_t>(r) * kTileCells;
        std::copy(src, src + kTileCells, dst);
    }
    return block;
}

template <typename MapT, typename CellT>
void place_block(MapT& window, const MapT& tile, int row0, int col0) {
    for (int r = 0; r < kTileCells; ++r) {
        const CellT* src = tile.cells().data() + static_cast<std::size_t>(r) * kTileCells;
        CellT* dst =
            window.cells().data() + static_cast<std::size_t>(row0 + r) * window.size() + col0;
        std::copy(src, src + kTileCells, dst);
    }
}

template <typename MapT, typename CellT, typename WriteFn>
std::vector<TileKey> save_tiles(const MapT& map, const std::filesystem::path& dir,
                                MapKind kind, WriteFn write_fn) {
    check_tileable(map.meta());
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw StorageFailure("cannot create tile directory " + dir.string());

    const MapMeta& meta = map.meta();
    int base_x = static_cast<int>(std::lround(meta.origin_x / kTileMeters));
    int base_y = static_cast<int>(std::lround(meta.origin_y / kTileMeters));
    int blocks = meta.size / kTileCells;

    std::vector<TileKey> keys;
    for (int by = 0; by < blocks; ++by)
        for (int bx = 0; bx < blocks; ++bx) {
            TileKey key{kind, base_x + bx, base_y + by};
            MapT tile = extract_block<MapT, CellT>(map, by * kTileCells, bx * kTileCells,
                                                   tile_meta(key, meta.resolution));
            write_fn(dir / tile_filename(key), tile);
            keys.push_back(key);
        }
    write_resolution_sidecar(dir, meta.resolution);
    return keys;
}

struct TileIndex {
    int central_x, central_y;
};

TileIndex central_tile(const Pose& pose) {
    return {static_cast<int>(std::floor(pose.x / kTileMeters)),
            static_cast<int>(std::floor(pose.y / kTileMeters))};
}

template <typename MapT, typename CellT, typename ReadFn>
MapT load_window_impl(const Pose& pose, const std::filesystem::path& dir, MapKind kind,
                      ReadFn read_fn) {
    double resolution = read_resolution_sidecar(dir);
    TileIndex c = central_tile(pose);
    if (!std::filesystem::exists(dir / tile_filename({kind, c.central_x, c.central_y})))
        throw CentralTileMissing("no tile for pose at (" + std::to_string(pose.x) + ", " +
                                 std::to_string(pose.y) + ") in " + dir.string());

    MapMeta window_meta{(c.central_x - 1) * kTileMeters, (c.central_y - 1) * kTileMeters,
                        resolution, 3 * kTileCells};
    MapT window(window_meta);  // default fill: off-lane / UNKNOWN
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
            TileKey key{kind, c.central_x + dx, c.central_y + dy};
            auto file = dir / tile_filename(key);
            if (!std::filesystem::exists(file)) continue;
            MapT tile = read_fn(file, tile_meta(key, resolution));
            place_block<MapT, CellT>(window, tile, (dy + 1) * kTileCells,
                                     (dx + 1) * kTileCells);
        }
    return window;
}

std::vector<TileKey> list_tiles(const std::filesystem::path& dir, MapKind kind) {
    std::regex pat(std::string(kind_name(kind)) + "_(-?\\d+)_(-?\\d+)\\.png");
    std::vector<TileKey> keys;
    if (!std::filesystem::is_directory(dir)) return keys;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::smatch m;
        std::string name = entry.path().filename().string();
        if (std::regex_match(name, m, pat))
            keys.push_back({kind, std::stoi(m[1]), std::stoi(m[2])});
    }
    return keys;
}

template <typename MapT, typename CellT, typename ReadFn>
MapT load_full_impl(const std::filesystem::path& dir, MapKind kind, ReadFn read_fn) {
    std::vector<TileKey> keys = list_tiles(dir, kind);
    if (keys.empty())
        throw CentralTileMissing("no " + std::string(kind_name(kind)) + " tiles in " +
                                 dir.string());
    double resolution = read_resolution_sidecar(dir);
    int min_x = keys[0].tile_x, max_x = keys[0].tile_x;
    int min_y = keys[0].tile_y, max_y = keys[0].tile_y;
    for (const TileKey& k : keys) {
        min_x = std::min(min_x, k.tile_x);
        max_x = std::max(max_x, k.tile_x);
        min_y = std::min(min_y, k.tile_y);
        max_y = std::max(max_y, k.tile_y);
    }
    int blocks = std::max(max_x - min_x, max_y - min_y) + 1;
    MapMeta meta{min_x * kTileMeters, min_y * kTileMeters, resolution, blocks * kTileCells};
    MapT full(meta);
    for (const TileKey& k : keys) {
        MapT tile = read_fn(dir / tile_filename(k), tile_meta(k, resolution));
        place_block<MapT, CellT>(full, tile, (k.tile_y - min_y) * kTileCells,
                                 (k.tile_x - min_x) * kTileCells);
    }
    return full;
}

}  // namespace

std::string tile_filename(const TileKey& key) {
    return std::string(kind_name(key.kind)) + "_" + std::to_string(key.tile_x) + "_" +
           std::to_string(key.tile_y) + ".png";
}

std::vector<TileKey> save_map_as_tiles(const RoadGridMap& map,
                                       const std::filesystem::path& dir) {
    return save_tiles<RoadGridMap, std::uint8_t>(
        map, dir, MapKind::road,
        [](const std::filesystem::path& f, const RoadGridMap& t) { write_road_png(f, t); });
}

std::vector<TileKey> save_map_as_tiles(const RemissionGridMap& map,
                                       const std::filesystem::path& dir) {
    return save_tiles<RemissionGridMap, float>(
        map, dir, MapKind::remission,
        [](const std::filesystem::path& f, const RemissionGridMap& t) {
            write_remission_png(f, t);
        });
}

RoadGridMap load_road_window(const Pose& pose, const std::filesystem::path& dir) {
    return load_window_impl<RoadGridMap, std::uint8_t>(pose, dir, MapKind::road,
                                                       read_road_png);
}

RemissionGridMap load_remission_window(const Pose& pose, const std::filesystem::path& dir) {
    return load_window_impl<RemissionGridMap, float>(pose, dir, MapKind::remission,
                                                     read_remission_png);
}

RoadGridMap load_full_road_map(const std::filesystem::path& dir) {
    return load_full_impl<RoadGridMap, std::uint8_t>(dir, MapKind::road, read_road_png);
}

RemissionGridMap load_full_remission_map(const std::filesystem::path& dir) {
    return load_full_impl<RemissionGridMap, float>(dir, MapKind::remission,
                                                   read_remission_png);
}

}  // namespace roadgrid
