#include <doctest.h>

#include <fstream>
#include <random>

#include "roadgrid/map_io.hpp"
#include "roadgrid/tilestore.hpp"
#include "test_support.hpp"

using namespace roadgrid;

namespace {

RoadGridMap random_road_map(const MapMeta& meta, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> code(0, 16);
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(meta.size) * meta.size);
    for (auto& c : cells) c = static_cast<std::uint8_t>(code(rng));
    return {meta, std::move(cells)};
}

}  // namespace

TEST_CASE("a 1050-cell map splits into nine tiles") {
    test::TempDir tmp("tiles9");
    RoadGridMap map = random_road_map({0.0, 0.0, 0.2, 1050}, 1);
    std::vector<TileKey> keys = save_map_as_tiles(map, tmp.path());
    REQUIRE(keys.size() == 9);
    for (const TileKey& k : keys) {
        CHECK(k.tile_x >= 0);
        CHECK(k.tile_x <= 2);
        CHECK(k.tile_y >= 0);
        CHECK(k.tile_y <= 2);
        CHECK(std::filesystem::exists(tmp.path() / tile_filename(k)));
    }
}

TEST_CASE("a 350-cell map is a single tile") {
    test::TempDir tmp("tiles1");
    RoadGridMap map = random_road_map({-70.0, 140.0, 0.2, 350}, 2);
    std::vector<TileKey> keys = save_map_as_tiles(map, tmp.path());
    REQUIRE(keys.size() == 1);
    CHECK(keys[0].tile_x == -1);
    CHECK(keys[0].tile_y == 2);
}

TEST_CASE("misaligned maps are rejected") {
    test::TempDir tmp("tilesbad");
    CHECK_THROWS_AS(save_map_as_tiles(random_road_map({35.0, 0.0, 0.2, 350}, 3), tmp.path()),
                    MisalignedOrigin);
    CHECK_THROWS_AS(save_map_as_tiles(random_road_map({0.0, 0.0, 0.2, 300}, 4), tmp.path()),
                    MisalignedOrigin);
}

TEST_CASE("save then load_window round trips a full 1050 map bit-exactly") {
    test::TempDir tmp("tilesrt");
    RoadGridMap map = random_road_map({0.0, 0.0, 0.2, 1050}, 5);
    save_map_as_tiles(map, tmp.path());
    RoadGridMap back = load_road_window({105.0, 105.0, 0.0}, tmp.path());
    CHECK(back.meta() == map.meta());
    CHECK(back.cells() == map.cells());
}

TEST_CASE("remission tiles round trip through the pixel quantization") {
    test::TempDir tmp("tilesrem");
    MapMeta meta{0.0, 0.0, 0.2, 350};
    RemissionGridMap map(meta);
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int r = 0; r < meta.size; ++r)
        for (int c = 0; c < meta.size; ++c)
            map.set(r, c, u(rng) < 0.05 ? unknown_remission()
                                        : pixel_to_remission(static_cast<std::uint8_t>(
                                              1 + 254.0 * u(rng))));
    save_map_as_tiles(map, tmp.path());
    RemissionGridMap back = load_remission_window({35.0, 35.0, 0.0}, tmp.path());
    // the saved map occupies the central tile of the 3x3 window
    for (int r = 0; r < meta.size; ++r)
        for (int c = 0; c < meta.size; ++c) {
            float a = map.at(r, c);
            float b = back.at(r + 350, c + 350);
            CHECK(((is_unknown(a) && is_unknown(b)) || a == b));
        }
    // missing neighbors are UNKNOWN
    CHECK(is_unknown(back.at(0, 0)));
    CHECK(is_unknown(back.at(1049, 1049)));
}

TEST_CASE("window keeps the pose in the central tile; origin shifts only at 70 m lines") {
    test::TempDir tmp("tileswin");
    RoadGridMap map = random_road_map({0.0, 0.0, 0.2, 1050}, 7);
    save_map_as_tiles(map, tmp.path());

    double prev_origin_x = std::numeric_limits<double>::quiet_NaN();
    for (double x = 75.0; x < 145.0; x += 0.5) {
        Pose pose{x, 105.0, 0.0};
        RoadGridMap win = load_road_window(pose, tmp.path());
        // central 70 m x 70 m of the window contains the pose
        CHECK(pose.x >= win.meta().origin_x + 70.0);
        CHECK(pose.x < win.meta().origin_x + 140.0);
        CHECK(pose.y >= win.meta().origin_y + 70.0);
        CHECK(pose.y < win.meta().origin_y + 140.0);
        // origin changes exactly when crossing x = 140
        double expected_origin = x < 140.0 ? 0.0 : 70.0;
        CHECK(win.meta().origin_x == doctest::Approx(expected_origin));
        (void)prev_origin_x;
        prev_origin_x = win.meta().origin_x;
    }
}

TEST_CASE("missing central tile is an error; missing neighbors are filled") {
    test::TempDir tmp("tilesmiss");
    RoadGridMap map = random_road_map({0.0, 0.0, 0.2, 350}, 8);
    save_map_as_tiles(map, tmp.path());

    CHECK_THROWS_AS(load_road_window({200.0, 35.0, 0.0}, tmp.path()), CentralTileMissing);

    RoadGridMap win = load_road_window({35.0, 35.0, 0.0}, tmp.path());
    CHECK(win.size() == 1050);
    // central block real
    bool any_nonzero = false;
    for (int r = 0; r < 350; ++r)
        for (int c = 0; c < 350; ++c)
            if (win.at(r + 350, c + 350) != map.at(r, c)) any_nonzero = true;
    CHECK_FALSE(any_nonzero);
    // neighbors filled with off-lane
    for (int r = 0; r < 350; ++r)
        for (int c = 0; c < 350; ++c) CHECK(win.at(r, c) == kCodeOffLane);
}

TEST_CASE("tile png files round trip bit-exactly") {
    test::TempDir tmp("tilesbytes");
    RoadGridMap map = random_road_map({0.0, 0.0, 0.2, 350}, 9);
    save_map_as_tiles(map, tmp.path());
    auto file = tmp.path() / tile_filename({MapKind::road, 0, 0});
    RoadGridMap tile = read_road_png(file, {0.0, 0.0, 0.2, 350});
    auto file2 = tmp.path() / "rewrite.png";
    write_road_png(file2, tile);

    std::ifstream a(file, std::ios::binary), b(file2, std::ios::binary);
    std::vector<char> ba((std::istreambuf_iterator<char>(a)), {});
    std::vector<char> bb((std::istreambuf_iterator<char>(b)), {});
    CHECK(ba == bb);
}
