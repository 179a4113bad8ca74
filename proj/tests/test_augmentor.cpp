#include <doctest.h>

#include <array>

#include "roadgrid/augmentor.hpp"
#include "roadgrid/map_io.hpp"
#include "roadgrid/synth.hpp"
#include "test_support.hpp"

using namespace roadgrid;

namespace {

struct Scene {
    RemissionGridMap remission;
    RoadGridMap road;
};

Scene make_scene() {
    LaneAnnotation ann = test::straight_lane(-10.0, 130.0, 60.0);
    MapMeta meta{0.0, 0.0, 0.2, 600};
    return {generate_remission({ann}, meta, {}, 17), rasterize({ann}, meta)};
}

bool crops_equal(const CropPair& a, const CropPair& b) {
    if (a.road.cells() != b.road.cells()) return false;
    for (std::size_t i = 0; i < a.remission.cells().size(); ++i) {
        float x = a.remission.cells()[i], y = b.remission.cells()[i];
        if (is_unknown(x) != is_unknown(y)) return false;
        if (!is_unknown(x) && x != y) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("augmentation always yields 168 pairs; identity variant matches the cut") {
    Scene s = make_scene();
    Pose center{60.0, 60.0, 0.0};
    std::vector<CropPair> out = augment_pair(s.remission, s.road, center);
    CHECK(out.size() == 168);

    CropPair plain = cut_crop(s.remission, s.road, center);
    // rotation 0, offset 0 is element 3 of the first rotation block
    CHECK(crops_equal(out[3], plain));
}

TEST_CASE("two 180-degree samplings restore the original crop") {
    Scene s = make_scene();
    AugmentParams once;
    once.rotations_deg = {180.0};
    once.offsets_m = {0.0};
    Pose center{60.0, 60.0, 0.0};

    std::vector<CropPair> first = augment_pair(s.remission, s.road, center, once);
    REQUIRE(first.size() == 1);
    // resample the rotated crop as a stand-alone full map
    std::vector<CropPair> second =
        augment_pair(first[0].remission, first[0].road, first[0].center_pose, once);
    REQUIRE(second.size() == 1);
    CropPair plain = cut_crop(s.remission, s.road, center);
    // interior agrees cell for cell (the crop's own border cannot rotate
    // outside itself, so with 180 degrees it is exact everywhere)
    CHECK(crops_equal(second[0], plain));
}

TEST_CASE("augmented road codes stay in the alphabet; remission values come from the source") {
    Scene s = make_scene();
    std::vector<CropPair> out = augment_pair(s.remission, s.road, {60.0, 60.0, 0.3});
    for (const CropPair& p : out)
        for (std::uint8_t c : p.road.cells()) CHECK(c <= kCodeMax);

    // spot-check a variant: every remission value appears in the source window
    const CropPair& v = out[100];
    std::array<bool, 256> present{};
    for (int r = 0; r < s.remission.size(); ++r)
        for (int c = 0; c < s.remission.size(); ++c)
            present[remission_to_pixel(s.remission.at(r, c))] = true;
    for (float x : v.remission.cells()) CHECK(present[remission_to_pixel(x)]);
}

TEST_CASE("insufficient clearance is rejected") {
    Scene s = make_scene();
    CHECK_THROWS_AS(augment_pair(s.remission, s.road, {10.0, 60.0, 0.0}),
                    InsufficientClearance);
    CHECK_THROWS_AS(augment_pair(s.remission, s.road, {60.0, 119.0, 0.0}),
                    InsufficientClearance);
    CHECK_THROWS_AS(augment_pair(s.remission, s.road, {-5.0, 60.0, 0.0}),
                    InsufficientClearance);
}

TEST_CASE("rotating a radially symmetric pattern by k and k+12 matches cellwise") {
    // concentric rings around the crop center (a lattice corner, so the
    // pattern is symmetric under 180-degree rotation about it)
    MapMeta meta{0.0, 0.0, 0.2, 600};
    Vec2 center{60.0, 60.0};
    RoadGridMap road(meta);
    RemissionGridMap rem(meta);
    for (int r = 0; r < meta.size; ++r)
        for (int c = 0; c < meta.size; ++c) {
            Vec2 p = cell_to_world({r, c}, meta);
            double d = (p - center).norm();
            road.set(r, c, static_cast<std::uint8_t>(static_cast<int>(d) % 17));
            rem.set(r, c, static_cast<float>(std::fmod(d, 1.0)));
        }

    AugmentParams params;
    params.offsets_m = {0.0};
    std::vector<CropPair> out = augment_pair(rem, road, {60.0, 60.0, 0.0}, params);
    REQUIRE(out.size() == 24);
    for (int k = 0; k < 12; ++k) CHECK(out[k].road.cells() == out[k + 12].road.cells());
}

TEST_CASE("class histogram is stable under rotation at zero offset") {
    // lane-dominant scene: parallel lanes tile the whole map, so rotating a
    // crop barely changes the code distribution
    MapMeta meta{0.0, 0.0, 0.2, 600};
    std::vector<LaneAnnotation> lanes;
    for (double y = 1.6; y < 120.0; y += 3.2)
        lanes.push_back(test::straight_lane(-10.0, 130.0, y, Marking::none, Marking::none));
    RoadGridMap road = rasterize(lanes, meta);
    RemissionGridMap rem = generate_remission(lanes, meta, {}, 23);

    AugmentParams params;
    params.offsets_m = {0.0};
    std::vector<CropPair> out = augment_pair(rem, road, {60.0, 60.0, 0.0}, params);
    CropPair plain = cut_crop(rem, road, {60.0, 60.0, 0.0});

    std::array<int, kNumCodes> base{};
    for (std::uint8_t c : plain.road.cells()) ++base[c];
    for (const CropPair& v : out) {
        std::array<int, kNumCodes> h{};
        for (std::uint8_t c : v.road.cells()) ++h[c];
        int moved = 0;
        for (int i = 0; i < kNumCodes; ++i) moved += std::abs(h[i] - base[i]);
        moved /= 2;  // each resampled cell counts once
        CHECK(moved < 0.05 * kCropSize * kCropSize);
    }
}
