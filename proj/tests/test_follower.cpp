#include <doctest.h>

#include "roadgrid/follower.hpp"
#include "roadgrid/rasterizer.hpp"
#include "test_support.hpp"

using namespace roadgrid;

TEST_CASE("the car tracks a straight lane to the end") {
    LaneAnnotation ann = test::straight_lane(-10.0, 110.0, 60.0);
    MapMeta meta{0.0, 0.0, 0.2, 600};
    RoadGridMap road = rasterize({ann}, meta);

    FollowResult r = simulate_follow({15.0, 60.3, 0.1}, road, ann, {}, 60.0);
    CHECK(r.completed);
    CHECK_FALSE(r.left_lane);
    CHECK(r.rms_cte < 0.3);
    CHECK(r.max_cte < 0.5);
    CHECK(r.trace.size() > 100);

    // the initial offset decays: the last quarter of the run is tight
    double tail_max = 0.0;
    for (std::size_t i = r.trace.size() * 3 / 4; i < r.trace.size(); ++i)
        tail_max = std::max(tail_max, r.trace[i].cte);
    CHECK(tail_max < 0.25);

    // trace timestamps advance by dt
    for (std::size_t i = 1; i < r.trace.size(); ++i)
        CHECK(r.trace[i].t - r.trace[i - 1].t == doctest::Approx(0.05));
}

TEST_CASE("the car follows a circle lap") {
    LaneAnnotation ann = test::circle_lane(30.0, {60.0, 60.0});
    MapMeta meta{0.0, 0.0, 0.2, 600};
    RoadGridMap road = rasterize({ann}, meta);

    FollowResult r = simulate_follow({90.3, 60.0, M_PI / 2.0}, road, ann, {}, 60.0);
    CHECK(r.completed);
    CHECK_FALSE(r.left_lane);
    CHECK(r.rms_cte < 0.4);
    CHECK(r.max_cte < 0.6);

    // steering settles to roughly the circle curvature
    double expected = std::atan(2.6 / 30.0);
    std::size_t n = r.trace.size();
    double mean_steer = 0.0;
    for (std::size_t i = n / 2; i < n; ++i) mean_steer += r.trace[i].steer;
    mean_steer /= static_cast<double>(n - n / 2);
    CHECK(std::abs(std::abs(mean_steer) - expected) < 0.05);
}

TEST_CASE("an empty road map means the lane is lost immediately") {
    MapMeta meta{0.0, 0.0, 0.2, 600};
    RoadGridMap road(meta);
    LaneAnnotation truth = test::straight_lane(-10.0, 130.0, 60.0);
    FollowResult r = simulate_follow({60.0, 60.0, 0.0}, road, truth, {}, 10.0);
    CHECK(r.left_lane);
    CHECK_FALSE(r.completed);
    CHECK(r.trace.empty());
}

TEST_CASE("parameter validation") {
    LaneAnnotation ann = test::straight_lane(-10.0, 130.0, 60.0);
    MapMeta meta{0.0, 0.0, 0.2, 600};
    RoadGridMap road = rasterize({ann}, meta);

    CarParams bad;
    bad.speed = -1.0;
    CHECK_THROWS_AS(simulate_follow({15.0, 60.0, 0.0}, road, ann, bad), Error);

    bad = {};
    bad.lookahead = 0.2;  // below dt * speed = 0.25
    CHECK_THROWS_AS(simulate_follow({15.0, 60.0, 0.0}, road, ann, bad), Error);

    bad = {};
    bad.dt = 0.0;
    CHECK_THROWS_AS(simulate_follow({15.0, 60.0, 0.0}, road, ann, bad), Error);
}

TEST_CASE("the horizon caps the run") {
    LaneAnnotation ann = test::straight_lane(-10.0, 130.0, 60.0);
    MapMeta meta{0.0, 0.0, 0.2, 600};
    RoadGridMap road = rasterize({ann}, meta);

    FollowResult r = simulate_follow({15.0, 60.0, 0.0}, road, ann, {}, 2.0);
    CHECK_FALSE(r.completed);
    CHECK(r.trace.size() == 40);  // 2 s / 0.05 s
}
