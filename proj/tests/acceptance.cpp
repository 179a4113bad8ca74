// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "roadgrid/augmentor.hpp"
#include "roadgrid/follower.hpp"
#include "roadgrid/map_io.hpp"
#include "roadgrid/metrics.hpp"
#include "roadgrid/rasterizer.hpp"
#include "roadgrid/rddf.hpp"
#include "roadgrid/segmenter.hpp"
#include "roadgrid/synth.hpp"
#include "roadgrid/tilestore.hpp"
#include "test_support.hpp"

using namespace roadgrid;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const char* what, bool ok, const std::string& detail = "") {
    std::printf("criterion %d (%s): %s%s%s\n", criterion, what, ok ? "pass" : "FAIL",
                detail.empty() ? "" : " ", detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. Augmenting 658 crop pairs yields exactly 110,544, 168 each, under 60 s.
void criterion_1() {
    LaneAnnotation ann = test::straight_lane(-10.0, 130.0, 60.0);
    MapMeta meta{0.0, 0.0, 0.2, 600};
    RoadGridMap road = rasterize({ann}, meta);
    RemissionGridMap rem = generate_remission({ann}, meta, {}, 1);

    auto t0 = Clock::now();
    std::size_t total = 0;
    bool per_pair_ok = true;
    for (int i = 0; i < 658; ++i) {
        double x = 25.0 + 70.0 * i / 657.0;
        std::vector<CropPair> out = augment_pair(rem, road, {x, 60.0, 0.0});
        if (out.size() != 168) per_pair_ok = false;
        total += out.size();
    }
    double dt = seconds_since(t0);
    bool ok = per_pair_ok && total == 110544 && dt < 60.0;
    char detail[96];
    std::snprintf(detail, sizeof(detail), "total=%zu time=%.1fs", total, dt);
    report(1, "augmentation arithmetic", ok, detail);
}

// Distances at which a cell code can legitimately flip between neighbors.
bool near_code_boundary(double d, double lane_width, double res) {
    const double tol = 0.015;
    const double half = lane_width / 2.0;
    if (std::abs(d - half) <= tol) return true;
    if (std::abs(d - (half - res)) <= tol) return true;
    for (int k = 1; k <= 11; ++k)
        if (std::abs(d - (k - 0.5) * lane_width / 22.0) <= tol) return true;
    return false;
}

// 2. Fast rasterizer vs brute-force oracle on five scene shapes.
void criterion_2() {
    struct Scene {
        const char* name;
        std::vector<LaneAnnotation> lanes;
        MapMeta meta;
    };
    std::vector<Scene> scenes;
    scenes.push_back({"straight",
                      {test::straight_lane(-5.0, 65.0, 30.0)},
                      {0.0, 0.0, 0.2, 300}});
    scenes.push_back({"circle",
                      {test::circle_lane(20.0, {30.0, 30.0})},
                      {0.0, 0.0, 0.2, 300}});
    scenes.push_back({"s-curve",
                      {test::s_curve_lane(60.0)},
                      test::meta_covering(0.0, -4.0, 60.0, 4.0)});
    {
        LaneAnnotation a = test::straight_lane(-5.0, 65.0, 30.0);
        LaneAnnotation b;
        b.points = {{30.0, 30.0}, {40.0, 30.5}, {48.0, 32.0}, {55.0, 35.0}, {60.0, 39.0}};
        b.left_marking = Marking::broken;
        b.right_marking = Marking::solid;
        b.draw_order = 1;
        scenes.push_back({"fork", {a, b}, {0.0, 0.0, 0.2, 300}});
    }
    {
        LaneAnnotation a = test::straight_lane(-5.0, 65.0, 30.0);
        LaneAnnotation b;
        for (double y = -5.0; y <= 65.0; y += 8.75) b.points.push_back({30.0, y});
        b.left_marking = Marking::solid;
        b.right_marking = Marking::solid;
        b.draw_order = 1;
        scenes.push_back({"crossing", {a, b}, {0.0, 0.0, 0.2, 300}});
    }

    bool ok = true;
    std::string detail;
    for (const Scene& scene : scenes) {
        RoadGridMap fast = rasterize(scene.lanes, scene.meta);
        RoadGridMap slow = test::oracle_rasterize(scene.lanes, scene.meta);

        std::vector<std::vector<Vec2>> dense;
        for (const LaneAnnotation& l : scene.lanes)
            dense.push_back(flatten(autosmooth(l.points), 0.001));

        std::size_t mismatch = 0, off_boundary = 0;
        for (int row = 0; row < scene.meta.size; ++row)
            for (int col = 0; col < scene.meta.size; ++col) {
                if (fast.at(row, col) == slow.at(row, col)) continue;
                ++mismatch;
                Vec2 p = cell_to_world({row, col}, scene.meta);
                bool excused = false;
                for (std::size_t i = 0; i < scene.lanes.size(); ++i) {
                    double d = test::polyline_distance(dense[i], p);
                    if (d <= scene.lanes[i].lane_width / 2.0 + 0.02 &&
                        near_code_boundary(d, scene.lanes[i].lane_width,
                                           scene.meta.resolution))
                        excused = true;
                }
                if (!excused) ++off_boundary;
            }
        std::size_t cells = fast.cells().size();
        double agree = 1.0 - static_cast<double>(mismatch) / static_cast<double>(cells);
        if (agree < 0.999 || off_boundary > 0) {
            ok = false;
            detail += std::string(scene.name) + " agree=" + std::to_string(agree) +
                      " stray=" + std::to_string(off_boundary) + " ";
        }
    }
    report(2, "rasterizer vs oracle", ok, detail);
}

// 3. Distance code round trips.
void criterion_3() {
    const double w = kDefaultLaneWidth;
    bool ok = true;
    for (std::uint8_t code = kDistCodeFirst; code <= kDistCodeLast; ++code)
        if (encode_distance_code(decode_distance(code, w), w) != code) ok = false;
    for (double d = 0.0; d <= 1.6 + 1e-12; d += 0.001) {
        double back = decode_distance(encode_distance_code(d, w), w);
        if (std::abs(back - d) > w / 44.0 + 1e-12) ok = false;
    }
    report(3, "distance code round trip", ok);
}

// 4. Smoother gradient, monotonicity and speed.
void criterion_4() {
    bool ok = true;
    std::string detail;

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    const double h = 1e-6;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        std::vector<Vec2> pts(20);
        for (Vec2& p : pts) p = {u(rng), u(rng)};
        auto [f0, grad] = smoothness_objective(pts);
        for (std::size_t j = 0; j < pts.size() && ok; ++j)
            for (int axis = 0; axis < 2; ++axis) {
                double& coord = axis == 0 ? pts[j].x : pts[j].y;
                double save = coord;
                coord = save + h;
                double fp = smoothness_objective(pts).first;
                coord = save - h;
                double fm = smoothness_objective(pts).first;
                coord = save;
                double fd = (fp - fm) / (2.0 * h);
                double g = axis == 0 ? grad[j].x : grad[j].y;
                if (std::abs(fd - g) > 1e-4 * std::max(1.0, std::abs(g))) ok = false;
            }
        double f1 = smoothness_objective(smooth_path(pts)).first;
        if (f1 > f0 + 1e-12) ok = false;
        if (!ok) detail = "gradient or monotonicity";
    }

    std::vector<Vec2> line;
    for (int i = 0; i < 50; ++i) line.push_back({0.5 * i, 2.0 - 0.25 * i});
    std::vector<Vec2> out = smooth_path(line);
    for (std::size_t i = 0; i < line.size(); ++i)
        if (std::abs(out[i].x - line[i].x) > 1e-9 || std::abs(out[i].y - line[i].y) > 1e-9) {
            ok = false;
            detail = "collinear input moved";
        }

    std::uniform_real_distribution<double> jitter(-0.1, 0.1);
    std::vector<Vec2> long_path;
    for (int i = 0; i < 200; ++i) long_path.push_back({0.5 * i, jitter(rng)});
    auto t0 = Clock::now();
    smooth_path(long_path);
    double ms = seconds_since(t0) * 1000.0;
    if (ms > 50.0) {
        ok = false;
        detail += " slow " + std::to_string(ms) + "ms";
    }
    char timing[48];
    std::snprintf(timing, sizeof(timing), "200pt=%.1fms", ms);
    report(4, "smoother", ok, ok ? timing : detail);
}

struct TrackStats {
    double rms = 0.0, max = 0.0;
    bool spacing_ok = true;
    std::size_t count = 0;
};

template <typename DevFn>
TrackStats rddf_stats(const RddfCrop& crop, DevFn dev) {
    TrackStats s;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < crop.waypoints.size(); ++i) {
        double d = dev(crop.waypoints[i].pose.position());
        sum_sq += d * d;
        s.max = std::max(s.max, d);
        if (i > 0) {
            double gap = (crop.waypoints[i].pose.position() -
                          crop.waypoints[i - 1].pose.position())
                             .norm();
            if (gap < 0.4 || gap > 0.6) s.spacing_ok = false;
        }
    }
    s.count = crop.waypoints.size();
    s.rms = std::sqrt(sum_sq / static_cast<double>(s.count));
    return s;
}

// 5. RDDF fidelity on straight, circle and s-curve tracks.
void criterion_5() {
    bool ok = true;
    std::string detail;
    auto check = [&](const char* name, const TrackStats& s) {
        if (s.count != 200 || s.rms > 0.2 || s.max > 0.35 || !s.spacing_ok) {
            ok = false;
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%s n=%zu rms=%.3f max=%.3f ", name, s.count,
                          s.rms, s.max);
            detail += buf;
        }
    };

    {
        LaneAnnotation ann = test::straight_lane(-10.0, 130.0, 60.0);
        RoadGridMap road = rasterize({ann}, {0.0, 0.0, 0.2, 600});
        RddfCrop crop = compute_rddf({40.0, 60.2, 0.0}, road);
        check("straight", rddf_stats(crop, [](const Vec2& p) { return std::abs(p.y - 60.0); }));
    }
    {
        Vec2 c{60.0, 60.0};
        LaneAnnotation ann = test::circle_lane(30.0, c);
        RoadGridMap road = rasterize({ann}, {0.0, 0.0, 0.2, 600});
        RddfCrop crop = compute_rddf({90.2, 60.0, M_PI / 2.0}, road);
        check("circle", rddf_stats(crop, [&](const Vec2& p) {
                  return std::abs((p - c).norm() - 30.0);
              }));
    }
    {
        LaneAnnotation ann = test::s_curve_lane(120.0);
        RoadGridMap road = rasterize({ann}, test::meta_covering(0.0, -4.0, 120.0, 4.0));
        std::vector<Vec2> ref = test::s_curve_reference(120.0);
        double y40 = 4.0 * std::sin(2.0 * M_PI * 40.0 / 60.0);
        RddfCrop crop = compute_rddf({40.0, y40, -0.2}, road);
        check("s-curve", rddf_stats(crop, [&](const Vec2& p) {
                  return test::polyline_distance(ref, p);
              }));
    }
    report(5, "rddf extraction fidelity", ok, detail);
}

// 6. Noisy segmenter at the operating point.
void criterion_6() {
    LaneAnnotation ann = test::straight_lane(-10.0, 130.0, 60.0);
    RoadGridMap road = rasterize({ann}, {0.0, 0.0, 0.2, 600});
    CropPair crop = cut_crop(generate_remission({ann}, road.meta(), {}, 2), road,
                             {60.0, 60.0, 0.0});

    std::vector<double> accs;
    std::uint64_t cells = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RoadGridMap noisy = corrupt_cells(crop.road, 0.163, seed);
        accs.push_back(class_accuracy(noisy, crop.road));
        cells += noisy.cells().size();
    }
    double mean = summarize(accs).mean;
    bool acc_ok = cells >= 100000 && std::abs(mean - 0.837) <= 0.01;

    RoadGridMap noisy_full = corrupt_cells(road, 0.15, 77);
    RddfCrop rddf = compute_rddf({40.0, 60.0, 0.0}, noisy_full);
    TrackStats s = rddf_stats(rddf, [](const Vec2& p) { return std::abs(p.y - 60.0); });
    bool rddf_ok = s.rms <= 0.3;

    char detail[96];
    std::snprintf(detail, sizeof(detail), "mean_acc=%.4f noisy_rms=%.3f", mean, s.rms);
    report(6, "noise robustness", acc_ok && rddf_ok, detail);
}

// 7. Closed-loop following on three tracks.
void criterion_7() {
    bool ok = true;
    std::string detail;
    auto run = [&](const char* name, const LaneAnnotation& ann, const MapMeta& meta,
                   const Pose& start, double horizon) {
        RoadGridMap road = rasterize({ann}, meta);
        auto t0 = Clock::now();
        FollowResult r = simulate_follow(start, road, ann, {}, horizon);
        double dt = seconds_since(t0);
        bool good = r.completed && !r.left_lane && r.max_cte <= 0.5 &&
                    r.steer_rate_max <= 0.5 && dt < 10.0;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "%s done=%d max_cte=%.3f steer_rate=%.3f time=%.1fs; ", name,
                      r.completed ? 1 : 0, r.max_cte, r.steer_rate_max, dt);
        detail += buf;
        if (!good) ok = false;
    };

    run("straight", test::straight_lane(-10.0, 230.0, 60.0), {0.0, 0.0, 0.2, 1200},
        {10.0, 60.0, 0.0}, 60.0);
    run("circle", test::circle_lane(50.0, {60.0, 60.0}), {0.0, 0.0, 0.2, 600},
        {110.0, 60.0, M_PI / 2.0}, 90.0);
    {
        LaneAnnotation s = test::s_curve_lane(120.0);
        run("s-curve", s, test::meta_covering(0.0, -4.0, 120.0, 4.0), {0.0, 0.0, 0.4}, 60.0);
    }
    report(7, "closed-loop following", ok, detail);
}

// 8. Persistence round trips.
void criterion_8() {
    bool ok = true;
    std::string detail;
    test::TempDir tmp("acceptance");

    {
        std::mt19937 rng(8);
        std::uniform_int_distribution<int> code(0, 16);
        MapMeta meta{0.0, 0.0, 0.2, 1050};
        std::vector<std::uint8_t> cells(static_cast<std::size_t>(1050) * 1050);
        for (auto& c : cells) c = static_cast<std::uint8_t>(code(rng));
        RoadGridMap map(meta, cells);
        if (save_map_as_tiles(map, tmp.path()).size() != 9) ok = false;
        RoadGridMap back = load_road_window({105.0, 105.0, 0.0}, tmp.path());
        if (!(back.meta() == meta) || back.cells() != cells) {
            ok = false;
            detail += "tiles ";
        }

        write_road_png(tmp.path() / "road.png", map);
        if (read_road_png(tmp.path() / "road.png", meta).cells() != cells) {
            ok = false;
            detail += "road-png ";
        }
    }
    {
        MapMeta meta{0.0, 0.0, 0.2, 128};
        RemissionGridMap map(meta);
        std::mt19937 rng(9);
        std::uniform_int_distribution<int> pix(0, 255);
        for (float& v : map.cells())
            v = pixel_to_remission(static_cast<std::uint8_t>(pix(rng)));
        write_remission_png(tmp.path() / "rem.png", map);
        RemissionGridMap back = read_remission_png(tmp.path() / "rem.png", meta);
        for (std::size_t i = 0; i < map.cells().size(); ++i) {
            float a = map.cells()[i], b = back.cells()[i];
            if (is_unknown(a) != is_unknown(b) || (!is_unknown(a) && a != b)) {
                ok = false;
                detail += "rem-png ";
                break;
            }
        }
    }
    {
        std::vector<Waypoint> wps;
        std::mt19937 rng(10);
        std::uniform_real_distribution<double> u(-100.0, 100.0);
        for (int i = 0; i < 200; ++i)
            wps.push_back({{u(rng), u(rng), u(rng) / 50.0},
                           static_cast<WaypointAnnotation>(i % 4), i % 4 == 1 ? 8.0 : 0.0});
        write_rddf(tmp.path() / "a.rddf", wps);
        write_rddf(tmp.path() / "b.rddf", read_rddf(tmp.path() / "a.rddf"));
        std::ifstream fa(tmp.path() / "a.rddf", std::ios::binary);
        std::ifstream fb(tmp.path() / "b.rddf", std::ios::binary);
        std::vector<char> ba((std::istreambuf_iterator<char>(fa)), {});
        std::vector<char> bb((std::istreambuf_iterator<char>(fb)), {});
        if (ba != bb) {
            ok = false;
            detail += "rddf ";
        }
    }
    {
        std::vector<LaneAnnotation> lanes{test::straight_lane(-5.0, 65.0, 30.0),
                                          test::circle_lane(20.0, {30.0, 30.0})};
        lanes[1].draw_order = 2;
        lanes[1].lane_width = 2.8;
        write_annotations(tmp.path() / "a.lanes", lanes);
        write_annotations(tmp.path() / "b.lanes", read_annotations(tmp.path() / "a.lanes"));
        std::ifstream fa(tmp.path() / "a.lanes", std::ios::binary);
        std::ifstream fb(tmp.path() / "b.lanes", std::ios::binary);
        std::vector<char> ba((std::istreambuf_iterator<char>(fa)), {});
        std::vector<char> bb((std::istreambuf_iterator<char>(fb)), {});
        if (ba != bb) {
            ok = false;
            detail += "annotations ";
        }
    }
    report(8, "persistence round trips", ok, detail);
}

// 9. Metric identities on 1000 random map pairs.
void criterion_9() {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> code(0, 16);
    MapMeta meta{0.0, 0.0, 0.2, 16};
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        std::vector<std::uint8_t> ca(256), cb(256);
        for (auto& c : ca) c = static_cast<std::uint8_t>(code(rng));
        for (auto& c : cb) c = static_cast<std::uint8_t>(code(rng));
        RoadGridMap a(meta, ca), b(meta, cb);

        if (class_accuracy(a, a) != 1.0) ok = false;
        if (class_accuracy(a, b) != class_accuracy(b, a)) ok = false;

        ConfusionMatrix conf = confusion_matrix(a, b);
        std::uint64_t total = 0, diag = 0;
        for (int g = 0; g < kNumCodes; ++g)
            for (int p = 0; p < kNumCodes; ++p) {
                total += conf[g][p];
                if (g == p) diag += conf[g][p];
            }
        if (total != 256) ok = false;
        double acc = static_cast<double>(diag) / static_cast<double>(total);
        if (std::abs(acc - class_accuracy(a, b)) > 1e-12) ok = false;
    }
    report(9, "metric identities", ok);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    std::printf("%s\n", failures == 0 ? "all criteria passed" : "FAILURES present");
    return failures == 0 ? 0 : 1;
}
