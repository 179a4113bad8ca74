#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "roadgrid/augmentor.hpp"
#include "roadgrid/follower.hpp"
#include "roadgrid/map_io.hpp"
#include "roadgrid/metrics.hpp"
#include "roadgrid/png_io.hpp"
#include "roadgrid/rasterizer.hpp"
#include "roadgrid/rddf.hpp"
#include "roadgrid/segmenter.hpp"
#include "roadgrid/synth.hpp"
#include "roadgrid/tilestore.hpp"

namespace fs = std::filesystem;
using namespace roadgrid;

namespace {

std::pair<double, double> parse_xy(const std::string& s) {
    double x, y;
    if (std::sscanf(s.c_str(), "%lf,%lf", &x, &y) != 2)
        throw CLI::ValidationError("expected X,Y, got '" + s + "'");
    return {x, y};
}

Pose parse_pose(const std::string& s) {
    Pose p;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf", &p.x, &p.y, &p.yaw) != 3)
        throw CLI::ValidationError("expected X,Y,YAW, got '" + s + "'");
    return p;
}

std::string default_data_dir() {
    const char* env = std::getenv("ROADGRID_DATA");
    return env != nullptr ? env : "";
}

// Map geometry shared by rasterize and synth.
struct GridArgs {
    std::string origin = "0,0";
    int size = kDefaultMapSize;
    double resolution = kDefaultResolution;

    MapMeta meta() const {
        auto [x, y] = parse_xy(origin);
        return {x, y, resolution, size};
    }
};

void add_grid_flags(CLI::App* cmd, GridArgs& args) {
    cmd->add_option("--origin", args.origin, "map origin X,Y in meters")
        ->capture_default_str();
    cmd->add_option("--size", args.size, "map size in cells")->capture_default_str();
    cmd->add_option("--resolution", args.resolution, "cell size in meters")
        ->capture_default_str();
}

void cmd_rasterize(const std::string& annotations, const GridArgs& grid,
                   const std::string& out) {
    RoadGridMap map = rasterize(read_annotations(annotations), grid.meta());
    fs::create_directories(out);
    std::vector<TileKey> tiles = save_map_as_tiles(map, out);
    std::printf("wrote %zu road tiles to %s\n", tiles.size(), out.c_str());
}

void cmd_synth(const std::string& annotations, const GridArgs& grid, const SynthParams& params,
               std::uint64_t seed, const std::string& out) {
    RemissionGridMap map =
        generate_remission(read_annotations(annotations), grid.meta(), params, seed);
    fs::create_directories(out);
    std::vector<TileKey> tiles = save_map_as_tiles(map, out);
    std::printf("wrote %zu remission tiles to %s\n", tiles.size(), out.c_str());
}

void cmd_crops(const std::string& route_file, double spacing, const std::string& map_dir,
               const std::string& out) {
    RoadGridMap road = load_full_road_map(map_dir);
    RemissionGridMap rem = load_full_remission_map(map_dir);

    std::vector<Pose> route;
    for (const Waypoint& w : read_rddf(route_file)) route.push_back(w.pose);
    std::vector<CropPair> crops = cut_crop_pairs(rem, road, route, spacing);
    fs::create_directories(out);
    save_crop_pairs(out, crops);
    std::printf("wrote %zu crop pairs to %s\n", crops.size(), out.c_str());
}

void cmd_augment(const std::string& in, const std::string& map_dir, const std::string& out) {
    RoadGridMap road = load_full_road_map(map_dir);
    RemissionGridMap rem = load_full_remission_map(map_dir);

    std::vector<CropPair> crops = load_crop_pairs(in);
    fs::create_directories(out);
    std::size_t seq = 0;
    for (const CropPair& crop : crops) {
        std::vector<CropPair> variants = augment_pair(rem, road, crop.center_pose);
        append_crop_pairs(out, variants, seq);
        seq += variants.size();
    }
    std::printf("augmented %zu pairs into %zu\n", crops.size(), seq);
}

void cmd_extract_rddf(const std::string& pose_str, const std::string& map_dir,
                      const std::string& out) {
    Pose pose = parse_pose(pose_str);
    RoadGridMap road = load_road_window(pose, map_dir);
    RddfCrop crop = compute_rddf(pose, road);
    write_rddf(out, crop.waypoints);
    std::printf("wrote %zu waypoints (current index %zu) to %s\n", crop.waypoints.size(),
                crop.current_index, out.c_str());
}

void cmd_evaluate(const std::string& pred_dir, const std::string& gt_dir,
                  const std::string& scope_name, const std::string& report) {
    AccuracyScope scope =
        scope_name == "lane" ? AccuracyScope::lane_cells_only : AccuracyScope::all_cells;

    std::vector<std::string> ids = list_crop_ids(gt_dir);
    if (ids.empty()) throw Error("no crops found in " + gt_dir);
    MapMeta crop_meta = read_meta_file(fs::path(gt_dir) / "meta.txt");

    std::ofstream csv(report);
    if (!csv) throw StorageFailure("cannot write " + report);
    csv << "crop_id,accuracy\n";
    std::vector<double> accs;
    for (const std::string& id : ids) {
        fs::path gt_file = fs::path(gt_dir) / (id + "_road.png");
        fs::path pred_file = fs::path(pred_dir) / (id + "_road.png");
        if (!fs::exists(pred_file))
            throw MissingInferenceFile("no prediction for crop " + id + " in " + pred_dir);
        RoadGridMap gt = read_road_png(gt_file, crop_meta);
        RoadGridMap pred = read_road_png(pred_file, crop_meta);
        double acc = class_accuracy(pred, gt, scope);
        accs.push_back(acc);
        char line[64];
        std::snprintf(line, sizeof(line), "%s,%.6f\n", id.c_str(), acc);
        csv << line;
    }
    AccuracySummary s = summarize(accs);
    char line[160];
    std::snprintf(line, sizeof(line), "summary,mean=%.6f median=%.6f q1=%.6f q3=%.6f min=%.6f max=%.6f\n",
                  s.mean, s.median, s.q1, s.q3, s.min, s.max);
    csv << line;
    std::printf("%zu crops, mean accuracy %.4f (%s cells), report %s\n", ids.size(), s.mean,
                scope_name.c_str(), report.c_str());
}

void code_color(std::uint8_t code, std::uint8_t* rgb) {
    switch (code) {
        case kCodeOffLane: rgb[0] = rgb[1] = rgb[2] = 96; return;
        case kCodeSolid: rgb[0] = 220; rgb[1] = 0; rgb[2] = 0; return;
        case kCodeSolid50: rgb[0] = 255; rgb[1] = 120; rgb[2] = 120; return;
        case kCodeBroken: rgb[0] = 0; rgb[1] = 0; rgb[2] = 220; return;
        case kCodeBroken50: rgb[0] = 120; rgb[1] = 120; rgb[2] = 255; return;
        default:  // distance codes: a green ramp, brightest at the center
            rgb[0] = 0;
            rgb[1] = static_cast<std::uint8_t>(255 - 15 * (code - kDistCodeFirst));
            rgb[2] = 0;
            return;
    }
}

void cmd_render(const std::string& map_dir, const std::string& overlay,
                const std::string& out) {
    RoadGridMap map = load_full_road_map(map_dir);
    const MapMeta& meta = map.meta();
    RgbImage img{meta.size, meta.size,
                 std::vector<std::uint8_t>(static_cast<std::size_t>(meta.size) * meta.size * 3)};
    for (int row = 0; row < meta.size; ++row) {
        int img_row = meta.size - 1 - row;  // row 0 of the image is north
        for (int col = 0; col < meta.size; ++col)
            code_color(map.at(row, col),
                       &img.pixels[(static_cast<std::size_t>(img_row) * meta.size + col) * 3]);
    }
    if (!overlay.empty()) {
        for (const Waypoint& w : read_rddf(overlay)) {
            if (!meta.contains(w.pose.position())) continue;
            CellIndex c = world_to_cell(w.pose.position(), meta);
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    int row = c.row + dr, col = c.col + dc;
                    if (row < 0 || row >= meta.size || col < 0 || col >= meta.size) continue;
                    std::uint8_t* px =
                        &img.pixels[(static_cast<std::size_t>(meta.size - 1 - row) * meta.size +
                                     col) * 3];
                    px[0] = 255;
                    px[1] = 255;
                    px[2] = 0;
                }
        }
    }
    write_rgb_png(out, img);
    std::printf("rendered %dx%d map to %s\n", meta.size, meta.size, out.c_str());
}

void cmd_simulate(const std::string& track_file, const std::string& segmenter_spec,
                  const std::string& start_str, double horizon, const std::string& out) {
    std::vector<LaneAnnotation> lanes = read_annotations(track_file);
    if (lanes.empty()) throw Error("track file has no lanes: " + track_file);
    const LaneAnnotation& truth = lanes.front();

    // cover the track with an 8 m margin
    double min_x = 1e18, min_y = 1e18, max_x = -1e18, max_y = -1e18;
    for (const LaneAnnotation& l : lanes)
        for (const Vec2& p : l.points) {
            min_x = std::min(min_x, p.x);
            min_y = std::min(min_y, p.y);
            max_x = std::max(max_x, p.x);
            max_y = std::max(max_y, p.y);
        }
    MapMeta meta;
    meta.resolution = kDefaultResolution;
    meta.origin_x = min_x - 8.0;
    meta.origin_y = min_y - 8.0;
    meta.size = static_cast<int>(
        std::ceil((std::max(max_x - min_x, max_y - min_y) + 16.0) / meta.resolution));

    RoadGridMap road = rasterize(lanes, meta);
    SegmenterConfig seg = parse_segmenter_spec(segmenter_spec);
    if (seg.kind == SegmenterKind::noisy)
        road = corrupt_cells(road, seg.corruption_p, seg.seed);
    else if (seg.kind == SegmenterKind::external)
        throw Error("simulate supports the oracle and noisy segmenters only");

    Pose start;
    if (start_str.empty()) {
        Centerline center(truth);
        start = center.pose_at(0.0);
    } else {
        start = parse_pose(start_str);
    }

    FollowResult r = simulate_follow(start, road, truth, {}, horizon);

    std::ofstream csv(out);
    if (!csv) throw StorageFailure("cannot write " + out);
    csv << "t,x,y,yaw,steer,cte\n";
    for (const TraceRow& row : r.trace) {
        char line[160];
        std::snprintf(line, sizeof(line), "%.3f,%.6f,%.6f,%.6f,%.6f,%.6f\n", row.t, row.x,
                      row.y, row.yaw, row.steer, row.cte);
        csv << line;
    }
    std::printf("completed=%d left_lane=%d rms_cte=%.3f max_cte=%.3f steer_rate_max=%.3f "
                "steps=%zu trace=%s\n",
                r.completed ? 1 : 0, r.left_lane ? 1 : 0, r.rms_cte, r.max_cte,
                r.steer_rate_max, r.trace.size(), out.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"road grid map toolkit"};
    app.require_subcommand(1);

    std::string annotations, out, map_dir = default_data_dir();
    GridArgs grid;
    SynthParams synth_params;
    std::uint64_t seed = 0;

    auto* ras = app.add_subcommand("rasterize", "rasterize lane annotations into road tiles");
    ras->add_option("--annotations", annotations, "lane annotation file")->required();
    add_grid_flags(ras, grid);
    ras->add_option("--out", out, "output tile directory")->required();

    auto* syn = app.add_subcommand("synth", "generate synthetic remission tiles");
    syn->add_option("--annotations", annotations, "lane annotation file")->required();
    add_grid_flags(syn, grid);
    syn->add_option("--asphalt-mean", synth_params.asphalt_mean)->capture_default_str();
    syn->add_option("--marking-mean", synth_params.marking_mean)->capture_default_str();
    syn->add_option("--noise-sd", synth_params.noise_sd)->capture_default_str();
    syn->add_option("--unknown-fraction", synth_params.unknown_fraction)->capture_default_str();
    syn->add_option("--seed", seed, "random seed")->capture_default_str();
    syn->add_option("--out", out, "output tile directory")->required();

    std::string route_file;
    double spacing = 5.0;
    auto* crops = app.add_subcommand("crops", "cut crop pairs along a route");
    crops->add_option("--route", route_file, "route waypoint file")->required();
    crops->add_option("--spacing", spacing, "crop spacing in meters")->capture_default_str();
    crops->add_option("--map", map_dir, "tile directory (road + remission)")
        ->default_str(map_dir);
    crops->add_option("--out", out, "output crop directory")->required();

    std::string in_dir;
    auto* aug = app.add_subcommand("augment", "expand crop pairs by rotation and offset");
    aug->add_option("--in", in_dir, "input crop directory")->required();
    aug->add_option("--map", map_dir, "source tile directory")->default_str(map_dir);
    aug->add_option("--out", out, "output crop directory")->required();

    std::string pose_str;
    auto* ext = app.add_subcommand("extract-rddf", "extract a waypoint crop at a pose");
    ext->add_option("--pose", pose_str, "pose X,Y,YAW")->required();
    ext->add_option("--map", map_dir, "road tile directory")->default_str(map_dir);
    ext->add_option("--out", out, "output waypoint file")->required();

    std::string pred_dir, gt_dir, scope = "all", report;
    auto* eval = app.add_subcommand("evaluate", "score predicted crops against ground truth");
    eval->add_option("--pred", pred_dir, "predicted crop directory")->required();
    eval->add_option("--gt", gt_dir, "ground truth crop directory")->required();
    eval->add_option("--scope", scope, "all or lane")
        ->check(CLI::IsMember({"all", "lane"}))
        ->capture_default_str();
    eval->add_option("--report", report, "output csv file")->required();

    std::string overlay;
    auto* ren = app.add_subcommand("render", "render a road map to a color png");
    ren->add_option("--map", map_dir, "road tile directory")->default_str(map_dir);
    ren->add_option("--overlay", overlay, "waypoint file to overlay");
    ren->add_option("--out", out, "output png")->required();

    std::string track_file, segmenter_spec = "oracle", start_str;
    double horizon = 120.0;
    auto* sim = app.add_subcommand("simulate", "closed-loop lane following on a track");
    sim->add_option("--track", track_file, "lane annotation file")->required();
    sim->add_option("--segmenter", segmenter_spec, "oracle | noisy:P:SEED | external:DIR")
        ->capture_default_str();
    sim->add_option("--start", start_str, "start pose X,Y,YAW (default: track start)");
    sim->add_option("--horizon", horizon, "simulation horizon in seconds")
        ->capture_default_str();
    sim->add_option("--out", out, "output csv trace")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (ras->parsed()) cmd_rasterize(annotations, grid, out);
        else if (syn->parsed()) cmd_synth(annotations, grid, synth_params, seed, out);
        else if (crops->parsed()) cmd_crops(route_file, spacing, map_dir, out);
        else if (aug->parsed()) cmd_augment(in_dir, map_dir, out);
        else if (ext->parsed()) cmd_extract_rddf(pose_str, map_dir, out);
        else if (eval->parsed()) cmd_evaluate(pred_dir, gt_dir, scope, report);
        else if (ren->parsed()) cmd_render(map_dir, overlay, out);
        else if (sim->parsed()) cmd_simulate(track_file, segmenter_spec, start_str, horizon, out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
