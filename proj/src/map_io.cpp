#include "roadgrid/map_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "roadgrid/png_io.hpp"

namespace roadgrid {

std::uint8_t remission_to_pixel(float v) {
    if (is_unknown(v)) return 0;
    int p = 1 + static_cast<int>(std::lround(v * 254.0f));
    if (p < 1) p = 1;
    if (p > 255) p = 255;
    return static_cast<std::uint8_t>(p);
}

float pixel_to_remission(std::uint8_t p) {
    if (p == 0) return unknown_remission();
    return (p - 1) / 254.0f;
}

void write_road_png(const std::filesystem::path& file, const RoadGridMap& map) {
    const int n = map.size();
    GrayImage img{n, n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n)};
    for (int row = 0; row < n; ++row) {
        // image row 0 = northernmost cell row
        std::uint8_t* dst = img.pixels.data() + static_cast<std::size_t>(n - 1 - row) * n;
        const std::uint8_t* src = map.cells().data() + static_cast<std::size_t>(row) * n;
        std::copy(src, src + n, dst);
    }
    write_gray_png(file, img);
}

RoadGridMap read_road_png(const std::filesystem::path& file, const MapMeta& meta) {
    GrayImage img = read_gray_png(file);
    if (img.width != meta.size || img.height != meta.size)
        throw ShapeMismatch(file.string() + ": image size does not match map meta");
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(meta.size) * meta.size);
    for (int row = 0; row < meta.size; ++row) {
        const std::uint8_t* src =
            img.pixels.data() + static_cast<std::size_t>(meta.size - 1 - row) * meta.size;
        std::uint8_t* dst = cells.data() + static_cast<std::size_t>(row) * meta.size;
        for (int col = 0; col < meta.size; ++col) {
            if (src[col] > kCodeMax)
                throw InvalidCode(file.string() + ": pixel value " +
                                  std::to_string(src[col]) + " is not a lane code");
            dst[col] = src[col];
        }
    }
    return {meta, std::move(cells)};
}

void write_remission_png(const std::filesystem::path& file, const RemissionGridMap& map) {
    const int n = map.size();
    GrayImage img{n, n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n)};
    for (int row = 0; row < n; ++row) {
        std::uint8_t* dst = img.pixels.data() + static_cast<std::size_t>(n - 1 - row) * n;
        const float* src = map.cells().data() + static_cast<std::size_t>(row) * n;
        for (int col = 0; col < n; ++col) dst[col] = remission_to_pixel(src[col]);
    }
    write_gray_png(file, img);
}

RemissionGridMap read_remission_png(const std::filesystem::path& file, const MapMeta& meta) {
    GrayImage img = read_gray_png(file);
    if (img.width != meta.size || img.height != meta.size)
        throw ShapeMismatch(file.string() + ": image size does not match map meta");
    std::vector<float> cells(static_cast<std::size_t>(meta.size) * meta.size);
    for (int row = 0; row < meta.size; ++row) {
        const std::uint8_t* src =
            img.pixels.data() + static_cast<std::size_t>(meta.size - 1 - row) * meta.size;
        float* dst = cells.data() + static_cast<std::size_t>(row) * meta.size;
        for (int col = 0; col < meta.size; ++col) dst[col] = pixel_to_remission(src[col]);
    }
    return {meta, std::move(cells)};
}

void write_meta_file(const std::filesystem::path& file, const MapMeta& meta) {
    std::ofstream out(file);
    if (!out) throw StorageFailure("cannot write " + file.string());
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "origin_x=%.6f\norigin_y=%.6f\nresolution=%.6f\nsize=%d\n",
                  meta.origin_x, meta.origin_y, meta.resolution, meta.size);
    out << buf;
    if (!out) throw StorageFailure("failed writing " + file.string());
}

MapMeta read_meta_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw StorageFailure("cannot open " + file.string());
    MapMeta meta;
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        try {
            if (key == "origin_x") meta.origin_x = std::stod(val);
            else if (key == "origin_y") meta.origin_y = std::stod(val);
            else if (key == "resolution") meta.resolution = std::stod(val);
            else if (key == "size") meta.size = std::stoi(val);
        } catch (const std::exception&) {
            throw ParseError(file.string() + ": bad value for " + key);
        }
    }
    if (!meta.valid()) throw ParseError(file.string() + ": incomplete map meta");
    return meta;
}

std::string crop_id(std::size_t seq) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%06zu", seq);
    return buf;
}

namespace {

void write_index_line(std::ofstream& out, const std::string& id, const CropPair& p) {
    char buf[224];
    std::snprintf(buf, sizeof(buf), "%s %.6f %.6f %.6f %.6f %.6f\n", id.c_str(),
                  p.center_pose.x, p.center_pose.y, p.center_pose.yaw,
                  p.road.meta().origin_x, p.road.meta().origin_y);
    out << buf;
}

}  // namespace

void append_crop_pairs(const std::filesystem::path& dir, const std::vector<CropPair>& pairs,
                       std::size_t first_seq) {
    std::filesystem::create_directories(dir);
    bool fresh = !std::filesystem::exists(dir / "index.txt") || first_seq == 0;
    std::ofstream index(dir / "index.txt", fresh ? std::ios::trunc : std::ios::app);
    if (!index) throw StorageFailure("cannot write crop index in " + dir.string());
    if (fresh) index << "# crops v1\n";

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const CropPair& p = pairs[i];
        if (p.road.size() != kCropSize || p.remission.size() != kCropSize)
            throw ShapeMismatch("crop pair is not 120x120");
        std::string id = crop_id(first_seq + i);
        write_remission_png(dir / (id + "_rem.png"), p.remission);
        write_road_png(dir / (id + "_road.png"), p.road);
        write_index_line(index, id, p);
    }
    if (!index) throw StorageFailure("failed writing crop index in " + dir.string());
    if (fresh || first_seq == 0) {
        MapMeta m = pairs.empty() ? MapMeta{0, 0, kDefaultResolution, kCropSize}
                                  : pairs.front().road.meta();
        m.origin_x = 0.0;
        m.origin_y = 0.0;  // per-crop origins live in index.txt
        write_meta_file(dir / "meta.txt", m);
    }
}

void save_crop_pairs(const std::filesystem::path& dir, const std::vector<CropPair>& pairs) {
    append_crop_pairs(dir, pairs, 0);
}

namespace {

struct IndexEntry {
    std::string id;
    Pose center;
    double origin_x, origin_y;
};

std::vector<IndexEntry> read_index(const std::filesystem::path& dir) {
    std::ifstream in(dir / "index.txt");
    if (!in) throw StorageFailure("cannot open crop index in " + dir.string());
    std::vector<IndexEntry> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        IndexEntry e;
        if (!(ls >> e.id >> e.center.x >> e.center.y >> e.center.yaw >> e.origin_x >>
              e.origin_y))
            throw ParseError(dir.string() + "/index.txt: malformed line: " + line);
        entries.push_back(e);
    }
    return entries;
}

}  // namespace

std::vector<std::string> list_crop_ids(const std::filesystem::path& dir) {
    std::vector<std::string> ids;
    for (const IndexEntry& e : read_index(dir)) ids.push_back(e.id);
    return ids;
}

std::vector<CropPair> load_crop_pairs(const std::filesystem::path& dir) {
    MapMeta base = read_meta_file(dir / "meta.txt");
    std::vector<CropPair> pairs;
    for (const IndexEntry& e : read_index(dir)) {
        MapMeta meta{e.origin_x, e.origin_y, base.resolution, base.size};
        pairs.push_back({read_remission_png(dir / (e.id + "_rem.png"), meta),
                         read_road_png(dir / (e.id + "_road.png"), meta), e.center});
    }
    return pairs;
}

}  // namespace roadgrid
