#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "roadgrid/grid_map.hpp"
#include "roadgrid/rasterizer.hpp"

namespace roadgrid {

// Remission PNG: 8-bit grayscale; pixel 0 = UNKNOWN, pixel v in [1,255]
// stores remission (v-1)/254.
// Road PNG: 8-bit single channel; pixel value = cell code 0..16 verbatim.
// Pixel row 0 is the northernmost cell row.
std::uint8_t remission_to_pixel(float v);
float pixel_to_remission(std::uint8_t p);

void write_road_png(const std::filesystem::path& file, const RoadGridMap& map);
RoadGridMap read_road_png(const std::filesystem::path& file, const MapMeta& meta);
void write_remission_png(const std::filesystem::path& file, const RemissionGridMap& map);
RemissionGridMap read_remission_png(const std::filesystem::path& file, const MapMeta& meta);

// Sidecar georeferencing file, key=value lines.
void write_meta_file(const std::filesystem::path& file, const MapMeta& meta);
MapMeta read_meta_file(const std::filesystem::path& file);

// Crop pair directory layout:
//   meta.txt                resolution + crop size
//   index.txt               "<id> <cx> <cy> <yaw> <origin_x> <origin_y>" per crop
//   <id>_rem.png            remission crop
//   <id>_road.png           road crop
// Ids are zero-padded sequence numbers unless given explicitly.
std::string crop_id(std::size_t seq);
void save_crop_pairs(const std::filesystem::path& dir, const std::vector<CropPair>& pairs);
void append_crop_pairs(const std::filesystem::path& dir, const std::vector<CropPair>& pairs,
                       std::size_t first_seq);
std::vector<CropPair> load_crop_pairs(const std::filesystem::path& dir);
std::vector<std::string> list_crop_ids(const std::filesystem::path& dir);

}  // namespace roadgrid
