#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "roadgrid/types.hpp"

namespace roadgrid {

// Row 0 is the top of the image; pixels are row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;
};

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // 3 bytes per pixel
};

void write_gray_png(const std::filesystem::path& file, const GrayImage& img);
GrayImage read_gray_png(const std::filesystem::path& file);
void write_rgb_png(const std::filesystem::path& file, const RgbImage& img);

}  // namespace roadgrid
