#include "roadgrid/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

namespace roadgrid {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void write_png(const std::filesystem::path& file, int width, int height,
               int color_type, const std::uint8_t* pixels, int bytes_per_pixel) {
    if (width <= 0 || height <= 0) throw Error("png: empty image");
    FilePtr fp(std::fopen(file.string().c_str(), "wb"));
    if (!fp) throw StorageFailure("cannot open " + file.string() + " for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw StorageFailure("png: allocation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw StorageFailure("png: write error on " + file.string());
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int r = 0; r < height; ++r)
        png_write_row(png, const_cast<png_bytep>(pixels + static_cast<std::size_t>(r) *
                                                              width * bytes_per_pixel));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

void write_gray_png(const std::filesystem::path& file, const GrayImage& img) {
    if (img.pixels.size() != static_cast<std::size_t>(img.width) * img.height)
        throw ShapeMismatch("gray image buffer size mismatch");
    write_png(file, img.width, img.height, PNG_COLOR_TYPE_GRAY, img.pixels.data(), 1);
}

void write_rgb_png(const std::filesystem::path& file, const RgbImage& img) {
    if (img.pixels.size() != static_cast<std::size_t>(img.width) * img.height * 3)
        throw ShapeMismatch("rgb image buffer size mismatch");
    write_png(file, img.width, img.height, PNG_COLOR_TYPE_RGB, img.pixels.data(), 3);
}

GrayImage read_gray_png(const std::filesystem::path& file) {
    FilePtr fp(std::fopen(file.string().c_str(), "rb"));
    if (!fp) throw StorageFailure("cannot open " + file.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw StorageFailure("png: allocation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw StorageFailure("png: read error on " + file.string());
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    // Normalize anything we get to 8-bit grayscale.
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    int color = png_get_color_type(png, info);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (color & PNG_COLOR_MASK_COLOR) png_set_rgb_to_gray(png, 1, -1.0, -1.0);
    png_read_update_info(png, info);

    GrayImage img;
    img.width = static_cast<int>(png_get_image_width(png, info));
    img.height = static_cast<int>(png_get_image_height(png, info));
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
    for (int r = 0; r < img.height; ++r)
        png_read_row(png, img.pixels.data() + static_cast<std::size_t>(r) * img.width,
                     nullptr);
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

}  // namespace roadgrid
