#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace artcode {

/// 8-bit grayscale raster, row-major. The carrier type between generation,
/// masking and feature extraction.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // size == width * height

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 255);

    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    bool operator==(const GrayImage&) const = default;
};

/// Reads a binary (P5) PGM file with maxval 255.
GrayImage read_pgm(const std::filesystem::path& path);

/// Writes a binary (P5) PGM file, maxval 255, bit-exact layout.
void write_pgm(const GrayImage& img, const std::filesystem::path& path);

} // namespace artcode
