#pragma once

#include <filesystem>

#include "grainsight/image.hpp"

namespace grainsight {

/// Decodes PNG or JPEG (sniffed from the file header) to 8-bit RGB.
/// Throws IoError on unreadable or unsupported files.
RgbImage read_image(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const RgbImage& img);
void write_png(const std::filesystem::path& path, const GrayImage& img);
/// Foreground written as 255.
void write_png(const std::filesystem::path& path, const BinaryImage& mask);

void write_jpeg(const std::filesystem::path& path, const RgbImage& img, int quality = 95);

}  // namespace grainsight
