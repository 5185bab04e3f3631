#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grainsight/errors.hpp"

namespace grainsight {

struct RgbTag {};
struct GrayTag {};
struct MaskTag {};

/// Row-major 8-bit raster with a fixed channel count. The tag keeps gray
/// images and binary masks from being mixed up at API boundaries.
template <int Channels, class Tag>
class Raster {
public:
    static constexpr int channels = Channels;

    Raster() = default;

    Raster(int width, int height, std::uint8_t fill = 0)
        : width_(width), height_(height) {
        check_dims(width, height);
        pixels_.assign(static_cast<std::size_t>(width) * height * Channels, fill);
    }

    Raster(int width, int height, std::vector<std::uint8_t> pixels)
        : width_(width), height_(height), pixels_(std::move(pixels)) {
        check_dims(width, height);
        if (pixels_.size() != static_cast<std::size_t>(width) * height * Channels) {
            throw InvalidArgument("pixel buffer length does not match " + std::to_string(width) + "x" +
                                  std::to_string(height) + "x" + std::to_string(Channels));
        }
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }
    bool empty() const noexcept { return pixels_.empty(); }

    std::span<const std::uint8_t> data() const noexcept { return pixels_; }
    std::span<std::uint8_t> data() noexcept { return pixels_; }

    std::span<const std::uint8_t> row(int y) const noexcept {
        return {pixels_.data() + static_cast<std::size_t>(y) * width_ * Channels,
                static_cast<std::size_t>(width_) * Channels};
    }
    std::span<std::uint8_t> row(int y) noexcept {
        return {pixels_.data() + static_cast<std::size_t>(y) * width_ * Channels,
                static_cast<std::size_t>(width_) * Channels};
    }

    std::uint8_t at(int x, int y, int c = 0) const noexcept {
        return pixels_[(static_cast<std::size_t>(y) * width_ + x) * Channels + c];
    }
    std::uint8_t& at(int x, int y, int c = 0) noexcept {
        return pixels_[(static_cast<std::size_t>(y) * width_ + x) * Channels + c];
    }

    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    static void check_dims(int width, int height) {
        if (width <= 0 || height <= 0) {
            throw InvalidArgument("image dimensions must be positive");
        }
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

using RgbImage = Raster<3, RgbTag>;
using GrayImage = Raster<1, GrayTag>;

/// Foreground mask. Pixels hold exactly 0 or 1.
class BinaryImage : public Raster<1, MaskTag> {
public:
    using Raster::Raster;

    BinaryImage(int width, int height, std::vector<std::uint8_t> pixels)
        : Raster(width, height, normalize(std::move(pixels))) {}

    bool test(int x, int y) const noexcept { return at(x, y) != 0; }
    void set(int x, int y, bool on) noexcept { at(x, y) = on ? 1 : 0; }
    std::size_t count() const noexcept;

private:
    static std::vector<std::uint8_t> normalize(std::vector<std::uint8_t> v) {
        for (auto& p : v) p = p ? 1 : 0;
        return v;
    }
};

inline std::size_t BinaryImage::count() const noexcept {
    std::size_t n = 0;
    for (auto p : data()) n += p;
    return n;
}

struct PointI {
    int x = 0;
    int y = 0;
    friend bool operator==(const PointI&, const PointI&) = default;
};

struct PointD {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const PointD&, const PointD&) = default;
};

struct BoundingBox {
    int x = 0;
    int y = 0;
    int w = 1;
    int h = 1;

    long long area() const noexcept { return static_cast<long long>(w) * h; }
    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Copy of a rectangular window. The box must lie inside the image.
GrayImage crop(const GrayImage& img, const BoundingBox& box);

GrayImage flip_horizontal(const GrayImage& img);
GrayImage flip_vertical(const GrayImage& img);

}  // namespace grainsight
