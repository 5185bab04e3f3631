#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "grainsight/image.hpp"
#include "grainsight/report.hpp"

namespace grainsight {

using Rgb = std::array<std::uint8_t, 3>;

struct OverlayOptions {
    bool labels = true;
    int font_scale = 0;  ///< 0 picks one from the image height
};

/// Stable per-id color.
Rgb grain_color(int id);
inline constexpr Rgb kCanvasColor{0, 200, 255};

/// Draws the canvas box, each grain's fitted ellipse outline, and an
/// "id / LxWmm" label at the centroid (clamped into the image). The report
/// is only read.
RgbImage render_overlay(const RgbImage& img, const RunReport& report,
                        const OverlayOptions& options = {});

/// 5x7 bitmap text; glyphs exist for digits, '.', 'x', 'm', '#', ':' and
/// space. Returns the top-left corner actually used after clamping.
PointI draw_text(RgbImage& img, PointI at, std::string_view text, Rgb color, int scale);

/// Single-pixel ellipse outline; returns the number of pixels written.
std::size_t draw_ellipse(RgbImage& img, PointD center, double semi_major, double semi_minor,
                         double angle_deg, Rgb color);

}  // namespace grainsight
