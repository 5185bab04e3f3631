#include "grainsight/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace grainsight {

namespace {

// Rows top to bottom, bit 4 = leftmost column.
struct Glyph {
    char ch;
    std::uint8_t rows[7];
};

constexpr Glyph kFont[] = {
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
    {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}},
    {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
    {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
    {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
    {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
    {'.', {0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C}},
    {'x', {0x00, 0x00, 0x11, 0x0A, 0x04, 0x0A, 0x11}},
    {'m', {0x00, 0x00, 0x1A, 0x15, 0x15, 0x11, 0x11}},
    {'#', {0x0A, 0x0A, 0x1F, 0x0A, 0x1F, 0x0A, 0x0A}},
    {':', {0x00, 0x0C, 0x0C, 0x00, 0x0C, 0x0C, 0x00}},
    {' ', {0, 0, 0, 0, 0, 0, 0}},
};

const Glyph* glyph(char c) {
    for (const auto& g : kFont) {
        if (g.ch == c) return &g;
    }
    return nullptr;
}

void put(RgbImage& img, int x, int y, Rgb c) {
    if (!img.contains(x, y)) return;
    for (int k = 0; k < 3; ++k) img.at(x, y, k) = c[k];
}

void draw_box(RgbImage& img, const BoundingBox& b, Rgb c) {
    for (int x = b.x; x < b.x + b.w; ++x) {
        put(img, x, b.y, c);
        put(img, x, b.y + b.h - 1, c);
    }
    for (int y = b.y; y < b.y + b.h; ++y) {
        put(img, b.x, y, c);
        put(img, b.x + b.w - 1, y, c);
    }
}

std::string size_label(const GrainMeasurement& g) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fx%.2fmm", g.length_mm, g.width_mm);
    return buf;
}

}  // namespace

Rgb grain_color(int id) {
    // Golden-angle hue walk, fixed saturation/value.
    const double hue = std::fmod(id * 137.50776405, 360.0) / 60.0;
    const int sector = static_cast<int>(hue) % 6;
    const double f = hue - std::floor(hue);
    const std::uint8_t hi = 255;
    const std::uint8_t lo = 60;
    const auto mid_up = static_cast<std::uint8_t>(lo + (hi - lo) * f);
    const auto mid_dn = static_cast<std::uint8_t>(hi - (hi - lo) * f);
    switch (sector) {
        case 0: return {hi, mid_up, lo};
        case 1: return {mid_dn, hi, lo};
        case 2: return {lo, hi, mid_up};
        case 3: return {lo, mid_dn, hi};
        case 4: return {mid_up, lo, hi};
        default: return {hi, lo, mid_dn};
    }
}

PointI draw_text(RgbImage& img, PointI at, std::string_view text, Rgb color, int scale) {
    scale = std::max(1, scale);
    const int advance = 6 * scale;
    const int tw = static_cast<int>(text.size()) * advance;
    const int th = 7 * scale;
    at.x = std::clamp(at.x, 0, std::max(0, img.width() - tw));
    at.y = std::clamp(at.y, 0, std::max(0, img.height() - th));
    for (std::size_t i = 0; i < text.size(); ++i) {
        const Glyph* g = glyph(text[i]);
        if (g == nullptr) continue;
        const int ox = at.x + static_cast<int>(i) * advance;
        for (int r = 0; r < 7; ++r) {
            for (int col = 0; col < 5; ++col) {
                if (!(g->rows[r] & (0x10 >> col))) continue;
                for (int sy = 0; sy < scale; ++sy) {
                    for (int sx = 0; sx < scale; ++sx) {
                        put(img, ox + col * scale + sx, at.y + r * scale + sy, color);
                    }
                }
            }
        }
    }
    return at;
}

std::size_t draw_ellipse(RgbImage& img, PointD center, double semi_major, double semi_minor,
                         double angle_deg, Rgb color) {
    const double rad = angle_deg * std::numbers::pi / 180.0;
    const double c = std::cos(rad);
    const double s = std::sin(rad);
    const int steps = std::max(64, static_cast<int>(std::ceil(8.0 * std::numbers::pi * semi_major)));
    std::vector<PointI> path;
    for (int i = 0; i < steps; ++i) {
        const double t = 2.0 * std::numbers::pi * i / steps;
        const double u = semi_major * std::cos(t);
        const double v = semi_minor * std::sin(t);
        const PointI p{static_cast<int>(std::lround(center.x + u * c - v * s)),
                       static_cast<int>(std::lround(center.y + u * s + v * c))};
        if (path.empty() || !(path.back() == p)) path.push_back(p);
    }
    while (path.size() > 1 && path.front() == path.back()) path.pop_back();
    // Drop staircase corners: a pixel whose neighbours already touch
    // diagonally is redundant in an 8-connected outline.
    auto touches = [](const PointI& a, const PointI& b) {
        return std::abs(a.x - b.x) <= 1 && std::abs(a.y - b.y) <= 1;
    };
    std::vector<PointI> thin;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const PointI& prev = thin.empty() ? path[(i + path.size() - 1) % path.size()] : thin.back();
        const PointI& next = path[(i + 1) % path.size()];
        if (path.size() > 4 && touches(prev, next) && !(prev == next)) continue;
        thin.push_back(path[i]);
    }
    std::set<std::pair<int, int>> written;
    for (const auto& p : thin) {
        if (!img.contains(p.x, p.y)) continue;
        put(img, p.x, p.y, color);
        written.insert({p.x, p.y});
    }
    return written.size();
}

RgbImage render_overlay(const RgbImage& img, const RunReport& report,
                        const OverlayOptions& options) {
    RgbImage out = img;
    draw_box(out, report.canvas_box_px, kCanvasColor);
    const int scale = options.font_scale > 0 ? options.font_scale
                                              : std::max(1, img.height() / 700);
    for (const auto& g : report.grains) {
        const Rgb color = grain_color(g.id);
        draw_ellipse(out, g.centroid_full_px, g.ellipse.major_px / 2, g.ellipse.minor_px / 2,
                     g.ellipse.angle_deg, color);
        if (!options.labels) continue;
        const PointI at{static_cast<int>(std::lround(g.centroid_full_px.x)),
                        static_cast<int>(std::lround(g.centroid_full_px.y))};
        const PointI used = draw_text(out, at, "#" + std::to_string(g.id), color, scale);
        draw_text(out, {used.x, used.y + 9 * scale}, size_label(g), color, scale);
    }
    return out;
}

}  // namespace grainsight
