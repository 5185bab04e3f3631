#include "grainsight/canvas.hpp"

#include <charconv>
#include <cmath>
#include <optional>

#include "grainsight/binarize.hpp"
#include "grainsight/contours.hpp"

namespace grainsight {

namespace {

std::optional<double> parse_positive(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || !(v > 0.0) || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

CanvasSpec parse_canvas_spec(std::string_view text) {
    const auto sep = text.find_first_of("xX");
    if (sep != std::string_view::npos) {
        auto w = parse_positive(text.substr(0, sep));
        auto h = parse_positive(text.substr(sep + 1));
        if (w && h) return {*w, *h};
    }
    throw InvalidArgument("canvas size must look like WxH in mm (e.g. 200x150), got '" +
                          std::string(text) + "'");
}

void validate(const CanvasSpec& spec) {
    if (!(spec.width_mm > 0.0) || !(spec.height_mm > 0.0) || !std::isfinite(spec.width_mm) ||
        !std::isfinite(spec.height_mm)) {
        throw InvalidArgument("canvas dimensions must be positive");
    }
}

BoundingBox detect_canvas(const GrayImage& blurred, const CanvasDetectParams& params) {
    const std::uint8_t t = otsu_threshold(blurred);
    const BinaryImage mask = params.dark_canvas ? apply_global_threshold_dark(blurred, t)
                                                : apply_global_threshold(blurred, t);
    const double min_area =
        params.min_area_fraction * static_cast<double>(blurred.width()) * blurred.height();

    const Contour* best = nullptr;
    double best_area = -1.0;
    const auto contours = extract_contours(mask);
    for (const auto& c : contours) {
        if (c.kind != ContourKind::outer || c.points.size() < 4) continue;
        const double area = contour_area(c);
        if (area < min_area || area <= best_area) continue;
        const Polygon poly = approx_polygon(c, params.epsilon_fraction * contour_perimeter(c));
        if (poly.vertices.size() != 4 || !is_convex(poly)) continue;
        best = &c;
        best_area = area;
    }
    if (best == nullptr) {
        throw NoCanvasFound("no quadrilateral canvas found (Otsu threshold " + std::to_string(t) +
                            ", " + std::to_string(contours.size()) + " contours examined)");
    }
    return bounding_box(*best);
}

Calibration calibrate(const BoundingBox& box, const CanvasSpec& spec) {
    validate(spec);
    if (box.w <= 0 || box.h <= 0) throw InvalidArgument("canvas box must be non-empty");
    const double long_mm = std::max(spec.width_mm, spec.height_mm);
    const double short_mm = std::min(spec.width_mm, spec.height_mm);
    const bool landscape = box.w >= box.h;
    const double mm_x = landscape ? long_mm : short_mm;
    const double mm_y = landscape ? short_mm : long_mm;

    Calibration c;
    c.ratio_x = box.w / mm_x;
    c.ratio_y = box.h / mm_y;
    c.mismatch = std::abs(c.ratio_x - c.ratio_y) / std::min(c.ratio_x, c.ratio_y);
    c.aspect_mismatch = c.mismatch > kAspectMismatchTolerance;
    c.scale.pixels_per_mm = 0.5 * (c.ratio_x + c.ratio_y);
    c.scale.canvas_box_px = box;
    return c;
}

RegionOfInterest crop_roi(const GrayImage& blurred, const BoundingBox& box) {
    const int mx = static_cast<int>(std::lround(kRoiCropFraction * box.w));
    const int my = static_cast<int>(std::lround(kRoiCropFraction * box.h));
    const BoundingBox inner{box.x + mx, box.y + my, box.w - 2 * mx, box.h - 2 * my};
    if (inner.w <= kMinRoiExtent || inner.h <= kMinRoiExtent) {
        throw DegenerateRoi("canvas region " + std::to_string(box.w) + "x" +
                            std::to_string(box.h) + " px is too small after the 5% crop");
    }
    return {{inner.x, inner.y}, crop(blurred, inner)};
}

}  // namespace grainsight
