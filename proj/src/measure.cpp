#include "grainsight/measure.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace grainsight {

namespace {

double to_half_turn(double deg) {
    double a = std::fmod(deg, 180.0);
    if (a < 0) a += 180.0;
    if (a >= 180.0) a -= 180.0;
    return a;
}

}  // namespace

FittedEllipse fit_ellipse(const FilledRegion& region) {
    const auto& mask = region.mask;
    std::size_t m00 = 0;
    long long sx = 0;
    long long sy = 0;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask.test(x, y)) continue;
            ++m00;
            sx += x;
            sy += y;
        }
    }
    if (m00 < kMinFitPixels) {
        throw DegenerateContour("region encloses only " + std::to_string(m00) + " pixels");
    }
    const double n = static_cast<double>(m00);
    const double cx = sx / n;
    const double cy = sy / n;
    double mu20 = 0.0;
    double mu02 = 0.0;
    double mu11 = 0.0;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask.test(x, y)) continue;
            const double dx = x - cx;
            const double dy = y - cy;
            mu20 += dx * dx;
            mu02 += dy * dy;
            mu11 += dx * dy;
        }
    }
    mu20 = mu20 / n;
    mu02 = mu02 / n;
    mu11 = mu11 / n;

    // Eigenvalues of [[mu20, mu11], [mu11, mu02]].
    const double mean = 0.5 * (mu20 + mu02);
    const double spread = std::hypot(0.5 * (mu20 - mu02), mu11);
    const double l1 = mean + spread;
    const double l2 = mean - spread;
    if (!(l2 > 0.0)) throw DegenerateContour("region has no extent across its major axis");

    FittedEllipse e;
    e.center = {cx + region.box.x, cy + region.box.y};
    e.major_px = 4.0 * std::sqrt(l1);
    e.minor_px = 4.0 * std::sqrt(l2);
    e.angle_deg = to_half_turn(0.5 * std::atan2(2.0 * mu11, mu20 - mu02) * 180.0 / std::numbers::pi);
    return e;
}

FittedEllipse fit_ellipse(const Contour& c) {
    if (c.points.size() < kMinCandidatePoints) {
        throw DegenerateContour("contour has fewer than 5 points");
    }
    return fit_ellipse(fill_contour(c));
}

std::string_view method_name(MeasureMethod m) noexcept {
    return m == MeasureMethod::ellipse ? "ellipse" : "bbox";
}

MeasureMethod parse_method(std::string_view name) {
    if (name == "ellipse") return MeasureMethod::ellipse;
    if (name == "bbox") return MeasureMethod::bbox;
    throw InvalidArgument("unknown measure method '" + std::string(name) +
                          "' (expected ellipse or bbox)");
}

GrainMeasurement measure_bbox(const GrainCandidate& cand, const CalibrationScale& scale,
                              PointI roi_origin) {
    GrainMeasurement m;
    m.contour_id = cand.contour.id;
    m.method = MeasureMethod::bbox;
    m.length_mm = scale.to_mm(std::max(cand.box.w, cand.box.h));
    m.width_mm = scale.to_mm(std::min(cand.box.w, cand.box.h));
    try {
        m.ellipse = fit_ellipse(cand.contour);
    } catch (const DegenerateContour&) {
        m.ellipse.center = {cand.box.x + 0.5 * (cand.box.w - 1), cand.box.y + 0.5 * (cand.box.h - 1)};
        m.ellipse.major_px = std::max(cand.box.w, cand.box.h);
        m.ellipse.minor_px = std::min(cand.box.w, cand.box.h);
        m.ellipse.angle_deg = cand.box.w >= cand.box.h ? 0.0 : 90.0;
    }
    m.centroid_full_px = {m.ellipse.center.x + roi_origin.x, m.ellipse.center.y + roi_origin.y};
    return m;
}

GrainMeasurement measure_ellipse(const GrainCandidate& cand, const CalibrationScale& scale,
                                 PointI roi_origin) {
    GrainMeasurement m;
    m.contour_id = cand.contour.id;
    m.method = MeasureMethod::ellipse;
    m.ellipse = fit_ellipse(cand.contour);
    m.length_mm = scale.to_mm(m.ellipse.major_px);
    m.width_mm = scale.to_mm(m.ellipse.minor_px);
    m.centroid_full_px = {m.ellipse.center.x + roi_origin.x, m.ellipse.center.y + roi_origin.y};
    return m;
}

}  // namespace grainsight
