#pragma once

#include <string_view>

#include "grainsight/canvas.hpp"
#include "grainsight/contours.hpp"
#include "grainsight/grains.hpp"

namespace grainsight {

struct FittedEllipse {
    PointD center;          ///< pixels, same frame as the contour
    double major_px = 0.0;  ///< full axis lengths
    double minor_px = 0.0;
    double angle_deg = 0.0;  ///< major-axis direction in [0, 180), y down
};

/// Minimum number of enclosed pixels for a fit.
inline constexpr std::size_t kMinFitPixels = 5;

/// Moment fit of the filled contour region. A solid ellipse with semi-axes
/// (a, b) has covariance eigenvalues a^2/4 and b^2/4, so the full axes are
/// 4 * sqrt(lambda). Pixels count as points at their centres, matching a
/// mask sampled at pixel centres. Throws DegenerateContour.
FittedEllipse fit_ellipse(const Contour& c);
FittedEllipse fit_ellipse(const FilledRegion& region);

enum class MeasureMethod { ellipse, bbox };

std::string_view method_name(MeasureMethod m) noexcept;
MeasureMethod parse_method(std::string_view name);

struct GrainMeasurement {
    int id = 0;          ///< 1-based, raster order of the contour start
    int contour_id = 0;  ///< index in the ROI contour extraction
    double length_mm = 0.0;
    double width_mm = 0.0;
    FittedEllipse ellipse;    ///< ROI coordinates
    PointD centroid_full_px;  ///< full-image coordinates
    MeasureMethod method = MeasureMethod::ellipse;
};

/// Length/width from the axis-aligned box. The ellipse field still carries
/// the moment fit when one is possible (box-derived otherwise).
GrainMeasurement measure_bbox(const GrainCandidate& cand, const CalibrationScale& scale,
                              PointI roi_origin = {});

/// Length/width from the fitted ellipse axes. Throws DegenerateContour.
GrainMeasurement measure_ellipse(const GrainCandidate& cand, const CalibrationScale& scale,
                                 PointI roi_origin = {});

}  // namespace grainsight
