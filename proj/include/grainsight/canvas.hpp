#pragma once

#include <string>
#include <string_view>

#include "grainsight/image.hpp"

namespace grainsight {

/// Physical size of the reference canvas.
struct CanvasSpec {
    double width_mm = 200.0;
    double height_mm = 150.0;

    friend bool operator==(const CanvasSpec&, const CanvasSpec&) = default;
};

/// Parses "WxH" in millimeters, e.g. "200x150".
CanvasSpec parse_canvas_spec(std::string_view text);
void validate(const CanvasSpec& spec);

struct CanvasDetectParams {
    double epsilon_fraction = 0.02;   ///< polygon tolerance, fraction of contour perimeter
    double min_area_fraction = 0.10;  ///< of the image area
    bool dark_canvas = true;          ///< canvas is the darker Otsu class
};

/// Bounding box of the largest convex, four-vertex contour of the Otsu mask
/// covering at least min_area_fraction of the image. Throws NoCanvasFound.
BoundingBox detect_canvas(const GrayImage& blurred, const CanvasDetectParams& params = {});

struct CalibrationScale {
    double pixels_per_mm = 1.0;
    BoundingBox canvas_box_px;

    double to_mm(double px) const { return px / pixels_per_mm; }
    double to_px(double mm) const { return mm * pixels_per_mm; }
};

inline constexpr double kAspectMismatchTolerance = 0.10;

struct Calibration {
    CalibrationScale scale;
    double ratio_x = 0.0;  ///< box.w / paired spec side
    double ratio_y = 0.0;
    double mismatch = 0.0;  ///< |rx - ry| / min(rx, ry)
    bool aspect_mismatch = false;
};

/// Pixels per mm from the uncropped canvas box. The longer physical side is
/// paired with the longer pixel side; the two ratios are averaged and a
/// mismatch above 10% is flagged (the mean is still used).
Calibration calibrate(const BoundingBox& box, const CanvasSpec& spec);

struct RegionOfInterest {
    PointI origin;  ///< top-left of the crop in full-image pixels
    GrayImage image;
};

inline constexpr double kRoiCropFraction = 0.05;
inline constexpr int kMinRoiExtent = 10;

/// Crops round(5%) of the box extent from every side. Throws DegenerateRoi
/// unless both remaining extents exceed kMinRoiExtent.
RegionOfInterest crop_roi(const GrayImage& blurred, const BoundingBox& box);

}  // namespace grainsight
