#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "grainsight/canvas.hpp"
#include "grainsight/measure.hpp"

namespace grainsight {

struct Diagnostic {
    std::string kind;  ///< AspectMismatch, DegenerateContour, Policy, ...
    std::string message;
    int contour_id = -1;  ///< -1 when not tied to a contour

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct RunReport {
    std::string image_path;
    CanvasSpec canvas;
    double pixels_per_mm = 0.0;
    BoundingBox canvas_box_px;
    std::string policy;
    std::string method;
    std::vector<GrainMeasurement> grains;
    std::vector<Diagnostic> diagnostics;

    std::size_t grain_count() const noexcept { return grains.size(); }
};

bool operator==(const GrainMeasurement& a, const GrainMeasurement& b);
bool operator==(const RunReport& a, const RunReport& b);

enum class ReportFormat { json, csv };
ReportFormat parse_format(std::string_view name);

/// JSON: {image, canvas_mm, canvas_box_px, pixels_per_mm, policy, method,
/// count, grains: [{id, length_mm, width_mm, angle_deg, cx, cy, ...}],
/// diagnostics}. Numbers keep full precision.
std::string emit_json(const RunReport& report);
/// CSV header `id,length_mm,width_mm,angle_deg,cx,cy`, two decimals.
std::string emit_csv(const RunReport& report);
std::string emit_report(const RunReport& report, ReportFormat format);

RunReport parse_json_report(std::string_view text);

}  // namespace grainsight
