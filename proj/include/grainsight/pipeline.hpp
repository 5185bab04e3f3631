#pragma once

#include <string>
#include <utility>
#include <vector>

#include "grainsight/binarize.hpp"
#include "grainsight/canvas.hpp"
#include "grainsight/grains.hpp"
#include "grainsight/measure.hpp"
#include "grainsight/report.hpp"

namespace grainsight {

struct PipelineConfig {
    double blur_sigma = 1.0;
    CanvasDetectParams canvas;
    AdaptiveParams adaptive;
    FiltrationPolicy policy;
    MeasureMethod method = MeasureMethod::ellipse;
};

void validate(const PipelineConfig& config);

struct StageTiming {
    std::string stage;
    double milliseconds = 0.0;
};

struct PipelineResult {
    RunReport report;
    Calibration calibration;
    PointI roi_origin;
    std::size_t segmented = 0;       ///< candidates out of segmentation
    std::size_t after_filter = 0;    ///< after the size policy
    std::size_t after_removal = 0;   ///< after sub-contour removal
    std::vector<StageTiming> timings;
};

/// grayscale -> blur -> detect canvas -> calibrate -> crop -> segment ->
/// size filter -> sub-contour removal -> measure. Throws NoCanvasFound or
/// DegenerateRoi when the canvas cannot be used.
PipelineResult run_pipeline(const RgbImage& image, const CanvasSpec& canvas,
                            const PipelineConfig& config = {}, std::string image_path = {});

}  // namespace grainsight
