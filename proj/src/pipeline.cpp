#include "grainsight/pipeline.hpp"

#include <chrono>
#include <cstdio>

#include "grainsight/raster.hpp"

namespace grainsight {

namespace {

class Stopwatch {
public:
    explicit Stopwatch(std::vector<StageTiming>& sink) : sink_(sink), last_(clock::now()) {}

    void lap(const char* stage) {
        const auto now = clock::now();
        sink_.push_back({stage, std::chrono::duration<double, std::milli>(now - last_).count()});
        last_ = now;
    }

private:
    using clock = std::chrono::steady_clock;
    std::vector<StageTiming>& sink_;
    clock::time_point last_;
};

}  // namespace

void validate(const PipelineConfig& config) {
    if (!(config.blur_sigma > 0.0)) throw InvalidArgument("blur sigma must be positive");
    validate(config.adaptive);
    validate(config.policy);
    if (!(config.canvas.epsilon_fraction > 0.0) || config.canvas.min_area_fraction < 0.0 ||
        config.canvas.min_area_fraction > 1.0) {
        throw InvalidArgument("canvas detection parameters out of range");
    }
}

PipelineResult run_pipeline(const RgbImage& image, const CanvasSpec& canvas,
                            const PipelineConfig& config, std::string image_path) {
    validate(config);
    validate(canvas);
    PipelineResult res;
    Stopwatch watch(res.timings);

    const GrayImage gray = to_grayscale(image);
    watch.lap("grayscale");
    const GrayImage blurred = gaussian_blur_5x5(gray, config.blur_sigma);
    watch.lap("blur");
    const BoundingBox box = detect_canvas(blurred, config.canvas);
    watch.lap("detect_canvas");
    res.calibration = calibrate(box, canvas);
    const CalibrationScale& scale = res.calibration.scale;
    const RegionOfInterest roi = crop_roi(blurred, box);
    res.roi_origin = roi.origin;
    watch.lap("calibrate_crop");

    const auto candidates = segment_grains(roi, config.adaptive);
    res.segmented = candidates.size();
    watch.lap("segment");
    const auto filtered = apply_policy(candidates, scale, config.policy);
    res.after_filter = filtered.size();
    watch.lap("filter");
    const auto grains = remove_subcontours(filtered);
    res.after_removal = grains.size();
    watch.lap("remove_subcontours");

    RunReport& report = res.report;
    report.image_path = std::move(image_path);
    report.canvas = canvas;
    report.pixels_per_mm = scale.pixels_per_mm;
    report.canvas_box_px = box;
    report.policy = std::string(policy_name(config.policy.kind));
    report.method = std::string(method_name(config.method));

    if (res.calibration.aspect_mismatch) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "canvas box %dx%d px gives %.4f vs %.4f px/mm (%.1f%% apart); using the mean",
                      box.w, box.h, res.calibration.ratio_x, res.calibration.ratio_y,
                      100.0 * res.calibration.mismatch);
        report.diagnostics.push_back({"AspectMismatch", buf, -1});
    }
    report.diagnostics.push_back(
        {"Policy",
         "policy=" + report.policy + " method=" + report.method + " candidates=" +
             std::to_string(res.segmented) + " filtered=" + std::to_string(res.after_filter) +
             " after_subcontours=" + std::to_string(res.after_removal),
         -1});

    int next_id = 1;
    for (const auto& cand : grains) {
        try {
            GrainMeasurement m = config.method == MeasureMethod::ellipse
                                     ? measure_ellipse(cand, scale, roi.origin)
                                     : measure_bbox(cand, scale, roi.origin);
            m.id = next_id++;
            report.grains.push_back(m);
        } catch (const DegenerateContour& e) {
            report.diagnostics.push_back(
                {"DegenerateContour", std::string("detected but unmeasured: ") + e.what(),
                 cand.contour.id});
        }
    }
    watch.lap("measure");
    return res;
}

}  // namespace grainsight
