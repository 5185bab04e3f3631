#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "grainsight/canvas.hpp"
#include "grainsight/image.hpp"
#include "grainsight/measure.hpp"

namespace grainsight {

/// SplitMix64 (Steele, Lea, Flood 2014). State advances by 0x9E3779B97F4A7C15;
/// output is the state mixed by (x ^ x>>30) * 0xBF58476D1CE4E5B9,
/// (x ^ x>>27) * 0x94D049BB133111EB, x ^ x>>31. Doubles use the top 53 bits.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

enum class GrainShape { ellipse, capsule };

struct SceneSpec {
    std::uint64_t seed = 42;
    CanvasSpec canvas{200.0, 150.0};
    double pixels_per_mm = 10.0;
    int margin_px = -1;  ///< surround width; negative means 8 mm worth of pixels
    int grain_count = 12;
    Interval length_mm{8.3, 9.4};
    Interval width_mm{1.9, 2.1};
    Interval angle_deg{0.0, 180.0};
    std::uint8_t background_gray = 190;
    std::uint8_t canvas_gray = 25;
    std::uint8_t grain_gray = 215;
    /// Linear left-to-right ramp from -gradient to +gradient, clamped.
    int lighting_gradient = 0;
    /// Per-grain probability of a dark closed fissure that splits off an
    /// inner island (a nested sub-contour after thresholding).
    double contrast_noise = 0.0;
    GrainShape shape = GrainShape::ellipse;
    int speck_count = 0;  ///< small bright noise discs, not grains
    Interval speck_diameter_mm{0.3, 0.8};
    double canvas_rotation_deg = 0.0;
    double min_gap_mm = 1.0;  ///< clearance between objects and to the crop boundary
};

void validate(const SceneSpec& spec);

struct TruthGrain {
    PointD center_px;
    double semi_major_px = 0.0;
    double semi_minor_px = 0.0;
    double angle_deg = 0.0;
    double length_mm = 0.0;  ///< 2 * semi_major_px / pixels_per_mm
    double width_mm = 0.0;
    bool fissured = false;
};

struct TruthSpeck {
    PointD center_px;
    double radius_px = 0.0;
};

struct GroundTruth {
    double pixels_per_mm = 0.0;
    CanvasSpec canvas;
    int image_width = 0;
    int image_height = 0;
    BoundingBox canvas_box_px;
    GrainShape shape = GrainShape::ellipse;
    std::vector<TruthGrain> grains;
    std::vector<TruthSpeck> specks;
};

struct Scene {
    RgbImage image;
    GroundTruth truth;
};

/// Deterministic for a fixed spec. Positions and sizes are drawn in
/// millimeters, so the same seed at two scales is the same physical scene.
/// Rasterization is integer-only past the per-object setup. Throws
/// PlacementOverflow after 10 rejected draws per requested object.
Scene generate_scene(const SceneSpec& spec);

/// Solid ellipse mask centred in an image of the given size, rasterized the
/// same way as scene grains (pixel centres inside the ellipse).
BinaryImage rasterize_ellipse(int width, int height, PointD center, double semi_major,
                              double semi_minor, double angle_deg);

std::string truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(std::string_view text);

struct MatchedPair {
    int truth_index = 0;
    int pred_index = 0;
    double distance_px = 0.0;
    double length_error_mm = 0.0;  ///< predicted - truth
    double width_error_mm = 0.0;
};

struct EvalReport {
    std::size_t truth_count = 0;
    std::size_t predicted_count = 0;
    std::size_t matched = 0;
    double detection_rate = 0.0;
    std::size_t false_positives = 0;
    double length_mae_mm = 0.0;
    double width_mae_mm = 0.0;
    /// Matched grains with both length and width within `tolerance` of truth.
    std::size_t within_tolerance = 0;
    double tolerance = 0.10;
    std::vector<MatchedPair> per_grain;
};

/// Greedy nearest-centroid matching: candidate pairs within 0.5 x the truth
/// grain length (in pixels at `scale`) are accepted in order of increasing
/// distance. Unmatched truths are misses, unmatched predictions false positives.
EvalReport evaluate(const std::vector<GrainMeasurement>& pred, const GroundTruth& truth,
                    const CalibrationScale& scale, double tolerance = 0.10);

/// Sums counts and recomputes rates/MAE over several scenes.
EvalReport merge(const std::vector<EvalReport>& reports);

std::string eval_to_json(const EvalReport& report);

}  // namespace grainsight
