#include "grainsight/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "json.hpp"

namespace grainsight {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

constexpr int kPosShift = 8;    // positions and lengths in 1/256 px
constexpr int kTrigShift = 16;  // cos/sin in 1/65536
constexpr double kFissureWallMm = 0.25;
constexpr double kFissureRingMm = 0.15;

i64 to_fixed(double v, int shift) { return std::llround(std::ldexp(v, shift)); }
double from_fixed(i64 v, int shift) { return std::ldexp(static_cast<double>(v), -shift); }

// Everything past construction is integer arithmetic.
struct OrientedShape {
    i64 cx, cy;  // Q8
    i64 a, b;    // Q8 semi-axes (for a rectangle: half extents)
    i64 c, s;    // Q16

    OrientedShape(PointD center, double semi_a, double semi_b, double angle_deg)
        : cx(to_fixed(center.x, kPosShift)),
          cy(to_fixed(center.y, kPosShift)),
          a(to_fixed(semi_a, kPosShift)),
          b(to_fixed(semi_b, kPosShift)) {
        const double rad = angle_deg * std::numbers::pi / 180.0;
        c = to_fixed(std::cos(rad), kTrigShift);
        s = to_fixed(std::sin(rad), kTrigShift);
    }

    // Pixel centre in the shape frame, Q24.
    void local(int x, int y, i64& u, i64& v) const {
        const i64 dx = (static_cast<i64>(x) << kPosShift) - cx;
        const i64 dy = (static_cast<i64>(y) << kPosShift) - cy;
        u = dx * c + dy * s;
        v = -dx * s + dy * c;
    }

    // (u/a)^2 + (v/b)^2 <= k^2, with k^2 given in Q32.
    bool in_ellipse(int x, int y, i64 k2_q32 = i64{1} << 32) const {
        i64 u, v;
        local(x, y, u, v);
        const i128 lhs = i128(u) * u * b * b + i128(v) * v * a * a;
        const i128 rhs = i128(a) * a * b * b * k2_q32;
        return lhs <= rhs;
    }

    // Points within b of the central segment of half-length a - b.
    bool in_capsule(int x, int y) const {
        i64 u, v;
        local(x, y, u, v);
        const i64 half = (a - b) << kTrigShift;
        const i64 du = u - std::clamp(u, -half, half);
        const i64 r = b << kTrigShift;
        return i128(du) * du + i128(v) * v <= i128(r) * r;
    }

    bool in_rect(int x, int y) const {
        i64 u, v;
        local(x, y, u, v);
        return (u < 0 ? -u : u) <= (a << kTrigShift) && (v < 0 ? -v : v) <= (b << kTrigShift);
    }
};

// Axis-aligned half extents of a rotated ellipse or capsule.
void half_extents(GrainShape shape, double a, double b, double angle_deg, double& ex,
                  double& ey) {
    const double rad = angle_deg * std::numbers::pi / 180.0;
    const double c = std::abs(std::cos(rad));
    const double s = std::abs(std::sin(rad));
    if (shape == GrainShape::capsule) {
        ex = (a - b) * c + b;
        ey = (a - b) * s + b;
    } else {
        ex = std::sqrt(a * a * c * c + b * b * s * s);
        ey = std::sqrt(a * a * s * s + b * b * c * c);
    }
}

struct PixelWindow {
    int x0, y0, x1, y1;  // inclusive
};

PixelWindow window_around(PointD center, double reach, int width, int height) {
    const int r = static_cast<int>(std::ceil(reach)) + 2;
    const int cx = static_cast<int>(std::lround(center.x));
    const int cy = static_cast<int>(std::lround(center.y));
    return {std::max(0, cx - r), std::max(0, cy - r), std::min(width - 1, cx + r),
            std::min(height - 1, cy + r)};
}

void fill_gray(RgbImage& img, int x, int y, std::uint8_t v) {
    img.at(x, y, 0) = v;
    img.at(x, y, 1) = v;
    img.at(x, y, 2) = v;
}

int ramp_delta(int x, int width, int gradient) {
    if (width <= 1 || gradient == 0) return 0;
    const i64 num = static_cast<i64>(2 * x - (width - 1)) * gradient;
    const i64 den = width - 1;
    const i64 mag = (2 * (num < 0 ? -num : num) + den) / (2 * den);
    return static_cast<int>(num < 0 ? -mag : mag);
}

// Canvas-frame millimetres (origin at the canvas corner) to image pixels.
struct CanvasFrame {
    double origin_x, origin_y;  // continuous edge of the canvas in pixels
    double ppmm;
    double pivot_x, pivot_y;
    double cos_r, sin_r;

    PointD to_px(double x_mm, double y_mm) const {
        const double px = origin_x + x_mm * ppmm - pivot_x;
        const double py = origin_y + y_mm * ppmm - pivot_y;
        return {pivot_x + cos_r * px - sin_r * py, pivot_y + sin_r * px + cos_r * py};
    }
};

double normalize_angle(double deg) {
    double a = std::fmod(deg, 180.0);
    if (a < 0) a += 180.0;
    return a;
}

const char* shape_name(GrainShape s) { return s == GrainShape::capsule ? "capsule" : "ellipse"; }

}  // namespace

void validate(const SceneSpec& spec) {
    validate(spec.canvas);
    if (!(spec.pixels_per_mm > 0.0)) throw InvalidArgument("pixels_per_mm must be positive");
    if (spec.grain_count < 0 || spec.speck_count < 0) {
        throw InvalidArgument("grain and speck counts must be non-negative");
    }
    if (spec.grain_gray <= spec.canvas_gray) {
        throw InvalidArgument("grain_gray must be brighter than canvas_gray");
    }
    if (!(spec.length_mm.lo > 0 && spec.length_mm.lo <= spec.length_mm.hi) ||
        !(spec.width_mm.lo > 0 && spec.width_mm.lo <= spec.width_mm.hi) ||
        spec.width_mm.hi > spec.length_mm.lo) {
        throw InvalidArgument("grain size ranges must be positive with width <= length");
    }
    if (!(spec.speck_diameter_mm.lo > 0 && spec.speck_diameter_mm.lo <= spec.speck_diameter_mm.hi)) {
        throw InvalidArgument("speck diameter range must be positive");
    }
    if (spec.contrast_noise < 0.0 || spec.contrast_noise > 1.0) {
        throw InvalidArgument("contrast_noise is a probability");
    }
    if (spec.min_gap_mm < 0.0) throw InvalidArgument("min_gap_mm must be non-negative");
}

Scene generate_scene(const SceneSpec& spec) {
    validate(spec);
    const double ppmm = spec.pixels_per_mm;
    const int margin =
        spec.margin_px >= 0 ? spec.margin_px : static_cast<int>(std::lround(8.0 * ppmm));
    const int cw = static_cast<int>(std::lround(spec.canvas.width_mm * ppmm));
    const int ch = static_cast<int>(std::lround(spec.canvas.height_mm * ppmm));
    const int width = cw + 2 * margin;
    const int height = ch + 2 * margin;

    Scene scene{RgbImage(width, height, spec.background_gray), {}};
    GroundTruth& truth = scene.truth;
    truth.pixels_per_mm = ppmm;
    truth.canvas = spec.canvas;
    truth.image_width = width;
    truth.image_height = height;
    truth.shape = spec.shape;

    // Canvas: rectangle centred on the pixel grid of an unrotated cw x ch block.
    const CanvasFrame frame{margin - 0.5,
                            margin - 0.5,
                            ppmm,
                            margin - 0.5 + cw / 2.0,
                            margin - 0.5 + ch / 2.0,
                            std::cos(spec.canvas_rotation_deg * std::numbers::pi / 180.0),
                            std::sin(spec.canvas_rotation_deg * std::numbers::pi / 180.0)};
    {
        const OrientedShape rect({frame.pivot_x, frame.pivot_y}, cw / 2.0, ch / 2.0,
                                 spec.canvas_rotation_deg);
        int x0 = width, y0 = height, x1 = -1, y1 = -1;
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                if (!rect.in_rect(x, y)) continue;
                fill_gray(scene.image, x, y, spec.canvas_gray);
                x0 = std::min(x0, x);
                y0 = std::min(y0, y);
                x1 = std::max(x1, x);
                y1 = std::max(y1, y);
            }
        }
        if (x1 < 0) throw InvalidArgument("canvas does not fit in the image");
        truth.canvas_box_px = {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
    }

    // Placement happens in canvas millimetres so it does not depend on ppmm.
    const double roi_x0 = 0.05 * spec.canvas.width_mm;
    const double roi_x1 = 0.95 * spec.canvas.width_mm;
    const double roi_y0 = 0.05 * spec.canvas.height_mm;
    const double roi_y1 = 0.95 * spec.canvas.height_mm;
    const double gap = spec.min_gap_mm;

    struct Placed {
        double x, y, radius;  // canvas mm, bounding circle
    };
    std::vector<Placed> placed;
    auto clear_of_others = [&](double x, double y, double radius) {
        return std::all_of(placed.begin(), placed.end(), [&](const Placed& p) {
            return std::hypot(p.x - x, p.y - y) >= p.radius + radius + gap;
        });
    };

    SplitMix64 rng(spec.seed);
    long budget = 10L * (spec.grain_count + spec.speck_count);
    auto spend = [&]() {
        if (--budget < 0) {
            throw PlacementOverflow("could not place " + std::to_string(spec.grain_count) +
                                    " grains and " + std::to_string(spec.speck_count) +
                                    " specks without touching");
        }
    };

    for (int g = 0; g < spec.grain_count;) {
        spend();
        const double length = rng.uniform(spec.length_mm.lo, spec.length_mm.hi);
        const double wid = rng.uniform(spec.width_mm.lo, spec.width_mm.hi);
        const double angle = rng.uniform(spec.angle_deg.lo, spec.angle_deg.hi);
        const bool fissured = rng.uniform() < spec.contrast_noise;
        const double ux = rng.uniform();
        const double uy = rng.uniform();
        double ex, ey;
        half_extents(spec.shape, length / 2, wid / 2, angle, ex, ey);
        const double lo_x = roi_x0 + ex + gap;
        const double hi_x = roi_x1 - ex - gap;
        const double lo_y = roi_y0 + ey + gap;
        const double hi_y = roi_y1 - ey - gap;
        if (lo_x > hi_x || lo_y > hi_y) continue;
        const double x = lo_x + (hi_x - lo_x) * ux;
        const double y = lo_y + (hi_y - lo_y) * uy;
        if (!clear_of_others(x, y, length / 2)) continue;
        placed.push_back({x, y, length / 2});

        const PointD c = frame.to_px(x, y);
        TruthGrain t;
        t.center_px = {from_fixed(to_fixed(c.x, kPosShift), kPosShift),
                       from_fixed(to_fixed(c.y, kPosShift), kPosShift)};
        t.semi_major_px = from_fixed(to_fixed(length / 2 * ppmm, kPosShift), kPosShift);
        t.semi_minor_px = from_fixed(to_fixed(wid / 2 * ppmm, kPosShift), kPosShift);
        t.angle_deg = normalize_angle(angle + spec.canvas_rotation_deg);
        t.length_mm = 2.0 * t.semi_major_px / ppmm;
        t.width_mm = 2.0 * t.semi_minor_px / ppmm;
        t.fissured = fissured;
        truth.grains.push_back(t);
        ++g;
    }

    for (int k = 0; k < spec.speck_count;) {
        spend();
        const double diameter = rng.uniform(spec.speck_diameter_mm.lo, spec.speck_diameter_mm.hi);
        const double ux = rng.uniform();
        const double uy = rng.uniform();
        const double r = diameter / 2;
        const double lo_x = roi_x0 + r + gap;
        const double hi_x = roi_x1 - r - gap;
        const double lo_y = roi_y0 + r + gap;
        const double hi_y = roi_y1 - r - gap;
        if (lo_x > hi_x || lo_y > hi_y) continue;
        const double x = lo_x + (hi_x - lo_x) * ux;
        const double y = lo_y + (hi_y - lo_y) * uy;
        if (!clear_of_others(x, y, r)) continue;
        placed.push_back({x, y, r});
        const PointD c = frame.to_px(x, y);
        truth.specks.push_back({{from_fixed(to_fixed(c.x, kPosShift), kPosShift),
                                 from_fixed(to_fixed(c.y, kPosShift), kPosShift)},
                                from_fixed(to_fixed(r * ppmm, kPosShift), kPosShift)});
        ++k;
    }

    for (const auto& t : truth.grains) {
        const OrientedShape shape(t.center_px, t.semi_major_px, t.semi_minor_px, t.angle_deg);
        const auto win = window_around(t.center_px, t.semi_major_px, width, height);

        // Dark closed ring between k_in and k_out of the outline.
        const double minor_mm = t.width_mm / 2;
        const double k_out = 1.0 - kFissureWallMm / minor_mm;
        const double k_in = k_out - kFissureRingMm / minor_mm;
        const bool ring = t.fissured && k_in > 0.2;
        const i64 out2 = to_fixed(k_out * k_out, 32);
        const i64 in2 = to_fixed(k_in * k_in, 32);

        for (int y = win.y0; y <= win.y1; ++y) {
            for (int x = win.x0; x <= win.x1; ++x) {
                const bool inside = spec.shape == GrainShape::capsule ? shape.in_capsule(x, y)
                                                                      : shape.in_ellipse(x, y);
                if (!inside) continue;
                const bool dark = ring && shape.in_ellipse(x, y, out2) && !shape.in_ellipse(x, y, in2);
                fill_gray(scene.image, x, y, dark ? spec.canvas_gray : spec.grain_gray);
            }
        }
    }
    for (const auto& s : truth.specks) {
        const OrientedShape disc(s.center_px, s.radius_px, s.radius_px, 0.0);
        const auto win = window_around(s.center_px, s.radius_px, width, height);
        for (int y = win.y0; y <= win.y1; ++y) {
            for (int x = win.x0; x <= win.x1; ++x) {
                if (disc.in_ellipse(x, y)) fill_gray(scene.image, x, y, spec.grain_gray);
            }
        }
    }

    if (spec.lighting_gradient != 0) {
        for (int x = 0; x < width; ++x) {
            const int d = ramp_delta(x, width, spec.lighting_gradient);
            for (int y = 0; y < height; ++y) {
                for (int ch3 = 0; ch3 < 3; ++ch3) {
                    auto& p = scene.image.at(x, y, ch3);
                    p = static_cast<std::uint8_t>(std::clamp(p + d, 0, 255));
                }
            }
        }
    }
    return scene;
}

BinaryImage rasterize_ellipse(int width, int height, PointD center, double semi_major,
                              double semi_minor, double angle_deg) {
    BinaryImage mask(width, height);
    const OrientedShape shape(center, semi_major, semi_minor, angle_deg);
    const auto win = window_around(center, semi_major, width, height);
    for (int y = win.y0; y <= win.y1; ++y) {
        for (int x = win.x0; x <= win.x1; ++x) mask.set(x, y, shape.in_ellipse(x, y));
    }
    return mask;
}

std::string truth_to_json(const GroundTruth& truth) {
    nlohmann::ordered_json j;
    j["pixels_per_mm"] = truth.pixels_per_mm;
    j["canvas_mm"] = {{"width", truth.canvas.width_mm}, {"height", truth.canvas.height_mm}};
    j["image"] = {{"width", truth.image_width}, {"height", truth.image_height}};
    const auto& b = truth.canvas_box_px;
    j["canvas_box_px"] = {{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}};
    j["shape"] = shape_name(truth.shape);
    auto grains = nlohmann::ordered_json::array();
    for (const auto& g : truth.grains) {
        grains.push_back({{"center_x_px", g.center_px.x},
                          {"center_y_px", g.center_px.y},
                          {"semi_major_px", g.semi_major_px},
                          {"semi_minor_px", g.semi_minor_px},
                          {"angle_deg", g.angle_deg},
                          {"length_mm", g.length_mm},
                          {"width_mm", g.width_mm},
                          {"fissured", g.fissured}});
    }
    j["grains"] = std::move(grains);
    auto specks = nlohmann::ordered_json::array();
    for (const auto& s : truth.specks) {
        specks.push_back({{"center_x_px", s.center_px.x},
                          {"center_y_px", s.center_px.y},
                          {"radius_px", s.radius_px}});
    }
    j["specks"] = std::move(specks);
    return j.dump(2) + "\n";
}

GroundTruth truth_from_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        GroundTruth t;
        t.pixels_per_mm = j.at("pixels_per_mm").get<double>();
        t.canvas = {j.at("canvas_mm").at("width").get<double>(),
                    j.at("canvas_mm").at("height").get<double>()};
        t.image_width = j.at("image").at("width").get<int>();
        t.image_height = j.at("image").at("height").get<int>();
        const auto& b = j.at("canvas_box_px");
        t.canvas_box_px = {b.at("x").get<int>(), b.at("y").get<int>(), b.at("w").get<int>(),
                           b.at("h").get<int>()};
        t.shape = j.value("shape", "ellipse") == "capsule" ? GrainShape::capsule
                                                            : GrainShape::ellipse;
        for (const auto& g : j.at("grains")) {
            TruthGrain tg;
            tg.center_px = {g.at("center_x_px").get<double>(), g.at("center_y_px").get<double>()};
            tg.semi_major_px = g.at("semi_major_px").get<double>();
            tg.semi_minor_px = g.at("semi_minor_px").get<double>();
            tg.angle_deg = g.at("angle_deg").get<double>();
            tg.length_mm = g.at("length_mm").get<double>();
            tg.width_mm = g.at("width_mm").get<double>();
            tg.fissured = g.value("fissured", false);
            t.grains.push_back(tg);
        }
        if (j.contains("specks")) {
            for (const auto& s : j.at("specks")) {
                t.specks.push_back({{s.at("center_x_px").get<double>(),
                                     s.at("center_y_px").get<double>()},
                                    s.at("radius_px").get<double>()});
            }
        }
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed ground truth: ") + e.what());
    }
}

EvalReport evaluate(const std::vector<GrainMeasurement>& pred, const GroundTruth& truth,
                    const CalibrationScale& scale, double tolerance) {
    struct Candidate {
        double distance;
        int t;
        int p;
    };
    std::vector<Candidate> pairs;
    for (int t = 0; t < static_cast<int>(truth.grains.size()); ++t) {
        const auto& g = truth.grains[t];
        const double radius = 0.5 * scale.to_px(g.length_mm);
        for (int p = 0; p < static_cast<int>(pred.size()); ++p) {
            const auto& c = pred[p].centroid_full_px;
            const double d = std::hypot(c.x - g.center_px.x, c.y - g.center_px.y);
            if (d <= radius) pairs.push_back({d, t, p});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Candidate& a, const Candidate& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        if (a.t != b.t) return a.t < b.t;
        return a.p < b.p;
    });

    EvalReport r;
    r.tolerance = tolerance;
    r.truth_count = truth.grains.size();
    r.predicted_count = pred.size();
    std::vector<char> t_used(truth.grains.size(), 0);
    std::vector<char> p_used(pred.size(), 0);
    double len_abs = 0.0;
    double wid_abs = 0.0;
    for (const auto& c : pairs) {
        if (t_used[c.t] || p_used[c.p]) continue;
        t_used[c.t] = p_used[c.p] = 1;
        const auto& g = truth.grains[c.t];
        MatchedPair m{c.t, c.p, c.distance, pred[c.p].length_mm - g.length_mm,
                      pred[c.p].width_mm - g.width_mm};
        len_abs += std::abs(m.length_error_mm);
        wid_abs += std::abs(m.width_error_mm);
        if (std::abs(m.length_error_mm) <= tolerance * g.length_mm &&
            std::abs(m.width_error_mm) <= tolerance * g.width_mm) {
            ++r.within_tolerance;
        }
        r.per_grain.push_back(m);
    }
    std::sort(r.per_grain.begin(), r.per_grain.end(),
              [](const MatchedPair& a, const MatchedPair& b) { return a.truth_index < b.truth_index; });
    r.matched = r.per_grain.size();
    r.false_positives = r.predicted_count - r.matched;
    r.detection_rate = r.truth_count ? static_cast<double>(r.matched) / r.truth_count : 1.0;
    if (r.matched) {
        r.length_mae_mm = len_abs / r.matched;
        r.width_mae_mm = wid_abs / r.matched;
    }
    return r;
}

EvalReport merge(const std::vector<EvalReport>& reports) {
    EvalReport out;
    double len_abs = 0.0;
    double wid_abs = 0.0;
    for (const auto& r : reports) {
        out.truth_count += r.truth_count;
        out.predicted_count += r.predicted_count;
        out.matched += r.matched;
        out.false_positives += r.false_positives;
        out.within_tolerance += r.within_tolerance;
        out.tolerance = r.tolerance;
        for (const auto& m : r.per_grain) {
            len_abs += std::abs(m.length_error_mm);
            wid_abs += std::abs(m.width_error_mm);
        }
        out.per_grain.insert(out.per_grain.end(), r.per_grain.begin(), r.per_grain.end());
    }
    out.detection_rate =
        out.truth_count ? static_cast<double>(out.matched) / out.truth_count : 1.0;
    if (out.matched) {
        out.length_mae_mm = len_abs / out.matched;
        out.width_mae_mm = wid_abs / out.matched;
    }
    return out;
}

std::string eval_to_json(const EvalReport& r) {
    nlohmann::ordered_json j;
    j["truth_count"] = r.truth_count;
    j["predicted_count"] = r.predicted_count;
    j["matched"] = r.matched;
    j["detection_rate"] = r.detection_rate;
    j["false_positives"] = r.false_positives;
    j["length_mae_mm"] = r.length_mae_mm;
    j["width_mae_mm"] = r.width_mae_mm;
    j["tolerance"] = r.tolerance;
    j["within_tolerance"] = r.within_tolerance;
    j["within_tolerance_fraction"] =
        r.matched ? static_cast<double>(r.within_tolerance) / r.matched : 0.0;
    auto pairs = nlohmann::ordered_json::array();
    for (const auto& m : r.per_grain) {
        pairs.push_back({{"truth_index", m.truth_index},
                         {"pred_index", m.pred_index},
                         {"distance_px", m.distance_px},
                         {"length_error_mm", m.length_error_mm},
                         {"width_error_mm", m.width_error_mm}});
    }
    j["per_grain"] = std::move(pairs);
    return j.dump(2) + "\n";
}

}  // namespace grainsight
