#include <cmath>

#include "doctest.h"
#include "grainsight/canvas.hpp"
#include "grainsight/errors.hpp"
#include "grainsight/raster.hpp"
#include "grainsight/synth.hpp"

using namespace grainsight;

namespace {

GrayImage rect_scene(int w, int h, BoundingBox r, std::uint8_t bg = 255, std::uint8_t fg = 0) {
    GrayImage g(w, h, bg);
    for (int y = r.y; y < r.y + r.h; ++y) {
        for (int x = r.x; x < r.x + r.w; ++x) g.at(x, y) = fg;
    }
    return g;
}

void check_near(const BoundingBox& got, const BoundingBox& want, int tol) {
    CHECK(std::abs(got.x - want.x) <= tol);
    CHECK(std::abs(got.y - want.y) <= tol);
    CHECK(std::abs(got.x + got.w - want.x - want.w) <= tol);
    CHECK(std::abs(got.y + got.h - want.y - want.h) <= tol);
}

}  // namespace

TEST_CASE("canvas spec parsing") {
    CHECK(parse_canvas_spec("200x150") == CanvasSpec{200, 150});
    CHECK(parse_canvas_spec("297.5X210") == CanvasSpec{297.5, 210});
    for (const char* bad : {"", "200", "200x", "x150", "0x10", "-5x10", "10x10x10", "axb", "inf x2"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_canvas_spec(bad), InvalidArgument);
    }
}

TEST_CASE("detects a dark rectangle on white") {
    const BoundingBox r{100, 100, 600, 400};
    const auto box = detect_canvas(gaussian_blur_5x5(rect_scene(1000, 800, r)));
    check_near(box, r, 2);
}

TEST_CASE("detects a slightly rotated canvas") {
    SceneSpec spec;
    spec.grain_count = 0;
    spec.pixels_per_mm = 4;
    spec.canvas_rotation_deg = 2.0;
    const Scene s = generate_scene(spec);
    const auto box = detect_canvas(gaussian_blur_5x5(to_grayscale(s.image)));
    check_near(box, s.truth.canvas_box_px, 2);
}

TEST_CASE("detect ignores grains and picks the canvas") {
    SceneSpec spec;
    spec.pixels_per_mm = 5;
    spec.seed = 9;
    const Scene s = generate_scene(spec);
    const auto box = detect_canvas(gaussian_blur_5x5(to_grayscale(s.image)));
    check_near(box, s.truth.canvas_box_px, 1);
}

TEST_CASE("no canvas in blank or round scenes") {
    CHECK_THROWS_AS(detect_canvas(GrayImage(300, 200, 255)), NoCanvasFound);
    GrayImage disc(400, 400, 255);
    for (int y = 0; y < 400; ++y) {
        for (int x = 0; x < 400; ++x) {
            if ((x - 200) * (x - 200) + (y - 200) * (y - 200) < 150 * 150) disc.at(x, y) = 0;
        }
    }
    CHECK_THROWS_AS(detect_canvas(gaussian_blur_5x5(disc)), NoCanvasFound);
    // Too small a share of the image.
    CHECK_THROWS_AS(detect_canvas(rect_scene(1000, 1000, {10, 10, 100, 100})), NoCanvasFound);
}

TEST_CASE("bright canvas mode") {
    const BoundingBox r{50, 40, 300, 200};
    CanvasDetectParams p;
    p.dark_canvas = false;
    const auto box = detect_canvas(rect_scene(400, 300, r, 10, 240), p);
    CHECK(box == r);
}

TEST_CASE("calibration pairs sides by length") {
    auto c = calibrate({0, 0, 1000, 800}, {200, 160});
    CHECK(c.scale.pixels_per_mm == doctest::Approx(5.0));
    CHECK_FALSE(c.aspect_mismatch);
    c = calibrate({0, 0, 1000, 800}, {160, 200});
    CHECK(c.scale.pixels_per_mm == doctest::Approx(5.0));
    c = calibrate({0, 0, 1000, 820}, {200, 160});
    CHECK(c.scale.pixels_per_mm == doctest::Approx(5.0625));
    CHECK(c.mismatch == doctest::Approx(0.025));
    CHECK_FALSE(c.aspect_mismatch);
    c = calibrate({0, 0, 1000, 1000}, {200, 160});
    CHECK(c.aspect_mismatch);
    CHECK(c.scale.to_mm(c.scale.to_px(3.5)) == doctest::Approx(3.5));
    CHECK_THROWS_AS(calibrate({0, 0, 10, 10}, {0, 5}), InvalidArgument);
}

TEST_CASE("roi crops five percent per side") {
    const GrayImage g(1000, 800);
    auto roi = crop_roi(g, {0, 0, 1000, 800});
    CHECK(roi.origin == PointI{50, 40});
    CHECK(roi.image.width() == 900);
    CHECK(roi.image.height() == 720);
    roi = crop_roi(g, {100, 100, 600, 400});
    CHECK(roi.origin == PointI{130, 120});
    CHECK(roi.image.width() == 540);
    CHECK(roi.image.height() == 360);
    CHECK_THROWS_AS(crop_roi(g, {0, 0, 12, 12}), DegenerateRoi);
    CHECK_NOTHROW(crop_roi(g, {0, 0, 14, 14}));
}
