#include <cmath>

#include "doctest.h"
#include "grainsight/errors.hpp"
#include "grainsight/synth.hpp"

using namespace grainsight;

TEST_CASE("splitmix64 reference values") {
    // Published outputs for seed 1234567.
    SplitMix64 r(1234567);
    CHECK(r.next() == 6457827717110365317ULL);
    CHECK(r.next() == 3203168211198807973ULL);
    CHECK(r.next() == 9817491932198370423ULL);
    SplitMix64 u(9);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.uniform();
        REQUIRE(v >= 0.0);
        REQUIRE(v < 1.0);
    }
}

TEST_CASE("default scene matches its spec") {
    const Scene s = generate_scene({});
    const auto& t = s.truth;
    CHECK(t.grains.size() == 12);
    CHECK(t.pixels_per_mm == 10.0);
    CHECK(t.canvas_box_px == BoundingBox{80, 80, 2000, 1500});
    CHECK(s.image.width() == 2160);
    CHECK(s.image.height() == 1660);
    for (const auto& g : t.grains) {
        CHECK(g.length_mm >= 8.3 - 0.01);
        CHECK(g.length_mm <= 9.4 + 0.01);
        CHECK(g.width_mm >= 1.9 - 0.01);
        CHECK(g.width_mm <= 2.1 + 0.01);
        CHECK(g.length_mm == doctest::Approx(2 * g.semi_major_px / 10.0));
        CHECK_FALSE(g.fissured);
    }
    // Surround, canvas and grain grays at a few known spots.
    CHECK(s.image.at(5, 5, 0) == 190);
    CHECK(s.image.at(85, 85, 1) == 25);
    const auto& g0 = t.grains[0];
    CHECK(s.image.at(static_cast<int>(g0.center_px.x), static_cast<int>(g0.center_px.y), 2) == 215);
}

TEST_CASE("scenes are deterministic and seed-dependent") {
    SceneSpec spec;
    spec.pixels_per_mm = 4;
    const Scene a = generate_scene(spec);
    const Scene b = generate_scene(spec);
    CHECK(a.image == b.image);
    spec.seed = 43;
    CHECK_FALSE(generate_scene(spec).image == a.image);
}

TEST_CASE("doubling the scale doubles pixel truth only") {
    SceneSpec spec;
    spec.pixels_per_mm = 6;
    const auto a = generate_scene(spec).truth;
    spec.pixels_per_mm = 12;
    const auto b = generate_scene(spec).truth;
    REQUIRE(a.grains.size() == b.grains.size());
    for (std::size_t i = 0; i < a.grains.size(); ++i) {
        CHECK(b.grains[i].length_mm == doctest::Approx(a.grains[i].length_mm).epsilon(1e-3));
        CHECK(b.grains[i].width_mm == doctest::Approx(a.grains[i].width_mm).epsilon(2e-3));
        CHECK(b.grains[i].semi_major_px == doctest::Approx(2 * a.grains[i].semi_major_px).epsilon(1e-3));
    }
}

TEST_CASE("grains do not overlap and stay inside the roi") {
    SceneSpec spec;
    spec.grain_count = 40;
    spec.pixels_per_mm = 4;
    spec.speck_count = 10;
    const auto t = generate_scene(spec).truth;
    const auto& box = t.canvas_box_px;
    for (std::size_t i = 0; i < t.grains.size(); ++i) {
        const auto& gi = t.grains[i];
        CHECK(gi.center_px.x - gi.semi_major_px > box.x + 0.05 * box.w);
        CHECK(gi.center_px.x + gi.semi_major_px < box.x + 0.95 * box.w);
        for (std::size_t j = i + 1; j < t.grains.size(); ++j) {
            const auto& gj = t.grains[j];
            const double d = std::hypot(gi.center_px.x - gj.center_px.x, gi.center_px.y - gj.center_px.y);
            CHECK(d > gi.semi_major_px + gj.semi_major_px);
        }
    }
    CHECK(t.specks.size() == 10);
}

TEST_CASE("empty and impossible scenes") {
    SceneSpec spec;
    spec.grain_count = 0;
    spec.pixels_per_mm = 2;
    const Scene s = generate_scene(spec);
    CHECK(s.truth.grains.empty());
    spec.grain_count = 2000;
    CHECK_THROWS_AS(generate_scene(spec), PlacementOverflow);
    spec = {};
    spec.pixels_per_mm = 0;
    CHECK_THROWS_AS(generate_scene(spec), InvalidArgument);
    spec = {};
    spec.grain_gray = 10;
    CHECK_THROWS_AS(generate_scene(spec), InvalidArgument);
}

TEST_CASE("lighting ramp spans the image") {
    SceneSpec spec;
    spec.grain_count = 0;
    spec.pixels_per_mm = 2;
    spec.lighting_gradient = 20;
    const Scene s = generate_scene(spec);
    CHECK(s.image.at(0, 0, 0) == 170);
    CHECK(s.image.at(s.image.width() - 1, 0, 0) == 210);
}

TEST_CASE("fissured grains carry a dark ring") {
    SceneSpec spec;
    spec.pixels_per_mm = 16;
    spec.contrast_noise = 1.0;
    spec.grain_count = 4;
    const Scene s = generate_scene(spec);
    for (const auto& g : s.truth.grains) {
        CHECK(g.fissured);
        // Center stays bright, a point just inside the rim along the major
        // axis is covered by the ring.
        CHECK(s.image.at(static_cast<int>(std::lround(g.center_px.x)),
                         static_cast<int>(std::lround(g.center_px.y)), 0) == 215);
    }
}

TEST_CASE("rasterized ellipse area") {
    const auto m = rasterize_ellipse(200, 200, {100, 100}, 60, 20, 33);
    const double area = std::acos(-1.0) * 60 * 20;
    CHECK(static_cast<double>(m.count()) == doctest::Approx(area).epsilon(0.01));
}

TEST_CASE("truth json round-trip") {
    SceneSpec spec;
    spec.pixels_per_mm = 4;
    spec.speck_count = 3;
    const auto t = generate_scene(spec).truth;
    const auto back = truth_from_json(truth_to_json(t));
    REQUIRE(back.grains.size() == t.grains.size());
    CHECK(back.canvas_box_px == t.canvas_box_px);
    CHECK(back.grains[3].angle_deg == t.grains[3].angle_deg);
    CHECK(back.specks.size() == 3);
    CHECK_THROWS(truth_from_json("{"));
}

namespace {

GroundTruth truth_of(int n) {
    GroundTruth t;
    t.pixels_per_mm = 10;
    for (int i = 0; i < n; ++i) {
        TruthGrain g;
        g.center_px = {100.0 + 200 * i, 100.0};
        g.semi_major_px = 45;
        g.semi_minor_px = 10;
        g.length_mm = 9.0;
        g.width_mm = 2.0;
        t.grains.push_back(g);
    }
    return t;
}

std::vector<GrainMeasurement> pred_of(const GroundTruth& t) {
    std::vector<GrainMeasurement> out;
    for (const auto& g : t.grains) {
        GrainMeasurement m;
        m.centroid_full_px = g.center_px;
        m.length_mm = g.length_mm;
        m.width_mm = g.width_mm;
        out.push_back(m);
    }
    return out;
}

}  // namespace

TEST_CASE("evaluation counting") {
    const CalibrationScale s{10.0, {}};
    const auto t = truth_of(12);
    auto r = evaluate(pred_of(t), t, s);
    CHECK(r.detection_rate == 1.0);
    CHECK(r.length_mae_mm == 0.0);
    CHECK(r.within_tolerance == 12);

    auto pred = pred_of(t);
    pred.pop_back();
    r = evaluate(pred, t, s);
    CHECK(r.detection_rate == doctest::Approx(11.0 / 12.0));

    pred = pred_of(t);
    pred.push_back(pred[3]);
    pred.back().centroid_full_px.x += 2;
    r = evaluate(pred, t, s);
    CHECK(r.matched == 12);
    CHECK(r.false_positives == 1);

    pred = pred_of(t);
    pred[0].centroid_full_px.x += 46;  // beyond half a length (45 px)
    pred[1].length_mm = 10.0;
    r = evaluate(pred, t, s);
    CHECK(r.matched == 11);
    CHECK(r.false_positives == 1);
    CHECK(r.within_tolerance == 10);
    CHECK(r.length_mae_mm == doctest::Approx(1.0 / 11.0));

    const auto m = merge({r, evaluate(pred_of(t), t, s)});
    CHECK(m.truth_count == 24);
    CHECK(m.matched == 23);
    CHECK(m.length_mae_mm == doctest::Approx(1.0 / 23.0));
}

TEST_CASE("matching prefers the nearest pair") {
    const CalibrationScale s{10.0, {}};
    auto t = truth_of(2);
    t.grains[1].center_px = {130.0, 100.0};
    std::vector<GrainMeasurement> pred(2);
    pred[0].centroid_full_px = {125.0, 100.0};
    pred[1].centroid_full_px = {95.0, 100.0};
    const auto r = evaluate(pred, t, s);
    REQUIRE(r.per_grain.size() == 2);
    for (const auto& p : r.per_grain) {
        if (p.truth_index == 1) CHECK(p.pred_index == 0);
        if (p.truth_index == 0) CHECK(p.pred_index == 1);
    }
}
