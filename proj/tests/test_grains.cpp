#include <algorithm>

#include "doctest.h"
#include "grainsight/errors.hpp"
#include "grainsight/grains.hpp"
#include "grainsight/raster.hpp"
#include "support/oracles.hpp"

using namespace grainsight;

namespace {

std::vector<GrainCandidate> sized(const std::vector<std::pair<int, int>>& lw) {
    std::vector<GrainCandidate> out;
    int x = 0;
    for (std::size_t i = 0; i < lw.size(); ++i) {
        out.push_back(oracle::box_candidate({x, 0, lw[i].first, lw[i].second}, static_cast<int>(i)));
        x += lw[i].first + 2;
    }
    return out;
}

std::vector<int> lengths(const std::vector<GrainCandidate>& cs) {
    std::vector<int> out;
    for (const auto& c : cs) out.push_back(c.len_px);
    return out;
}

CalibrationScale scale10() { return CalibrationScale{10.0, {}}; }

}  // namespace

TEST_CASE("candidate sizing uses the box") {
    const auto c = oracle::box_candidate({5, 5, 4, 9}, 3);
    CHECK(c.len_px == 9);
    CHECK(c.wid_px == 4);
    CHECK(c.contour.id == 3);
}

TEST_CASE("segmentation of a synthetic roi") {
    SceneSpec spec;
    spec.pixels_per_mm = 8;
    spec.seed = 42;
    const Scene s = generate_scene(spec);
    const GrayImage blurred = gaussian_blur_5x5(to_grayscale(s.image));
    const auto roi = crop_roi(blurred, s.truth.canvas_box_px);
    CHECK(segment_grains(roi).size() == 12);

    RegionOfInterest dark{{0, 0}, GrayImage(200, 100, 25)};
    CHECK(segment_grains(dark).empty());
}

TEST_CASE("median filter keeps majority-sized candidates") {
    const auto cands = sized({{90, 20}, {92, 21}, {94, 20}, {95, 19}, {93, 20}, {8, 5}, {9, 4}});
    CHECK(lengths(filter_median(cands)) == std::vector<int>{90, 92, 94, 95, 93});

    const auto same = sized({{50, 10}, {50, 10}, {50, 10}});
    CHECK(filter_median(same).size() == 3);
    CHECK(filter_median({}).empty());
}

TEST_CASE("median filter fails when noise is the majority") {
    const auto cands = sized({{8, 3}, {9, 3}, {10, 4}, {11, 4}, {92, 20}});
    const auto kept = filter_median(cands);
    CHECK(lengths(kept) == std::vector<int>{8, 9, 10, 11});
}

TEST_CASE("median of an even count is the mean of the middle pair") {
    // Lengths 10, 20, 30, 40: median 25, band [12.5, 37.5].
    const auto cands = sized({{10, 5}, {20, 5}, {30, 5}, {40, 5}});
    CHECK(lengths(filter_median(cands)) == std::vector<int>{20, 30});
}

TEST_CASE("minmax filter in millimeters") {
    const auto cands = sized({{92, 20}, {30, 5}, {200, 50}, {40, 10}, {150, 40}, {151, 40}});
    CHECK(lengths(filter_minmax(cands, scale10())) == std::vector<int>{92, 40, 150});
    // Width slack only widens the width band.
    const auto wide = sized({{92, 60}, {92, 81}});
    CHECK(filter_minmax(wide, scale10()).empty());
    CHECK(filter_minmax(wide, scale10(), {}, 2.0).size() == 1);
}

TEST_CASE("policy dispatch and validation") {
    const auto cands = sized({{92, 20}, {90, 21}, {95, 20}, {30, 5}});
    FiltrationPolicy p;
    CHECK(apply_policy(cands, scale10(), p).size() == 3);
    p.kind = PolicyKind::median;
    CHECK(apply_policy(cands, scale10(), p).size() == 3);
    p.median.lower = 0.99;
    CHECK(apply_policy(cands, scale10(), p).size() == 2);
    CHECK(parse_policy("median") == PolicyKind::median);
    CHECK(policy_name(PolicyKind::minmax) == "minmax");
    CHECK_THROWS_AS(parse_policy("mode"), InvalidArgument);
    FiltrationPolicy bad;
    bad.bounds.min_len_mm = 20;
    CHECK_THROWS_AS(validate(bad), InvalidArgument);
    bad = {};
    bad.median.lower = 2.0;
    CHECK_THROWS_AS(validate(bad), InvalidArgument);
    bad = {};
    bad.width_slack = 0.5;
    CHECK_THROWS_AS(validate(bad), InvalidArgument);
}

TEST_CASE("sub-contour removal on fixed layouts") {
    std::vector<GrainCandidate> two{oracle::box_candidate({10, 10, 50, 20}, 0),
                                    oracle::box_candidate({15, 12, 10, 5}, 1)};
    auto kept = remove_subcontours(two);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].contour.id == 0);

    std::vector<GrainCandidate> chain{oracle::box_candidate({4, 4, 5, 5}, 0),
                                      oracle::box_candidate({0, 0, 20, 20}, 1),
                                      oracle::box_candidate({2, 2, 10, 10}, 2)};
    kept = remove_subcontours(chain);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].contour.id == 1);

    std::vector<GrainCandidate> apart{oracle::box_candidate({0, 0, 5, 5}, 0),
                                      oracle::box_candidate({10, 0, 5, 5}, 1),
                                      oracle::box_candidate({3, 3, 5, 5}, 2)};
    CHECK(remove_subcontours(apart).size() == 3);

    std::vector<GrainCandidate> twins{oracle::box_candidate({0, 0, 5, 5}, 4),
                                      oracle::box_candidate({0, 0, 5, 5}, 2)};
    kept = remove_subcontours(twins);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].contour.id == 2);
}

TEST_CASE("sub-contour removal matches the pairwise oracle") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<GrainCandidate> cands;
        const int n = static_cast<int>(rng.next() % 15);
        for (int i = 0; i < n; ++i) {
            BoundingBox b{static_cast<int>(rng.next() % 30), static_cast<int>(rng.next() % 30),
                          1 + static_cast<int>(rng.next() % 25), 1 + static_cast<int>(rng.next() % 25)};
            if (i > 0 && rng.next() % 3 == 0) {
                // Nest inside (or duplicate) an earlier box.
                const auto& p = cands[rng.next() % cands.size()].box;
                b.w = 1 + static_cast<int>(rng.next() % p.w);
                b.h = 1 + static_cast<int>(rng.next() % p.h);
                b.x = p.x + static_cast<int>(rng.next() % (p.w - b.w + 1));
                b.y = p.y + static_cast<int>(rng.next() % (p.h - b.h + 1));
            }
            cands.push_back(oracle::box_candidate(b, i));
        }
        std::vector<int> got;
        for (const auto& c : remove_subcontours(cands)) got.push_back(c.contour.id);
        REQUIRE(got == oracle::containment_keep(cands));
    }
}
