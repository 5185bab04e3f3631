#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "grainsight/contours.hpp"
#include "grainsight/errors.hpp"
#include "support/oracles.hpp"

using namespace grainsight;

namespace {

BinaryImage from_rows(const std::vector<std::string>& rows) {
    BinaryImage m(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) m.set(x, y, rows[y][x] == '#');
    }
    return m;
}

bool adjacent8(const PointI& a, const PointI& b) {
    return std::abs(a.x - b.x) <= 1 && std::abs(a.y - b.y) <= 1 && !(a == b);
}

}  // namespace

TEST_CASE("single pixel and empty masks") {
    CHECK(extract_contours(BinaryImage(4, 4)).empty());
    BinaryImage m(3, 3);
    m.set(1, 1, true);
    const auto cs = extract_contours(m);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].points.size() == 1);
    CHECK(cs[0].points[0] == PointI{1, 1});
    CHECK(cs[0].kind == ContourKind::outer);
}

TEST_CASE("ring has one outer and one hole") {
    const auto m = from_rows({
        ".....",
        ".###.",
        ".#.#.",
        ".###.",
        ".....",
    });
    const auto cs = extract_contours(m);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].kind == ContourKind::outer);
    CHECK(cs[1].kind == ContourKind::hole);
    CHECK(cs[0].points.size() == 8);
    CHECK(signed_area(cs[0].points) < 0);
    CHECK(signed_area(cs[1].points) > 0);
    CHECK(bounding_box(cs[0]) == BoundingBox{1, 1, 3, 3});
    CHECK(contour_area(cs[0]) == 4.0);
    CHECK(contour_perimeter(cs[0]) == 8.0);
}

TEST_CASE("diagonal contact joins components") {
    const auto m = from_rows({
        "#..",
        ".#.",
        "..#",
    });
    const auto cs = extract_contours(m);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].kind == ContourKind::outer);
}

TEST_CASE("mask touching the image border") {
    const BinaryImage full(6, 4, std::vector<std::uint8_t>(24, 1));
    const auto cs = extract_contours(full);
    REQUIRE(cs.size() == 1);
    CHECK(bounding_box(cs[0]) == BoundingBox{0, 0, 6, 4});
    CHECK(cs[0].points.size() == 16);
}

TEST_CASE("contours are closed 8-paths with canonical orientation") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const int w = 2 + static_cast<int>(rng.next() % 30);
        const int h = 2 + static_cast<int>(rng.next() % 30);
        const auto m = oracle::random_blobs(rng, w, h);
        for (const auto& c : extract_contours(m)) {
            for (const auto& p : c.points) REQUIRE(m.test(p.x, p.y));
            if (c.points.size() < 2) continue;
            for (std::size_t i = 0; i < c.points.size(); ++i) {
                REQUIRE(adjacent8(c.points[i], c.points[(i + 1) % c.points.size()]));
            }
            const double a = signed_area(c.points);
            if (c.kind == ContourKind::outer) {
                CHECK(a <= 0);
            } else {
                CHECK(a >= 0);
            }
        }
    }
}

TEST_CASE("outer count equals component count and fills reproduce the mask") {
    SplitMix64 rng(606);
    for (int trial = 0; trial < 150; ++trial) {
        const int w = 1 + static_cast<int>(rng.next() % 40);
        const int h = 1 + static_cast<int>(rng.next() % 40);
        const auto m = oracle::random_blobs(rng, w, h);
        const auto cs = extract_contours(m);
        int outers = 0;
        for (const auto& c : cs) outers += c.kind == ContourKind::outer;
        REQUIRE(outers == oracle::count_components(m));
        REQUIRE(oracle::reconstruct(cs, w, h) == m);
    }
}

TEST_CASE("fill_contour of a rectangle trace") {
    const auto c = oracle::box_candidate({2, 3, 5, 4}, 0).contour;
    const auto r = fill_contour(c);
    CHECK(r.box == BoundingBox{2, 3, 5, 4});
    CHECK(r.mask.count() == 20);
}

TEST_CASE("polygon approximation of a rectangle") {
    const auto c = oracle::box_candidate({0, 0, 40, 20}, 0).contour;
    const auto p = approx_polygon(c, 0.02 * contour_perimeter(c));
    REQUIRE(p.vertices.size() == 4);
    CHECK(is_convex(p));
    CHECK_THROWS_AS(approx_polygon(c, 0.0), InvalidArgument);
}

TEST_CASE("polygon approximation keeps tiny inputs") {
    Contour c;
    c.points = {{0, 0}, {1, 0}, {1, 1}};
    CHECK(approx_polygon(c, 5.0).vertices.size() == 3);
    c.points = {{2, 2}, {2, 2}, {2, 2}, {2, 2}, {2, 2}};
    CHECK(approx_polygon(c, 1.0).vertices.size() == 1);
}

TEST_CASE("polygon approximation of a disc is not a quadrilateral") {
    BinaryImage m(60, 60);
    for (int y = 0; y < 60; ++y) {
        for (int x = 0; x < 60; ++x) m.set(x, y, (x - 30) * (x - 30) + (y - 30) * (y - 30) < 400);
    }
    const auto cs = extract_contours(m);
    REQUIRE(cs.size() == 1);
    const auto p = approx_polygon(cs[0], 0.02 * contour_perimeter(cs[0]));
    CHECK(p.vertices.size() > 4);
}

TEST_CASE("convexity test") {
    CHECK(is_convex({{{0, 0}, {4, 0}, {4, 4}, {0, 4}}}));
    CHECK_FALSE(is_convex({{{0, 0}, {4, 0}, {1, 1}, {0, 4}}}));
    CHECK_FALSE(is_convex({{{0, 0}, {2, 0}, {4, 0}, {0, 4}}}));  // collinear
    CHECK_FALSE(is_convex({{{0, 0}, {1, 1}}}));
}

TEST_CASE("box containment") {
    const BoundingBox outer{0, 0, 10, 10};
    CHECK(box_contains(outer, {0, 0, 10, 5}));
    CHECK(box_contains(outer, {3, 3, 2, 2}));
    CHECK_FALSE(box_contains(outer, outer));
    CHECK_FALSE(box_contains(outer, {5, 5, 6, 2}));
    CHECK_FALSE(box_contains({3, 3, 2, 2}, outer));
}
