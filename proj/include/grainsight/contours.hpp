#pragma once

#include <span>
#include <vector>

#include "grainsight/image.hpp"

namespace grainsight {

enum class ContourKind { outer, hole };

/// Closed boundary trace of foreground pixels. Consecutive points are
/// 8-adjacent and the last point is adjacent to the first. Outer contours run
/// counter-clockwise as displayed (y grows downward), holes clockwise; this
/// makes signed_area() negative for outers and positive for holes.
struct Contour {
    std::vector<PointI> points;
    ContourKind kind = ContourKind::outer;
    int id = 0;
};

struct Polygon {
    std::vector<PointI> vertices;
};

/// Suzuki-Abe border following with 8-connected foreground (4-connected
/// background). One outer contour per component, one hole contour per hole,
/// ordered by the raster position of each border's starting pixel.
std::vector<Contour> extract_contours(const BinaryImage& mask);

BoundingBox bounding_box(std::span<const PointI> points);
inline BoundingBox bounding_box(const Contour& c) { return bounding_box(c.points); }

/// Shoelace sum over the closed polygon, in the x-right/y-down frame.
double signed_area(std::span<const PointI> points);
/// |signed_area|, 0 for fewer than 3 points.
double contour_area(const Contour& c);
/// Closed arc length.
double contour_perimeter(const Contour& c);

/// Ramer-Douglas-Peucker on the closed contour. The two split points are the
/// farthest pair found by two farthest-point sweeps. Inputs with at most four
/// points are returned unchanged.
Polygon approx_polygon(const Contour& c, double epsilon);
bool is_convex(const Polygon& p);

/// inner lies within outer (edges inclusive) and the boxes differ.
bool box_contains(const BoundingBox& outer, const BoundingBox& inner);

/// Pixels enclosed by a closed trace, including the trace itself.
struct FilledRegion {
    BoundingBox box;
    BinaryImage mask;  ///< box.w x box.h, local coordinates
};

FilledRegion fill_contour(std::span<const PointI> points);
inline FilledRegion fill_contour(const Contour& c) { return fill_contour(c.points); }

}  // namespace grainsight
