#pragma once

#include <string_view>
#include <vector>

#include "grainsight/binarize.hpp"
#include "grainsight/canvas.hpp"
#include "grainsight/contours.hpp"

namespace grainsight {

/// Outer contour inside the ROI, sized by its axis-aligned box.
struct GrainCandidate {
    Contour contour;  ///< ROI coordinates
    BoundingBox box;
    int len_px = 1;  ///< max(box.w, box.h)
    int wid_px = 1;  ///< min(box.w, box.h)
};

GrainCandidate make_candidate(Contour contour);

/// Contours with fewer boundary points are dropped before any policy.
inline constexpr std::size_t kMinCandidatePoints = 5;

/// Adaptive threshold, then one candidate per outer contour (holes dropped),
/// in raster order of the contour start.
std::vector<GrainCandidate> segment_grains(const RegionOfInterest& roi,
                                           const AdaptiveParams& params = {});

struct MinMaxBounds {
    double min_len_mm = 4.0;
    double max_len_mm = 15.0;
    double min_wid_mm = 1.0;
    double max_wid_mm = 4.0;
};

struct MedianFactors {
    double lower = 0.5;
    double upper = 1.5;
};

enum class PolicyKind { minmax, median };

std::string_view policy_name(PolicyKind kind) noexcept;
PolicyKind parse_policy(std::string_view name);

struct FiltrationPolicy {
    PolicyKind kind = PolicyKind::minmax;
    MinMaxBounds bounds;
    MedianFactors median;
    /// Multiplies max_wid_mm when testing box widths (a tilted grain's box is
    /// wider than the grain).
    double width_slack = 2.0;
};

void validate(const FiltrationPolicy& policy);

/// Keeps candidates whose box length and width both fall within
/// [lower, upper] times the respective median (even counts: mean of the two
/// middle values). Order is preserved.
std::vector<GrainCandidate> filter_median(const std::vector<GrainCandidate>& cands,
                                          const MedianFactors& factors = {});

/// Keeps candidates whose box length is in [min_len, max_len] mm and box
/// width in [min_wid, max_wid * width_slack] mm. Order is preserved.
std::vector<GrainCandidate> filter_minmax(const std::vector<GrainCandidate>& cands,
                                          const CalibrationScale& scale,
                                          const MinMaxBounds& bounds = {},
                                          double width_slack = 1.0);

std::vector<GrainCandidate> apply_policy(const std::vector<GrainCandidate>& cands,
                                         const CalibrationScale& scale,
                                         const FiltrationPolicy& policy);

/// Drops every candidate whose box is nested in another candidate's box
/// (identical boxes: the lower contour id survives). Greedy over boxes in
/// descending area; the survivors keep their input order.
std::vector<GrainCandidate> remove_subcontours(const std::vector<GrainCandidate>& cands);

}  // namespace grainsight
