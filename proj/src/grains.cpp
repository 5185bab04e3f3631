#include "grainsight/grains.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace grainsight {

namespace {

double median_of(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

}  // namespace

GrainCandidate make_candidate(Contour contour) {
    GrainCandidate c;
    c.box = bounding_box(contour);
    c.len_px = std::max(c.box.w, c.box.h);
    c.wid_px = std::min(c.box.w, c.box.h);
    c.contour = std::move(contour);
    return c;
}

std::vector<GrainCandidate> segment_grains(const RegionOfInterest& roi,
                                           const AdaptiveParams& params) {
    const BinaryImage mask = adaptive_threshold(roi.image, params);
    std::vector<GrainCandidate> out;
    for (auto& c : extract_contours(mask)) {
        if (c.kind != ContourKind::outer || c.points.size() < kMinCandidatePoints) continue;
        out.push_back(make_candidate(std::move(c)));
    }
    return out;
}

std::string_view policy_name(PolicyKind kind) noexcept {
    return kind == PolicyKind::minmax ? "minmax" : "median";
}

PolicyKind parse_policy(std::string_view name) {
    if (name == "minmax") return PolicyKind::minmax;
    if (name == "median") return PolicyKind::median;
    throw InvalidArgument("unknown filtration policy '" + std::string(name) +
                          "' (expected minmax or median)");
}

void validate(const FiltrationPolicy& policy) {
    const auto& b = policy.bounds;
    if (!(b.min_len_mm < b.max_len_mm) || !(b.min_wid_mm < b.max_wid_mm) || b.min_len_mm < 0 ||
        b.min_wid_mm < 0) {
        throw InvalidArgument("min/max grain bounds must satisfy 0 <= min < max");
    }
    const auto& m = policy.median;
    if (!(m.lower > 0.0 && m.lower < 1.0 && m.upper > 1.0)) {
        throw InvalidArgument("median factors must satisfy 0 < lower < 1 < upper");
    }
    if (!(policy.width_slack >= 1.0)) throw InvalidArgument("width slack must be >= 1");
}

std::vector<GrainCandidate> filter_median(const std::vector<GrainCandidate>& cands,
                                          const MedianFactors& factors) {
    if (cands.empty()) return {};
    std::vector<int> lens;
    std::vector<int> wids;
    for (const auto& c : cands) {
        lens.push_back(c.len_px);
        wids.push_back(c.wid_px);
    }
    const double ml = median_of(std::move(lens));
    const double mw = median_of(std::move(wids));
    std::vector<GrainCandidate> out;
    for (const auto& c : cands) {
        if (within(c.len_px, factors.lower * ml, factors.upper * ml) &&
            within(c.wid_px, factors.lower * mw, factors.upper * mw)) {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<GrainCandidate> filter_minmax(const std::vector<GrainCandidate>& cands,
                                          const CalibrationScale& scale,
                                          const MinMaxBounds& bounds, double width_slack) {
    std::vector<GrainCandidate> out;
    for (const auto& c : cands) {
        const double len = scale.to_mm(c.len_px);
        const double wid = scale.to_mm(c.wid_px);
        if (within(len, bounds.min_len_mm, bounds.max_len_mm) &&
            within(wid, bounds.min_wid_mm, bounds.max_wid_mm * width_slack)) {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<GrainCandidate> apply_policy(const std::vector<GrainCandidate>& cands,
                                         const CalibrationScale& scale,
                                         const FiltrationPolicy& policy) {
    validate(policy);
    if (policy.kind == PolicyKind::median) return filter_median(cands, policy.median);
    return filter_minmax(cands, scale, policy.bounds, policy.width_slack);
}

std::vector<GrainCandidate> remove_subcontours(const std::vector<GrainCandidate>& cands) {
    std::vector<std::size_t> order(cands.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (cands[a].box.area() != cands[b].box.area()) {
            return cands[a].box.area() > cands[b].box.area();
        }
        return cands[a].contour.id < cands[b].contour.id;
    });

    std::vector<char> keep(cands.size(), 0);
    std::vector<std::size_t> kept;
    for (auto i : order) {
        const auto& box = cands[i].box;
        const bool nested = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
            return cands[k].box == box || box_contains(cands[k].box, box);
        });
        if (!nested) {
            keep[i] = 1;
            kept.push_back(i);
        }
    }
    std::vector<GrainCandidate> out;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (keep[i]) out.push_back(cands[i]);
    }
    return out;
}

}  // namespace grainsight
