#include "grainsight/contours.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

namespace grainsight {

namespace {

// Clockwise as displayed: E, SE, S, SW, W, NW, N, NE.
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

int direction(int dx, int dy) {
    for (int d = 0; d < 8; ++d) {
        if (kDx[d] == dx && kDy[d] == dy) return d;
    }
    return -1;
}

/// Label plane with a one-pixel zero frame around the mask.
class BorderPlane {
public:
    explicit BorderPlane(const BinaryImage& mask)
        : w_(mask.width() + 2), h_(mask.height() + 2), f_(static_cast<std::size_t>(w_) * h_, 0) {
        for (int y = 0; y < mask.height(); ++y) {
            const auto src = mask.row(y);
            std::int32_t* dst = f_.data() + static_cast<std::size_t>(y + 1) * w_ + 1;
            for (int x = 0; x < mask.width(); ++x) dst[x] = src[x] ? 1 : 0;
        }
    }

    int width() const { return w_; }
    int height() const { return h_; }
    std::int32_t& at(int x, int y) { return f_[static_cast<std::size_t>(y) * w_ + x]; }

    // Follows one border starting at (sx, sy), whose known zero neighbour is
    // (fx, fy). Points are returned in padded coordinates.
    std::vector<PointI> follow(int sx, int sy, int fx, int fy, std::int32_t nbd) {
        std::vector<PointI> pts;
        const int d0 = direction(fx - sx, fy - sy);
        int first = -1;
        for (int k = 0; k < 8; ++k) {
            const int d = (d0 + k) & 7;
            if (at(sx + kDx[d], sy + kDy[d]) != 0) {
                first = d;
                break;
            }
        }
        if (first < 0) {
            at(sx, sy) = -nbd;
            pts.push_back({sx, sy});
            return pts;
        }

        const PointI start{sx, sy};
        const PointI p1{sx + kDx[first], sy + kDy[first]};
        PointI p2 = p1;
        PointI p3 = start;
        pts.push_back(start);
        for (;;) {
            const int back = direction(p2.x - p3.x, p2.y - p3.y);
            bool east_zero = false;
            PointI p4 = p2;
            for (int k = 1; k <= 8; ++k) {
                const int d = (back - k + 8) & 7;
                const PointI q{p3.x + kDx[d], p3.y + kDy[d]};
                if (at(q.x, q.y) != 0) {
                    p4 = q;
                    break;
                }
                if (d == 0) east_zero = true;
            }
            if (east_zero) {
                at(p3.x, p3.y) = -nbd;
            } else if (at(p3.x, p3.y) == 1) {
                at(p3.x, p3.y) = nbd;
            }
            if (p4 == start && p3 == p1) break;
            p2 = p3;
            p3 = p4;
            pts.push_back(p3);
        }
        return pts;
    }

private:
    int w_;
    int h_;
    std::vector<std::int32_t> f_;
};

void canonicalize_orientation(Contour& c) {
    if (c.points.size() < 3) return;
    const double a = signed_area(c.points);
    const bool want_negative = c.kind == ContourKind::outer;
    if ((want_negative && a > 0) || (!want_negative && a < 0)) {
        std::reverse(c.points.begin() + 1, c.points.end());
    }
}

double point_line_distance(const PointI& p, const PointI& a, const PointI& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len = std::hypot(dx, dy);
    if (len == 0.0) return std::hypot(p.x - a.x, p.y - a.y);
    return std::abs(dy * (p.x - a.x) - dx * (p.y - a.y)) / len;
}

// Open-chain RDP; returns the kept indices into chain, endpoints included.
std::vector<std::size_t> simplify_chain(const std::vector<PointI>& chain, double epsilon) {
    const std::size_t n = chain.size();
    if (n < 2) return {0};
    std::vector<char> keep(n, 0);
    keep.front() = keep.back() = 1;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, n - 1}};
    while (!stack.empty()) {
        const auto [lo, hi] = stack.back();
        stack.pop_back();
        if (hi <= lo + 1) continue;
        double worst = -1.0;
        std::size_t at = lo;
        for (std::size_t i = lo + 1; i < hi; ++i) {
            const double d = point_line_distance(chain[i], chain[lo], chain[hi]);
            if (d > worst) {
                worst = d;
                at = i;
            }
        }
        if (worst > epsilon) {
            keep[at] = 1;
            stack.push_back({lo, at});
            stack.push_back({at, hi});
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (keep[i]) out.push_back(i);
    }
    return out;
}

std::size_t farthest_from(const std::vector<PointI>& pts, const PointI& from) {
    std::size_t best = 0;
    long long best_d = -1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const long long dx = pts[i].x - from.x;
        const long long dy = pts[i].y - from.y;
        const long long d = dx * dx + dy * dy;
        if (d > best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

}  // namespace

std::vector<Contour> extract_contours(const BinaryImage& mask) {
    BorderPlane f(mask);
    std::vector<Contour> out;
    std::int32_t nbd = 1;
    for (int y = 1; y < f.height() - 1; ++y) {
        for (int x = 1; x < f.width() - 1; ++x) {
            const std::int32_t v = f.at(x, y);
            if (v == 0) continue;
            const bool outer = v == 1 && f.at(x - 1, y) == 0;
            const bool hole = !outer && v >= 1 && f.at(x + 1, y) == 0;
            if (!outer && !hole) continue;

            ++nbd;
            Contour c;
            c.kind = outer ? ContourKind::outer : ContourKind::hole;
            c.points = outer ? f.follow(x, y, x - 1, y, nbd) : f.follow(x, y, x + 1, y, nbd);
            for (auto& p : c.points) {
                p.x -= 1;
                p.y -= 1;
            }
            c.id = static_cast<int>(out.size());
            canonicalize_orientation(c);
            out.push_back(std::move(c));
        }
    }
    return out;
}

BoundingBox bounding_box(std::span<const PointI> points) {
    if (points.empty()) throw InvalidArgument("bounding box of an empty contour");
    int x0 = std::numeric_limits<int>::max();
    int y0 = x0;
    int x1 = std::numeric_limits<int>::min();
    int y1 = x1;
    for (const auto& p : points) {
        x0 = std::min(x0, p.x);
        y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x);
        y1 = std::max(y1, p.y);
    }
    return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

double signed_area(std::span<const PointI> points) {
    const std::size_t n = points.size();
    if (n < 3) return 0.0;
    long long twice = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = points[i];
        const auto& b = points[(i + 1) % n];
        twice += static_cast<long long>(a.x) * b.y - static_cast<long long>(b.x) * a.y;
    }
    return 0.5 * static_cast<double>(twice);
}

double contour_area(const Contour& c) { return std::abs(signed_area(c.points)); }

double contour_perimeter(const Contour& c) {
    const std::size_t n = c.points.size();
    if (n < 2) return 0.0;
    double len = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = c.points[i];
        const auto& b = c.points[(i + 1) % n];
        len += std::hypot(b.x - a.x, b.y - a.y);
    }
    return len;
}

Polygon approx_polygon(const Contour& c, double epsilon) {
    if (!(epsilon > 0.0)) throw InvalidArgument("polygon epsilon must be positive");
    const auto& pts = c.points;
    if (pts.size() <= 4) return {pts};

    const std::size_t a = farthest_from(pts, pts.front());
    const std::size_t b = farthest_from(pts, pts[a]);
    const std::size_t lo = std::min(a, b);
    const std::size_t hi = std::max(a, b);
    if (lo == hi) return {{pts[lo]}};

    std::vector<PointI> first(pts.begin() + lo, pts.begin() + hi + 1);
    std::vector<PointI> second(pts.begin() + hi, pts.end());
    second.insert(second.end(), pts.begin(), pts.begin() + lo + 1);

    Polygon out;
    for (auto i : simplify_chain(first, epsilon)) out.vertices.push_back(first[i]);
    out.vertices.pop_back();
    for (auto i : simplify_chain(second, epsilon)) out.vertices.push_back(second[i]);
    out.vertices.pop_back();
    return out;
}

bool is_convex(const Polygon& p) {
    const std::size_t n = p.vertices.size();
    if (n < 3) return false;
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = p.vertices[i];
        const auto& b = p.vertices[(i + 1) % n];
        const auto& c = p.vertices[(i + 2) % n];
        const long long cross = static_cast<long long>(b.x - a.x) * (c.y - b.y) -
                                static_cast<long long>(b.y - a.y) * (c.x - b.x);
        if (cross == 0) return false;
        const int s = cross > 0 ? 1 : -1;
        if (sign == 0) {
            sign = s;
        } else if (s != sign) {
            return false;
        }
    }
    return true;
}

bool box_contains(const BoundingBox& outer, const BoundingBox& inner) {
    if (outer == inner) return false;
    return inner.x >= outer.x && inner.y >= outer.y && inner.x + inner.w <= outer.x + outer.w &&
           inner.y + inner.h <= outer.y + outer.h;
}

FilledRegion fill_contour(std::span<const PointI> points) {
    const BoundingBox box = bounding_box(points);
    // Local grid with a one-cell margin so the exterior is connected.
    const int gw = box.w + 2;
    const int gh = box.h + 2;
    enum : std::uint8_t { open = 0, wall = 1, outside = 2 };
    std::vector<std::uint8_t> grid(static_cast<std::size_t>(gw) * gh, open);
    auto cell = [&](int x, int y) -> std::uint8_t& {
        return grid[static_cast<std::size_t>(y) * gw + x];
    };
    for (const auto& p : points) cell(p.x - box.x + 1, p.y - box.y + 1) = wall;

    std::vector<PointI> todo{{0, 0}};
    cell(0, 0) = outside;
    while (!todo.empty()) {
        const PointI p = todo.back();
        todo.pop_back();
        constexpr int nx[4] = {1, -1, 0, 0};
        constexpr int ny[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            const int x = p.x + nx[k];
            const int y = p.y + ny[k];
            if (x < 0 || y < 0 || x >= gw || y >= gh || cell(x, y) != open) continue;
            cell(x, y) = outside;
            todo.push_back({x, y});
        }
    }

    FilledRegion region{box, BinaryImage(box.w, box.h)};
    for (int y = 0; y < box.h; ++y) {
        for (int x = 0; x < box.w; ++x) region.mask.set(x, y, cell(x + 1, y + 1) != outside);
    }
    return region;
}

}  // namespace grainsight
