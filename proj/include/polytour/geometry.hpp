#pragma once

#include <polytour/error.hpp>

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <utility>

namespace polytour {

// Lattice point in doubled coordinates: the geometric point (px, py) is
// stored as (2 px, 2 py). Cell corners have both coordinates even, cell
// centres both odd, and unit-edge midpoints have mixed parity.
struct GPoint {
    int x = 0;
    int y = 0;

    friend constexpr auto operator<=>(const GPoint&, const GPoint&) = default;
    friend constexpr GPoint operator+(GPoint a, GPoint b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr GPoint operator-(GPoint a, GPoint b) { return {a.x - b.x, a.y - b.y}; }

    friend std::ostream& operator<<(std::ostream& os, const GPoint& p) {
        return os << '(' << p.x << ',' << p.y << ')';
    }
};

constexpr bool is_grid_vertex(GPoint p) { return (p.x & 1) == 0 && (p.y & 1) == 0; }
constexpr bool is_cell_center(GPoint p) { return (p.x & 1) != 0 && (p.y & 1) != 0; }
constexpr bool is_edge_midpoint(GPoint p) { return ((p.x + p.y) & 1) != 0; }

enum class Parity { Even, Odd };

inline std::string_view to_string(Parity p) { return p == Parity::Even ? "Even" : "Odd"; }

// Component of the diagonal grid containing a grid vertex.
inline Parity parity_class(GPoint p) {
    if (!is_grid_vertex(p))
        throw error(errc::malformed_input, "parity_class expects a grid vertex");
    return ((p.x / 2 + p.y / 2) & 1) == 0 ? Parity::Even : Parity::Odd;
}

// A cell diagonal between two grid vertices, endpoints in lexicographic order.
class DiagEdge {
public:
    DiagEdge(GPoint p, GPoint q) : a_(std::min(p, q)), b_(std::max(p, q)) {
        if (!is_grid_vertex(a_) || !is_grid_vertex(b_) || std::abs(a_.x - b_.x) != 2 ||
            std::abs(a_.y - b_.y) != 2)
            throw error(errc::malformed_input, "not a unit cell diagonal");
        ensure(parity_class(a_) == parity_class(b_), "diagonal endpoints differ in parity class");
    }

    GPoint a() const { return a_; }
    GPoint b() const { return b_; }

    Parity parity() const { return parity_class(a_); }

    // Doubled coordinates of the centre of the cell it crosses.
    GPoint midpoint() const { return {(a_.x + b_.x) / 2, (a_.y + b_.y) / 2}; }

    // Lower-left corner of the crossed cell, in original units.
    std::pair<int, int> cell() const { return {std::min(a_.x, b_.x) / 2, std::min(a_.y, b_.y) / 2}; }

    // '/' rises to the right; '\' falls.
    bool rising() const { return b_.y > a_.y; }

    GPoint other(GPoint p) const { return p == a_ ? b_ : a_; }

    friend auto operator<=>(const DiagEdge&, const DiagEdge&) = default;

    friend std::ostream& operator<<(std::ostream& os, const DiagEdge& d) {
        return os << "diag " << d.a_.x << ' ' << d.a_.y << ' ' << d.b_.x << ' ' << d.b_.y;
    }

private:
    GPoint a_;
    GPoint b_;
};

enum class Containment { Inside, OnBoundary, Outside };

namespace detail {

inline std::int64_t cross(GPoint o, GPoint a, GPoint b) {
    return std::int64_t(a.x - o.x) * (b.y - o.y) - std::int64_t(a.y - o.y) * (b.x - o.x);
}

inline int sign(std::int64_t v) { return (v > 0) - (v < 0); }

inline bool on_segment(GPoint p, GPoint a, GPoint b) {
    return cross(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

inline bool segments_intersect(GPoint a, GPoint b, GPoint c, GPoint d) {
    const int d1 = sign(cross(c, d, a));
    const int d2 = sign(cross(c, d, b));
    const int d3 = sign(cross(a, b, c));
    const int d4 = sign(cross(a, b, d));
    if (d1 * d2 < 0 && d3 * d4 < 0)
        return true;
    return (d1 == 0 && on_segment(a, c, d)) || (d2 == 0 && on_segment(b, c, d)) ||
           (d3 == 0 && on_segment(c, a, b)) || (d4 == 0 && on_segment(d, a, b));
}

} // namespace detail

// Closed chain: consecutive points are joined, and the last joins the first.
inline bool is_simple_polygon(std::span<const GPoint> poly) {
    const std::size_t n = poly.size();
    if (n < 3)
        return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (poly[i] == poly[j])
                return false;
    for (std::size_t i = 0; i < n; ++i) {
        const GPoint a = poly[i], b = poly[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const GPoint c = poly[j], d = poly[(j + 1) % n];
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) {
                // Adjacent sides share one endpoint; they must not fold back.
                const GPoint shared = j == i + 1 ? b : a;
                const GPoint p = j == i + 1 ? a : b;
                const GPoint q = j == i + 1 ? d : c;
                if (detail::cross(shared, p, q) == 0 &&
                    (std::int64_t(p.x - shared.x) * (q.x - shared.x) +
                     std::int64_t(p.y - shared.y) * (q.y - shared.y)) > 0)
                    return false;
            } else if (detail::segments_intersect(a, b, c, d)) {
                return false;
            }
        }
    }
    return true;
}

// Even-odd classification with exact integer arithmetic. Skips the
// simplicity check; callers must guarantee it.
inline Containment point_in_polygon_unchecked(GPoint p, std::span<const GPoint> poly) {
    const std::size_t n = poly.size();
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const GPoint a = poly[i], b = poly[(i + 1) % n];
        if (detail::on_segment(p, a, b))
            return Containment::OnBoundary;
        if ((a.y > p.y) != (b.y > p.y)) {
            // p.x < a.x + (p.y - a.y) (b.x - a.x) / (b.y - a.y)
            const std::int64_t lhs = std::int64_t(p.x - a.x) * (b.y - a.y);
            const std::int64_t rhs = std::int64_t(p.y - a.y) * (b.x - a.x);
            if (b.y > a.y ? lhs < rhs : lhs > rhs)
                inside = !inside;
        }
    }
    return inside ? Containment::Inside : Containment::Outside;
}

inline Containment point_in_polygon(GPoint p, std::span<const GPoint> poly) {
    if (!is_simple_polygon(poly))
        throw error(errc::malformed_input, "polygon is not simple");
    return point_in_polygon_unchecked(p, poly);
}

// Twice the signed area (shoelace), positive for counterclockwise chains.
inline std::int64_t polygon_area2(std::span<const GPoint> poly) {
    if (poly.size() < 3)
        throw error(errc::malformed_input, "polygon needs at least three corners");
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const GPoint a = poly[i], b = poly[(i + 1) % poly.size()];
        sum += std::int64_t(a.x) * b.y - std::int64_t(b.x) * a.y;
    }
    return sum;
}

} // namespace polytour

template <>
struct std::hash<polytour::GPoint> {
    std::size_t operator()(const polytour::GPoint& p) const noexcept {
        return std::hash<std::uint64_t>{}((std::uint64_t(std::uint32_t(p.x)) << 32) | std::uint32_t(p.y));
    }
};
