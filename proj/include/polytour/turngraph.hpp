#pragma once

#include <polytour/error.hpp>
#include <polytour/geometry.hpp>
#include <polytour/pseudotour.hpp>
#include <polytour/region.hpp>

#include <algorithm>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace polytour {

// Cell diagonals bisecting the turns of a pseudotour, in doubled coordinates.
class TurnGraph {
public:
    TurnGraph() = default;

    TurnGraph(RegionPtr region, std::vector<DiagEdge> diagonals)
        : region_(std::move(region)), diagonals_(std::move(diagonals)) {
        std::sort(diagonals_.begin(), diagonals_.end());
        diagonals_.erase(std::unique(diagonals_.begin(), diagonals_.end()), diagonals_.end());
    }

    const Polyomino& region() const { return *region_; }
    const RegionPtr& region_ptr() const { return region_; }
    const std::vector<DiagEdge>& diagonals() const { return diagonals_; }
    std::size_t size() const { return diagonals_.size(); }

    bool contains(const DiagEdge& d) const {
        return std::binary_search(diagonals_.begin(), diagonals_.end(), d);
    }

    TurnGraph without(std::span<const DiagEdge> removed) const {
        std::vector<DiagEdge> rest;
        for (const DiagEdge& d : diagonals_)
            if (std::find(removed.begin(), removed.end(), d) == removed.end())
                rest.push_back(d);
        return TurnGraph(region_, std::move(rest));
    }

    friend bool operator==(const TurnGraph& a, const TurnGraph& b) {
        return a.diagonals_ == b.diagonals_ && (a.region_ == b.region_ || *a.region_ == *b.region_);
    }

private:
    RegionPtr region_;
    std::vector<DiagEdge> diagonals_;
};

// For a turn u' - v - u'', the diagonal joins w' = (u' + u'')/2 and w'' = 2v - w'.
inline DiagEdge turn_diagonal(const Turn& turn) {
    const GPoint v = turn.v.center();
    const GPoint u1 = turn.u1.center(), u2 = turn.u2.center();
    const GPoint w1{(u1.x + u2.x) / 2, (u1.y + u2.y) / 2};
    const GPoint w2{2 * v.x - w1.x, 2 * v.y - w1.y};
    return DiagEdge(w1, w2);
}

inline TurnGraph build_turn_graph(const Pseudotour& e) {
    require_valid(e);
    std::vector<DiagEdge> diagonals;
    for (const Turn& turn : turns(e))
        diagonals.push_back(turn_diagonal(turn));
    return TurnGraph(e.region_ptr(), std::move(diagonals));
}

namespace detail {

// Degree of every grid vertex in the closed bounding box, row-major, original units.
inline std::vector<int> vertex_degrees(const TurnGraph& u) {
    const Polyomino& p = u.region();
    const int w = p.width() + 1;
    std::vector<int> deg(std::size_t(w) * (p.height() + 1), 0);
    for (const DiagEdge& d : u.diagonals())
        for (GPoint g : {d.a(), d.b()}) {
            const int gx = g.x / 2, gy = g.y / 2;
            if (gx >= 0 && gy >= 0 && gx < w && gy <= p.height())
                ++deg[std::size_t(gy) * w + gx];
        }
    return deg;
}

} // namespace detail

// Odd degree exactly at the corners of the region, even everywhere else.
inline std::optional<Violation> check_degree_parity(const TurnGraph& u) {
    const Polyomino& p = u.region();
    for (const DiagEdge& d : u.diagonals()) {
        auto [cx, cy] = d.cell();
        if (!p.contains({cx, cy})) {
            std::ostringstream os;
            os << d << " lies outside the region";
            return Violation{errc::parity_violation, os.str()};
        }
    }
    const auto deg = detail::vertex_degrees(u);
    const int w = p.width() + 1;
    for (int gy = 0; gy <= p.height(); ++gy)
        for (int gx = 0; gx < w; ++gx) {
            const GPoint g{2 * gx, 2 * gy};
            const bool odd = deg[std::size_t(gy) * w + gx] % 2 != 0;
            if (odd != p.is_corner(g)) {
                std::ostringstream os;
                os << "vertex " << g << " has degree " << deg[std::size_t(gy) * w + gx]
                   << (odd ? " but is not a corner" : " but is a corner");
                return Violation{errc::parity_violation, os.str()};
            }
        }
    return std::nullopt;
}

// At most one diagonal per cell, and every diagonal inside the region.
inline bool is_free_of_self_intersections(const TurnGraph& u) {
    std::vector<std::pair<int, int>> cells;
    for (const DiagEdge& d : u.diagonals()) {
        auto c = d.cell();
        if (!u.region().contains({c.first, c.second}))
            return false;
        cells.push_back(c);
    }
    std::sort(cells.begin(), cells.end());
    return std::adjacent_find(cells.begin(), cells.end()) == cells.end();
}

inline bool is_wellformed(const TurnGraph& u) {
    return is_free_of_self_intersections(u) && !check_degree_parity(u);
}

inline bool is_turn_even(const TurnGraph& u) {
    return std::all_of(u.diagonals().begin(), u.diagonals().end(),
                       [](const DiagEdge& d) { return d.parity() == Parity::Even; });
}

// Inverse of build_turn_graph. Cells crossed by a diagonal split into two
// triangles; the units are two-coloured so that colour flips across a
// diagonal and is kept across a cell side, with units on horizontal boundary
// sides white. Horizontal edges inside white units and vertical edges inside
// black units form the pseudotour.
inline Pseudotour pseudotour_from_turn_graph(const TurnGraph& u) {
    const Polyomino& p = u.region();
    if (!is_simply_connected(p))
        throw error(errc::not_simply_connected, "turn-graph bijection needs a region without holes");
    if (!is_wellformed(u))
        throw error(errc::not_well_formed, "diagonal set violates the turn-graph conditions");

    // 0: no diagonal, 1: rising '/', 2: falling '\'
    std::vector<int> kind(p.size(), 0);
    for (const DiagEdge& d : u.diagonals()) {
        auto [cx, cy] = d.cell();
        kind[p.index_of({cx, cy})] = d.rising() ? 1 : 2;
    }
    // Unit 2i touches the south side of cell i; unit 2i+1 (if split) the north side.
    auto side_unit = [&](std::size_t i, Dir side) -> std::size_t {
        switch (kind[i]) {
        case 1: return 2 * i + (side == South || side == East ? 0 : 1);
        case 2: return 2 * i + (side == South || side == West ? 0 : 1);
        default: return 2 * i;
        }
    };

    std::vector<int> color(2 * p.size(), -1); // 0 white, 1 black
    std::size_t seed = p.size();
    for (std::size_t i = 0; i < p.size() && seed == p.size(); ++i)
        if (p.neighbor(i, South) < 0)
            seed = i;
    std::vector<std::size_t> stack{side_unit(seed, South)};
    color[stack.back()] = 0;
    auto paint = [&](std::size_t unit, int c) {
        if (color[unit] < 0) {
            color[unit] = c;
            stack.push_back(unit);
        } else if (color[unit] != c) {
            throw error(errc::coloring_contradiction, "face colouring is inconsistent");
        }
    };
    while (!stack.empty()) {
        const std::size_t unit = stack.back();
        stack.pop_back();
        const std::size_t i = unit / 2;
        const int c = color[unit];
        if (kind[i] != 0)
            paint(unit ^ 1, 1 - c);
        for (int d = 0; d < 4; ++d) {
            if (side_unit(i, Dir(d)) != unit)
                continue;
            const int j = p.neighbor(i, Dir(d));
            if (j >= 0)
                paint(side_unit(std::size_t(j), opposite(Dir(d))), c);
        }
    }

    for (std::size_t i = 0; i < p.size(); ++i)
        for (int d = 0; d < 4; ++d)
            if (p.neighbor(i, Dir(d)) < 0 && color[side_unit(i, Dir(d))] != (is_horizontal(Dir(d)) ? 1 : 0))
                throw error(errc::coloring_contradiction, "boundary sides are not coloured by orientation");

    Pseudotour e(u.region_ptr());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Cell c = p.cell(i);
        if (p.neighbor(i, East) >= 0 && color[side_unit(i, East)] == 0)
            e.insert(Edge(c, step(c, East)));
        if (p.neighbor(i, North) >= 0 && color[side_unit(i, North)] == 1)
            e.insert(Edge(c, step(c, North)));
    }
    ensure(!validate(e), "reconstructed edge set is not a pseudotour");
    return e;
}

inline bool is_turn_even(const Pseudotour& e) { return is_turn_even(build_turn_graph(e)); }

// A tour is regular exactly when its turn graph avoids the odd diagonal class.
inline bool is_regular(const Pseudotour& e) {
    return !validate(e) && cycle_count(e) == 1 && is_turn_even(build_turn_graph(e));
}

// Spanning tree of the adjacency graph of a region S, edges sorted.
struct SpanningTree {
    RegionPtr region;
    std::vector<Edge> edges;

    friend bool operator==(const SpanningTree& a, const SpanningTree& b) {
        return a.edges == b.edges && *a.region == *b.region;
    }
};

inline bool is_spanning_tree(const Polyomino& s, std::span<const Edge> edges) {
    if (edges.size() + 1 != s.size())
        return false;
    std::vector<int> parent(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        parent[i] = int(i);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Edge& e : edges) {
        const int i = s.index_of(e.a), j = s.index_of(e.b);
        if (i < 0 || j < 0 || !e.is_unit())
            return false;
        const int a = find(i), b = find(j);
        if (a == b)
            return false;
        parent[a] = b;
    }
    return true;
}

namespace detail {

// Whether the unit square centred at grid vertex (gx, gy) of P = 2S (original
// units of P) belongs to the thickened doubled tree.
inline bool in_thickened_tree(const Polyomino& s, const std::vector<Edge>& tree, int gx, int gy) {
    const bool xo = gx & 1, yo = gy & 1;
    if (xo && yo)
        return s.contains({(gx - 1) / 2, (gy - 1) / 2});
    if (!xo && !yo)
        return false;
    Edge e = xo ? Edge(Cell{(gx - 1) / 2, gy / 2 - 1}, Cell{(gx - 1) / 2, gy / 2})
                : Edge(Cell{gx / 2 - 1, (gy - 1) / 2}, Cell{gx / 2, (gy - 1) / 2});
    return std::binary_search(tree.begin(), tree.end(), e);
}

} // namespace detail

// The boundary of the union of unit squares centred on the vertices of 2T.
inline Pseudotour tour_from_spanning_tree(const SpanningTree& tree) {
    const Polyomino& s = *tree.region;
    std::vector<Edge> edges = tree.edges;
    std::sort(edges.begin(), edges.end());
    if (!is_spanning_tree(s, edges))
        throw error(errc::not_spanning_tree, "edge set is not a spanning tree of the region");
    RegionPtr p = share(doubled(s));
    auto inside = [&](int gx, int gy) { return detail::in_thickened_tree(s, edges, gx, gy); };
    Pseudotour e(p);
    for (const Cell& c : p->cells()) {
        if (p->contains(step(c, East)) && inside(c.x + 1, c.y) != inside(c.x + 1, c.y + 1))
            e.insert(Edge(c, step(c, East)));
        if (p->contains(step(c, North)) && inside(c.x, c.y + 1) != inside(c.x + 1, c.y + 1))
            e.insert(Edge(c, step(c, North)));
    }
    ensure(!validate(e) && cycle_count(e) == 1, "thickened tree boundary is not a tour");
    return e;
}

// Recovers T from a regular tour: S-cells are adjacent in T when the square
// centred between their block centres lies inside the tour.
inline SpanningTree spanning_tree_from_regular_tour(const Pseudotour& e) {
    if (!is_regular(e))
        throw error(errc::not_regular, "tour is not regular");
    const Polyomino& p = e.region();
    RegionPtr s = share(halve(p));
    const auto cyc = cycles(e);
    std::vector<GPoint> polygon;
    for (const Cell& c : cyc.front())
        polygon.push_back(c.center());
    auto inside = [&](int gx, int gy) {
        return point_in_polygon_unchecked({2 * gx, 2 * gy}, polygon) == Containment::Inside;
    };
    SpanningTree tree{s, {}};
    for (const Edge& se : adjacency_edges(*s)) {
        const int gx = se.a.x + se.b.x + 1, gy = se.a.y + se.b.y + 1;
        if (inside(gx, gy))
            tree.edges.push_back(se);
    }
    ensure(is_spanning_tree(*s, tree.edges), "regular tour does not enclose a spanning tree");
    return tree;
}

inline std::string write_turn_graph(const TurnGraph& u) {
    std::ostringstream os;
    for (const DiagEdge& d : u.diagonals())
        os << d << '\n';
    return os.str();
}

inline TurnGraph parse_turn_graph(std::string_view text, RegionPtr region) {
    std::vector<DiagEdge> diagonals;
    std::istringstream in{std::string(text)};
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag))
            continue;
        GPoint a, b;
        if (tag != "diag" || !(ls >> a.x >> a.y >> b.x >> b.y))
            throw error(errc::malformed_input, "bad diagonal on line " + std::to_string(line_no));
        diagonals.emplace_back(a, b);
    }
    return TurnGraph(std::move(region), std::move(diagonals));
}

} // namespace polytour
