#pragma once

#include <polytour/error.hpp>
#include <polytour/geometry.hpp>
#include <polytour/pseudotour.hpp>
#include <polytour/region.hpp>
#include <polytour/turngraph.hpp>

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace polytour {

// Simple cycle of a turn graph, counterclockwise, starting at its least vertex.
struct TurnCycle {
    std::vector<GPoint> vertices;

    int ell() const { return int(vertices.size()) / 2; }

    std::vector<DiagEdge> edges() const {
        std::vector<DiagEdge> out;
        for (std::size_t i = 0; i < vertices.size(); ++i)
            out.emplace_back(vertices[i], vertices[(i + 1) % vertices.size()]);
        return out;
    }

    std::int64_t area2() const { return polygon_area2(vertices); }

    friend bool operator==(const TurnCycle&, const TurnCycle&) = default;
};

namespace detail {

// Diagonal directions in counterclockwise order: NE, NW, SW, SE.
inline constexpr std::array<int, 4> diag_dx{2, -2, -2, 2};
inline constexpr std::array<int, 4> diag_dy{2, 2, -2, -2};

inline int diag_direction(GPoint from, GPoint to) {
    const int dx = to.x - from.x, dy = to.y - from.y;
    for (int d = 0; d < 4; ++d)
        if (diag_dx[d] == dx && diag_dy[d] == dy)
            return d;
    return -1;
}

inline TurnCycle canonical_cycle(std::vector<GPoint> vs) {
    if (polygon_area2(vs) < 0)
        std::reverse(vs.begin(), vs.end());
    std::rotate(vs.begin(), std::min_element(vs.begin(), vs.end()), vs.end());
    return TurnCycle{std::move(vs)};
}

// Simple cycles on the boundaries of the bounded faces of the plane graph,
// found by walking every face with the face kept on the left.
inline std::vector<TurnCycle> face_cycles(const TurnGraph& u) {
    std::vector<GPoint> verts;
    for (const DiagEdge& d : u.diagonals()) {
        verts.push_back(d.a());
        verts.push_back(d.b());
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    auto index = [&](GPoint g) {
        return int(std::lower_bound(verts.begin(), verts.end(), g) - verts.begin());
    };
    std::vector<std::array<int, 4>> adj(verts.size(), {-1, -1, -1, -1});
    for (const DiagEdge& d : u.diagonals()) {
        const int a = index(d.a()), b = index(d.b());
        adj[a][diag_direction(d.a(), d.b())] = b;
        adj[b][diag_direction(d.b(), d.a())] = a;
    }

    std::vector<char> used(4 * verts.size(), 0);
    std::vector<TurnCycle> out;
    for (std::size_t v0 = 0; v0 < verts.size(); ++v0)
        for (int d0 = 0; d0 < 4; ++d0) {
            if (adj[v0][d0] < 0 || used[4 * v0 + d0])
                continue;
            std::vector<int> walk;
            int v = int(v0), d = d0;
            do {
                used[4 * v + d] = 1;
                walk.push_back(v);
                const int w = adj[v][d];
                const int back = (d + 2) % 4;
                int next = back;
                for (int i = 1; i <= 4; ++i) {
                    const int cand = (back + 4 - i) % 4;
                    if (adj[w][cand] >= 0) {
                        next = cand;
                        break;
                    }
                }
                v = w;
                d = next;
            } while (v != int(v0) || d != d0);

            std::vector<GPoint> pts;
            for (int i : walk)
                pts.push_back(verts[i]);
            if (pts.size() < 3 || polygon_area2(pts) <= 0)
                continue;

            // Split the closed walk at repeated vertices; two-vertex pieces are spurs.
            std::vector<int> stack;
            std::vector<int> pos(verts.size(), -1);
            walk.push_back(walk.front());
            for (int x : walk) {
                if (pos[x] >= 0) {
                    const int k = pos[x];
                    if (int(stack.size()) - k >= 3) {
                        std::vector<GPoint> cyc;
                        for (std::size_t i = std::size_t(k); i < stack.size(); ++i)
                            cyc.push_back(verts[stack[i]]);
                        out.push_back(canonical_cycle(std::move(cyc)));
                    }
                    for (std::size_t i = std::size_t(k) + 1; i < stack.size(); ++i)
                        pos[stack[i]] = -1;
                    stack.resize(std::size_t(k) + 1);
                } else {
                    pos[x] = int(stack.size());
                    stack.push_back(x);
                }
            }
        }
    std::sort(out.begin(), out.end(), [](const TurnCycle& a, const TurnCycle& b) { return a.vertices < b.vertices; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline bool encloses_no_diagonal(const TurnGraph& u, const TurnCycle& c) {
    return std::none_of(u.diagonals().begin(), u.diagonals().end(), [&](const DiagEdge& d) {
        return point_in_polygon_unchecked(d.midpoint(), c.vertices) == Containment::Inside;
    });
}

} // namespace detail

// A cycle of U whose interior holds no diagonal of U: the bounded face cycle
// of least area, ties broken by least vertex. None when U is acyclic.
inline std::optional<TurnCycle> find_innermost_cycle(const TurnGraph& u) {
    auto candidates = detail::face_cycles(u);
    if (candidates.empty())
        return std::nullopt;
    auto best = std::min_element(candidates.begin(), candidates.end(), [](const TurnCycle& a, const TurnCycle& b) {
        const auto aa = a.area2(), ba = b.area2();
        if (aa != ba)
            return aa < ba;
        return a.vertices < b.vertices;
    });
    ensure(detail::encloses_no_diagonal(u, *best), "least-area face cycle encloses a diagonal");
    return *best;
}

struct DeletionReport {
    int ell = 0;
    int s_before = 0;
    int s_after = 0;
    int t_before = 0;
    int t_after = 0;
    int new_cycles = 0;
};

namespace detail {

inline GPoint edge_midpoint(const Edge& e) { return {e.a.x + e.b.x + 1, e.a.y + e.b.y + 1}; }

inline std::vector<std::vector<Edge>> cycle_edge_sets(const Pseudotour& e) {
    std::vector<std::vector<Edge>> out;
    for (const auto& cyc : cycles(e)) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < cyc.size(); ++i)
            edges.emplace_back(cyc[i], cyc[(i + 1) % cyc.size()]);
        std::sort(edges.begin(), edges.end());
        out.push_back(std::move(edges));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// Removes an innermost cycle C from the turn graph and rebuilds the
// pseudotour. Inside [C] the pseudotour edges switch orientation.
inline std::pair<Pseudotour, DeletionReport> delete_cycle(const Pseudotour& e, const TurnCycle& c) {
    const TurnGraph u = build_turn_graph(e);
    const auto removed = c.edges();
    if (c.vertices.size() < 4 || !is_simple_polygon(c.vertices) ||
        !std::all_of(removed.begin(), removed.end(), [&](const DiagEdge& d) { return u.contains(d); }))
        throw error(errc::cycle_not_innermost, "not a cycle of the turn graph");
    if (!detail::encloses_no_diagonal(u, c))
        throw error(errc::cycle_not_innermost, "cycle encloses diagonals of the turn graph");

    Pseudotour next = pseudotour_from_turn_graph(u.without(removed));

    DeletionReport report;
    report.ell = c.ell();
    report.s_before = cycle_count(e);
    report.t_before = int(u.size());
    report.s_after = cycle_count(next);
    report.t_after = turn_count(next);

    // Inside [C] one orientation is traded for the other; outside nothing changes.
    const Polyomino& p = e.region();
    int inside_h = 0, inside_v = 0;
    for (const Edge& adj : adjacency_edges(p)) {
        const bool inside =
            point_in_polygon_unchecked(detail::edge_midpoint(adj), c.vertices) == Containment::Inside;
        const bool before = e.contains(adj), after = next.contains(adj);
        if (!inside) {
            ensure(before == after, "cycle deletion changed an edge outside the cycle");
            continue;
        }
        if (before)
            (adj.horizontal() ? inside_h : inside_v)++;
    }
    ensure(inside_h == 0 || inside_v == 0, "edges inside an innermost cycle have mixed orientation");
    if (inside_h + inside_v > 0)
        for (const Edge& adj : adjacency_edges(p))
            if (point_in_polygon_unchecked(detail::edge_midpoint(adj), c.vertices) == Containment::Inside)
                ensure(next.contains(adj) == (adj.horizontal() == (inside_v > 0)),
                       "cycle deletion did not swap edge orientation inside the cycle");

    const auto old_sets = detail::cycle_edge_sets(e);
    for (const auto& cyc : detail::cycle_edge_sets(next)) {
        if (std::binary_search(old_sets.begin(), old_sets.end(), cyc))
            continue;
        ++report.new_cycles;
        bool in = false, out = false;
        for (const Edge& edge : cyc)
            (point_in_polygon_unchecked(detail::edge_midpoint(edge), c.vertices) == Containment::Inside ? in : out) =
                true;
        ensure(in && out, "new cycle does not cross the deleted turn-graph cycle");
    }
    ensure(report.new_cycles <= report.ell, "more new cycles than half the deleted cycle length");
    ensure(report.ell >= 2, "turn-graph cycle shorter than four");
    ensure(report.t_after == report.t_before - 2 * report.ell, "turn count did not drop by the cycle length");
    ensure(report.s_after <= report.s_before + report.ell - 1, "cycle count grew beyond the deletion bound");
    ensure(build_turn_graph(next) == u.without(removed), "rebuilt pseudotour has a different turn graph");
    return {std::move(next), report};
}

enum class Orientation { Horizontal, Vertical };
enum class Anchor { Left, Right };

inline std::string_view to_string(Orientation o) { return o == Orientation::Horizontal ? "horizontal" : "vertical"; }
inline std::string_view to_string(Anchor a) { return a == Anchor::Left ? "left" : "right"; }

// A 2x2 block whose two vertical edges (in the chosen frame) belong to
// different cycles. cells[0..3] are frame (x,y), (x+1,y), (x,y+1), (x+1,y+1)
// mapped back to the region.
struct FlipSite {
    Orientation orientation = Orientation::Horizontal;
    Cell frame_origin;
    std::array<Cell, 4> cells;
    Anchor anchor = Anchor::Left;
};

namespace detail {

// The vertical frame is the region rotated a quarter turn counterclockwise;
// rotation about the origin keeps diagonal parity classes.
struct Frame {
    bool rotated = false;

    Cell to_frame(Cell c) const { return rotated ? Cell{-c.y - 1, c.x} : c; }
    Cell to_region(Cell f) const { return rotated ? Cell{f.y, -f.x - 1} : f; }
};

inline std::vector<int> cycle_labels(const Pseudotour& e) {
    const Polyomino& p = e.region();
    std::vector<int> label(p.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (label[i] >= 0)
            continue;
        std::vector<int> stack{int(i)};
        label[i] = next;
        while (!stack.empty()) {
            const int c = stack.back();
            stack.pop_back();
            for (int d = 0; d < 4; ++d)
                if (e.mask(c) >> d & 1) {
                    const int n = p.neighbor(c, Dir(d));
                    if (label[n] < 0) {
                        label[n] = next;
                        stack.push_back(n);
                    }
                }
        }
        ++next;
    }
    return label;
}

} // namespace detail

inline FlipSite find_stitch_site(const Pseudotour& e) {
    require_valid(e);
    if (cycle_count(e) < 2)
        throw error(errc::single_cycle, "pseudotour is already a single cycle");
    if (!is_turn_even(e))
        throw error(errc::not_turn_even, "stitching needs a turn-even pseudotour");
    const Polyomino& p = e.region();
    const auto label = detail::cycle_labels(e);

    for (bool rotated : {false, true}) {
        const detail::Frame frame{rotated};
        std::optional<Cell> best;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const Cell f = frame.to_frame(p.cell(i));
            const int j = p.index_of(frame.to_region({f.x + 1, f.y}));
            if (j < 0 || label[i] == label[j])
                continue;
            if (!best || std::pair(f.y, f.x) < std::pair(best->y, best->x))
                best = f;
        }
        if (!best)
            continue;
        const int x = best->x, y = best->y;
        auto has = [&](Cell a, Cell b) { return e.contains(Edge(frame.to_region(a), frame.to_region(b))); };
        FlipSite site;
        site.orientation = rotated ? Orientation::Vertical : Orientation::Horizontal;
        site.frame_origin = *best;
        site.anchor = has({x, y - 1}, {x, y}) ? Anchor::Right : Anchor::Left;
        site.cells = {frame.to_region({x, y}), frame.to_region({x + 1, y}), frame.to_region({x, y + 1}),
                      frame.to_region({x + 1, y + 1})};
        if (!has({x, y}, {x, y + 1}) || !has({x + 1, y}, {x + 1, y + 1}))
            throw error(errc::not_turn_even, "stitch site has turns in both diagonal classes");
        return site;
    }
    throw error(errc::invariant_failure, "no adjacent cells in distinct cycles");
}

struct StitchResult {
    Pseudotour tour;
    FlipSite site;
    int turns_delta = 0;
};

// Flips the two parallel edges of the site's block to the perpendicular pair,
// merging the two cycles through it.
inline StitchResult stitch(const Pseudotour& e) {
    const FlipSite site = find_stitch_site(e);
    const TourStats before = stats(e);
    Pseudotour next = e;
    const Edge e1(site.cells[0], site.cells[2]), e2(site.cells[1], site.cells[3]);
    const Edge e3(site.cells[0], site.cells[1]), e4(site.cells[2], site.cells[3]);
    ensure(!e.contains(e3) && !e.contains(e4), "flip block already holds a perpendicular edge");
    next.erase(e1);
    next.erase(e2);
    next.insert(e3);
    next.insert(e4);
    const TourStats after = stats(next);
    ensure(after.s == before.s - 1, "stitching did not merge exactly two cycles");
    ensure(after.t <= before.t + 2, "stitching added more than two turns");
    ensure(is_turn_even(next), "stitching broke turn-evenness");
    return {std::move(next), site, after.t - before.t};
}

enum class StepKind { Delete, Stitch };

struct PipelineStep {
    StepKind kind;
    int ell = 0;  // Delete
    FlipSite site; // Stitch
    TourStats after;
};

struct PipelineReport {
    TourStats initial;
    TourStats after_downward;
    TourStats final_stats;
    std::vector<int> ells;
    int stitch_count = 0;
    bool initially_regular = false;
    std::vector<PipelineStep> steps;
    std::vector<DeletionReport> deletions;

    int k() const { return int(ells.size()); }
    int d() const { return std::accumulate(ells.begin(), ells.end(), 0); }
};

// Deletes innermost turn-graph cycles until the turn graph is acyclic, then
// stitches the resulting turn-even pseudotour back into a single tour.
inline std::pair<Pseudotour, PipelineReport> improve(const Pseudotour& tour) {
    if (validate(tour) || cycle_count(tour) != 1)
        throw error(errc::not_a_tour, "input is not a Hamiltonian cycle of its region");
    if (!is_even(tour.region()))
        throw error(errc::not_even, "region is not an even polyomino");
    if (!is_simply_connected(tour.region()))
        throw error(errc::not_simply_connected, "region has a hole");

    PipelineReport report;
    report.initial = stats(tour);
    report.initially_regular = is_regular(tour);

    Pseudotour cur = tour;
    while (auto c = find_innermost_cycle(build_turn_graph(cur))) {
        auto [next, del] = delete_cycle(cur, *c);
        cur = std::move(next);
        report.ells.push_back(del.ell);
        report.deletions.push_back(del);
        report.steps.push_back({StepKind::Delete, del.ell, {}, {del.s_after, del.t_after}});
    }
    report.after_downward = stats(cur);
    ensure(is_turn_even(cur), "acyclic turn graph is not turn-even");

    while (cycle_count(cur) > 1) {
        auto r = stitch(cur);
        cur = std::move(r.tour);
        ++report.stitch_count;
        report.steps.push_back({StepKind::Stitch, 0, r.site, stats(cur)});
    }
    report.final_stats = stats(cur);

    const int t = report.initial.t, t1 = report.after_downward.t, s1 = report.after_downward.s;
    const int t2 = report.final_stats.t;
    ensure(t1 == t - 2 * report.d(), "downward phase did not remove exactly 2d turns");
    ensure(s1 <= 1 + report.d() - report.k(), "downward phase added more than d - k cycles");
    ensure(report.stitch_count == s1 - 1, "upward phase stitch count differs from s' - 1");
    ensure(t2 <= t1 + 2 * s1 - 2, "upward phase added more than 2s' - 2 turns");
    ensure(report.initially_regular || report.k() > 0, "irregular tour with an acyclic turn graph");
    if (report.k() > 0) {
        ensure(t1 <= t - 2 * s1, "downward phase bound t' <= t - 2s' failed");
        ensure(t2 <= t - 2, "pipeline did not save two turns");
    } else {
        ensure(cur == tour, "regular tour with acyclic turn graph was modified");
    }
    return {std::move(cur), std::move(report)};
}

inline std::string write_trace(const PipelineReport& r) {
    std::ostringstream os;
    os << "start s=" << r.initial.s << " t=" << r.initial.t << (r.initially_regular ? " regular" : " irregular")
       << '\n';
    for (const PipelineStep& step : r.steps) {
        if (step.kind == StepKind::Delete) {
            os << "delete ell=" << step.ell;
        } else {
            os << "stitch " << to_string(step.site.orientation) << " at=" << step.site.cells[0]
               << " anchor=" << to_string(step.site.anchor);
        }
        os << " s=" << step.after.s << " t=" << step.after.t << '\n';
    }
    os << "end s=" << r.final_stats.s << " t=" << r.final_stats.t << " k=" << r.k() << " d=" << r.d()
       << " stitches=" << r.stitch_count << '\n';
    return os.str();
}

} // namespace polytour
