#include "support.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <numeric>

using namespace polytour;
using polytour::testing::rect_ptr;
using polytour::testing::two_rings;

namespace {

bool has_cycle(const TurnGraph& u) {
    std::map<GPoint, GPoint> parent;
    std::function<GPoint(GPoint)> find = [&](GPoint g) {
        auto it = parent.find(g);
        if (it == parent.end() || it->second == g)
            return g;
        return it->second = find(it->second);
    };
    for (const DiagEdge& d : u.diagonals()) {
        const GPoint a = find(d.a()), b = find(d.b());
        if (a == b)
            return true;
        parent[a] = b;
    }
    return false;
}

std::vector<Pseudotour> irregular_tours(const RegionPtr& p) {
    std::vector<Pseudotour> out;
    for (Pseudotour& e : enumerate_tours(p).items)
        if (!is_regular(e))
            out.push_back(std::move(e));
    return out;
}

std::vector<RegionPtr> even_regions() {
    std::vector<RegionPtr> out;
    for (int n = 1; n <= 6; ++n)
        for (const Polyomino& s : enumerate_polyominoes(n, true))
            if (is_simply_connected(s))
                out.push_back(share(doubled(s)));
    return out;
}

} // namespace

TEST(InnermostCycle, AcyclicGraphs) {
    const TurnGraph u = build_turn_graph(two_rings());
    EXPECT_FALSE(has_cycle(u));
    EXPECT_FALSE(find_innermost_cycle(u));
    EXPECT_FALSE(find_innermost_cycle(build_turn_graph(parse_tour("0,0 1,0 1,1 0,1\n"))));
}

TEST(InnermostCycle, SingleDiamond) {
    const TurnGraph u(rect_ptr(2, 2), {DiagEdge({2, 0}, {4, 2}), DiagEdge({4, 2}, {2, 4}), DiagEdge({2, 4}, {0, 2}),
                                       DiagEdge({0, 2}, {2, 0})});
    const auto c = find_innermost_cycle(u);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->ell(), 2);
    EXPECT_EQ(c->area2(), 16);
    EXPECT_EQ(c->vertices.size(), 4u);
}

TEST(InnermostCycle, NestedPicksInner) {
    std::vector<DiagEdge> d;
    const std::vector<GPoint> outer{{4, 0}, {6, 2}, {8, 4}, {6, 6}, {4, 8}, {2, 6}, {0, 4}, {2, 2}};
    const std::vector<GPoint> inner{{4, 2}, {6, 4}, {4, 6}, {2, 4}};
    for (const auto* ring : {&outer, &inner})
        for (std::size_t i = 0; i < ring->size(); ++i)
            d.emplace_back((*ring)[i], (*ring)[(i + 1) % ring->size()]);
    const TurnGraph u(rect_ptr(4, 4), d);
    const auto c = find_innermost_cycle(u);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->ell(), 2);
    EXPECT_EQ(c->area2(), 16);
    EXPECT_TRUE(detail::encloses_no_diagonal(u, *c));
}

TEST(DeleteCycle, IrregularFourByFourTours) {
    const auto tours = irregular_tours(rect_ptr(4, 4));
    ASSERT_EQ(tours.size(), 2u);
    for (const Pseudotour& e : tours) {
        const TurnGraph u = build_turn_graph(e);
        const auto c = find_innermost_cycle(u);
        ASSERT_TRUE(c);
        EXPECT_TRUE(has_cycle(u));
        auto [next, rep] = delete_cycle(e, *c);
        EXPECT_GE(rep.ell, 2);
        EXPECT_EQ(rep.t_after, rep.t_before - 2 * rep.ell);
        EXPECT_LE(rep.s_after, rep.ell);
        EXPECT_GE(rep.s_after, 1);
        EXPECT_FALSE(validate(next));
        EXPECT_EQ(turn_count(next), rep.t_after);
        EXPECT_EQ(build_turn_graph(next), u.without(c->edges()));
    }
}

TEST(DeleteCycle, RejectsEnclosingCycle) {
    bool found = false;
    for (const RegionPtr& p : even_regions())
        for (const Pseudotour& e : irregular_tours(p)) {
            const TurnGraph u = build_turn_graph(e);
            for (const TurnCycle& c : detail::face_cycles(u)) {
                if (detail::encloses_no_diagonal(u, c))
                    continue;
                try {
                    delete_cycle(e, c);
                    ADD_FAILURE();
                } catch (const error& err) {
                    EXPECT_EQ(err.code(), errc::cycle_not_innermost);
                }
                found = true;
            }
        }
    EXPECT_TRUE(found);
}

TEST(Stitch, TwoRings) {
    const Pseudotour e = two_rings();
    const FlipSite site = find_stitch_site(e);
    EXPECT_EQ(site.orientation, Orientation::Horizontal);
    EXPECT_EQ(site.cells[0], (Cell{0, 1}));
    EXPECT_EQ(site.cells[1], (Cell{1, 1}));
    const StitchResult r = stitch(e);
    EXPECT_TRUE(is_tour(r.tour));
    EXPECT_LE(turn_count(r.tour), 10);
    EXPECT_LE(r.turns_delta, 2);
    EXPECT_EQ(turn_count(r.tour), turn_count(e) + r.turns_delta);
    EXPECT_TRUE(is_turn_even(r.tour));
}

TEST(Stitch, VerticalOnly) {
    const Pseudotour e = parse_tour("0,0 1,0 1,1 0,1\n0,2 1,2 1,3 0,3\n");
    const FlipSite site = find_stitch_site(e);
    EXPECT_EQ(site.orientation, Orientation::Vertical);
    const StitchResult r = stitch(e);
    EXPECT_TRUE(is_tour(r.tour));
    EXPECT_EQ(turn_count(r.tour), 4);
    EXPECT_TRUE(is_turn_even(r.tour));
}

TEST(Stitch, Rejections) {
    try {
        find_stitch_site(parse_tour("0,0 1,0 1,1 0,1\n"));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::single_cycle);
    }
}

TEST(Stitch, EveryTurnEvenPseudotour) {
    std::size_t checked = 0;
    for (auto [w, h] : {std::pair{4, 4}, {4, 6}, {6, 4}, {6, 6}, {2, 8}}) {
        for (const Pseudotour& e : enumerate_pseudotours(rect_ptr(w, h)).items) {
            if (cycle_count(e) < 2 || !is_turn_even(e))
                continue;
            const TourStats before = stats(e);
            const StitchResult r = stitch(e);
            const TourStats after = stats(r.tour);
            EXPECT_EQ(after.s, before.s - 1);
            EXPECT_LE(after.t, before.t + 2);
            EXPECT_TRUE(is_turn_even(r.tour));
            ++checked;
        }
    }
    EXPECT_GT(checked, 10u);
}

TEST(Improve, RegularSquareUnchanged) {
    const Pseudotour e = parse_tour("0,0 1,0 1,1 0,1\n");
    auto [out, rep] = improve(e);
    EXPECT_EQ(out, e);
    EXPECT_EQ(rep.k(), 0);
    EXPECT_TRUE(rep.initially_regular);
}

TEST(Improve, Rejections) {
    try {
        improve(two_rings());
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_a_tour);
    }
    try {
        improve(parse_tour("0,0 1,0 2,0 2,1 1,1 0,1\n"));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_even);
    }
}

TEST(Improve, EveryIrregularTourSavesTwoTurns) {
    std::size_t checked = 0;
    for (const RegionPtr& p : even_regions()) {
        for (const Pseudotour& e : irregular_tours(p)) {
            auto [out, rep] = improve(e);
            EXPECT_TRUE(is_tour(out));
            EXPECT_TRUE(is_regular(out));
            EXPECT_LE(turn_count(out), turn_count(e) - 2);
            EXPECT_EQ(rep.final_stats.t, turn_count(out));
            int d = std::accumulate(rep.ells.begin(), rep.ells.end(), 0);
            EXPECT_EQ(rep.after_downward.t, rep.initial.t - 2 * d);
            ++checked;
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(Improve, TraceFormat) {
    const auto tours = irregular_tours(rect_ptr(4, 4));
    auto [out, rep] = improve(tours.front());
    const std::string trace = write_trace(rep);
    EXPECT_TRUE(trace.starts_with("start s=1 t=" + std::to_string(rep.initial.t) + " irregular\n"));
    EXPECT_NE(trace.find("delete ell="), std::string::npos);
    EXPECT_NE(trace.find("\nend s=1 t=" + std::to_string(turn_count(out))), std::string::npos);
}
