#include "support.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <functional>
#include <numeric>
#include <set>

using namespace polytour;
using polytour::testing::rect;
using polytour::testing::rect_ptr;

namespace {

// Plain path extension from cell 0 without pruning; each cycle is found twice.
std::size_t naive_tour_count(const Polyomino& p) {
    const std::size_t n = p.size();
    if (n < 4)
        return 0;
    std::vector<char> used(n, 0);
    std::size_t closed = 0;
    std::function<void(int, std::size_t)> go = [&](int v, std::size_t len) {
        for (int d = 0; d < 4; ++d) {
            const int w = p.neighbor(std::size_t(v), Dir(d));
            if (w < 0)
                continue;
            if (w == 0 && len == n)
                ++closed;
            if (used[w])
                continue;
            used[w] = 1;
            go(w, len + 1);
            used[w] = 0;
        }
    };
    used[0] = 1;
    go(0, 1);
    return closed / 2;
}

// Every subset of adjacency edges in which each cell has degree two.
std::size_t brute_force_two_factors(const Polyomino& p) {
    const auto edges = adjacency_edges(p);
    EXPECT_LE(edges.size(), 26u);
    std::size_t count = 0;
    std::vector<int> deg(p.size());
    for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
        if (std::popcount(mask) != int(p.size()))
            continue;
        std::fill(deg.begin(), deg.end(), 0);
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (mask >> i & 1) {
                ++deg[std::size_t(p.index_of(edges[i].a))];
                ++deg[std::size_t(p.index_of(edges[i].b))];
            }
        count += std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; });
    }
    return count;
}

// Acyclic subsets of n - 1 edges.
std::size_t brute_force_spanning_trees(const Polyomino& s) {
    const auto edges = adjacency_edges(s);
    std::size_t count = 0;
    for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
        if (std::popcount(mask) + 1 != int(s.size()))
            continue;
        std::vector<int> parent(s.size());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        bool ok = true;
        for (std::size_t i = 0; i < edges.size() && ok; ++i)
            if (mask >> i & 1) {
                const int a = find(s.index_of(edges[i].a)), b = find(s.index_of(edges[i].b));
                ok = a != b;
                parent[a] = b;
            }
        count += ok;
    }
    return count;
}

// Fixed polyominoes by growing every shape of size n - 1 by one cell.
std::vector<std::size_t> growth_counts(int max_n) {
    std::set<std::vector<Cell>> level{{{0, 0}}};
    std::vector<std::size_t> out{1};
    for (int n = 2; n <= max_n; ++n) {
        std::set<std::vector<Cell>> next;
        for (const auto& shape : level)
            for (const Cell& c : shape)
                for (int d = 0; d < 4; ++d) {
                    const Cell nc = step(c, Dir(d));
                    if (std::find(shape.begin(), shape.end(), nc) != shape.end())
                        continue;
                    auto grown = shape;
                    grown.push_back(nc);
                    next.insert(normalized_cells(grown));
                }
        out.push_back(next.size());
        level = std::move(next);
    }
    return out;
}

} // namespace

TEST(Tours, KnownCounts) {
    EXPECT_EQ(enumerate_tours(rect_ptr(2, 2)).count, 1u);
    EXPECT_EQ(enumerate_tours(rect_ptr(2, 4)).count, 1u);
    EXPECT_EQ(enumerate_tours(rect_ptr(4, 4)).count, 6u);
    EXPECT_EQ(enumerate_tours(rect_ptr(4, 5)).count, 14u);
    EXPECT_EQ(enumerate_tours(rect_ptr(4, 6)).count, 37u);
    EXPECT_EQ(enumerate_tours(rect_ptr(6, 6)).count, 1072u);
    EXPECT_EQ(enumerate_tours(rect_ptr(3, 3)).count, 0u);
}

TEST(Tours, AgreeWithNaiveSearch) {
    std::mt19937 rng(21);
    for (int i = 0; i < 150; ++i) {
        const Polyomino p = polytour::testing::random_polyomino(rng, 4 + i % 14);
        const auto tours = enumerate_tours(share(p));
        EXPECT_EQ(tours.count, naive_tour_count(p)) << to_ascii(p);
        for (const Pseudotour& e : tours.items)
            EXPECT_TRUE(is_tour(e));
    }
    std::size_t nonzero = 0;
    for (int i = 0; i < 150; ++i) {
        const Polyomino p = doubled(polytour::testing::random_polyomino(rng, 1 + i % 6));
        const std::size_t count = enumerate_tours(share(p)).count;
        EXPECT_EQ(count, naive_tour_count(p)) << to_ascii(p);
        nonzero += count > 1;
    }
    EXPECT_GT(nonzero, 20u);
}

TEST(Pseudotours, KnownCounts) {
    EXPECT_EQ(enumerate_pseudotours(rect_ptr(2, 2)).count, 1u);
    EXPECT_EQ(enumerate_pseudotours(rect_ptr(2, 4)).count, 2u);
}

TEST(Pseudotours, AgreeWithBruteForce) {
    std::mt19937 rng(22);
    for (auto [w, h] : {std::pair{2, 6}, {3, 4}, {4, 4}, {2, 8}})
        EXPECT_EQ(enumerate_pseudotours(rect_ptr(w, h)).count, brute_force_two_factors(rect(w, h)));
    for (int i = 0; i < 60; ++i) {
        const Polyomino p = polytour::testing::random_polyomino(rng, 4 + i % 13);
        if (adjacency_edges(p).size() > 26)
            continue;
        EXPECT_EQ(enumerate_pseudotours(share(p)).count, brute_force_two_factors(p)) << to_ascii(p);
    }
}

TEST(Pseudotours, SingleCycleOnesAreTheTours) {
    for (auto [w, h] : {std::pair{4, 4}, {4, 5}, {4, 6}}) {
        const RegionPtr p = rect_ptr(w, h);
        const auto all = enumerate_pseudotours(p);
        std::set<std::string> single;
        for (const Pseudotour& e : all.items) {
            EXPECT_FALSE(validate(e));
            if (cycle_count(e) == 1)
                single.insert(write_tour(e));
        }
        std::set<std::string> tours;
        for (const Pseudotour& e : enumerate_tours(p).items)
            tours.insert(write_tour(e));
        EXPECT_EQ(single, tours);
    }
}

TEST(SpanningTrees, Counts) {
    EXPECT_EQ(enumerate_spanning_trees(rect_ptr(1, 1)).count, 1u);
    EXPECT_EQ(enumerate_spanning_trees(rect_ptr(2, 2)).count, 4u);
    EXPECT_EQ(matrix_tree_count(rect(2, 2)), 4);
    EXPECT_EQ(matrix_tree_count(rect(2, 3)), 15);
    EXPECT_EQ(matrix_tree_count(rect(3, 3)), 192);
    EXPECT_EQ(matrix_tree_count(rect(4, 4)), 100352);
}

TEST(SpanningTrees, MatrixTreeAndBruteForceAgree) {
    for (int n = 1; n <= 6; ++n)
        for (const Polyomino& s : enumerate_polyominoes(n)) {
            const auto trees = enumerate_spanning_trees(share(s));
            EXPECT_EQ(std::int64_t(trees.count), matrix_tree_count(s));
            EXPECT_EQ(trees.count, brute_force_spanning_trees(s));
            std::set<std::vector<Edge>> distinct;
            for (const SpanningTree& t : trees.items) {
                EXPECT_TRUE(is_spanning_tree(s, t.edges));
                distinct.insert(t.edges);
            }
            EXPECT_EQ(distinct.size(), trees.count);
        }
}

TEST(MinTurn, Examples) {
    EXPECT_EQ(min_turn_tour(rect_ptr(2, 2)).t_min, 4);
    EXPECT_EQ(min_turn_tour(rect_ptr(2, 4)).t_min, 4);
    const auto m = min_turn_tour(rect_ptr(4, 4));
    EXPECT_EQ(m.tour_count, 6u);
    ASSERT_FALSE(m.witnesses.empty());
    for (const Pseudotour& e : m.witnesses) {
        EXPECT_TRUE(is_regular(e));
        EXPECT_EQ(turn_count(e), m.t_min);
    }
    EXPECT_EQ(min_turn_regular(rect(2, 2)).t_min, 4);
    EXPECT_EQ(min_turn_regular(rect(2, 4)).t_min, 4);
    EXPECT_EQ(min_turn_regular(rect(4, 4)).t_min, m.t_min);
}

TEST(MinTurn, Budgets) {
    try {
        min_turn_tour(rect_ptr(10, 10));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::budget_exceeded);
    }
    EnumerationLimits tight;
    tight.time_budget = 0.0;
    try {
        enumerate_pseudotours(rect_ptr(6, 6), tight);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::budget_exceeded);
    }
}

TEST(Polyominoes, Counts) {
    const std::vector<std::size_t> fixed{1, 2, 6, 19, 63, 216, 760, 2725};
    const std::vector<std::size_t> free{1, 1, 2, 5, 12, 35, 108, 369};
    const auto grown = growth_counts(8);
    for (int n = 1; n <= 8; ++n) {
        EXPECT_EQ(enumerate_polyominoes(n).size(), fixed[n - 1]) << n;
        EXPECT_EQ(grown[n - 1], fixed[n - 1]) << n;
        EXPECT_EQ(enumerate_polyominoes(n, true).size(), free[n - 1]) << n;
    }
    int holed = 0;
    for (const Polyomino& p : enumerate_polyominoes(7, true))
        holed += !is_simply_connected(p);
    EXPECT_EQ(holed, 1);
}

TEST(Theorem, SmallShapes) {
    const TheoremReport one = verify_theorem(rect(1, 1));
    EXPECT_TRUE(one.passed);
    EXPECT_EQ(one.tour_count, 1u);
    const TheoremReport sq = verify_theorem(rect(2, 2));
    EXPECT_TRUE(sq.passed) << sq.failure;
    EXPECT_EQ(sq.tour_count, 6u);
    EXPECT_EQ(sq.regular_count, 4u);
    for (const Pseudotour& e : enumerate_tours(share(doubled(rect(2, 2)))).items)
        if (!is_regular(e)) {
            EXPECT_GT(turn_count(e), sq.t_min);
        }
}

TEST(Proposition, SmallShapes) {
    EXPECT_TRUE(verify_proposition(rect_ptr(2, 2)).passed);
    const auto r = verify_proposition(rect_ptr(2, 4));
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.pseudotour_count, 2u);
    EXPECT_EQ(r.t_min, 4);
    EXPECT_EQ(r.witness_count, 1u);
}
