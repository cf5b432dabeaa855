#pragma once

#include <polytour/error.hpp>
#include <polytour/pseudotour.hpp>
#include <polytour/region.hpp>
#include <polytour/transform.hpp>
#include <polytour/turngraph.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <vector>

namespace polytour {

struct EnumerationLimits {
    int max_cells_S = 9;       // enumerated regions hold at most 4 * max_cells_S cells
    double time_budget = 60.0; // seconds per enumeration
    bool count_only = false;   // count without materializing results
};

template <typename T>
struct Enumeration {
    std::size_t count = 0;
    std::vector<T> items;
};

namespace detail {

class Budget {
public:
    explicit Budget(const EnumerationLimits& limits)
        : deadline_(std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(limits.time_budget))) {}

    void tick() {
        if ((++ticks_ & 0xfff) == 0 && std::chrono::steady_clock::now() > deadline_)
            throw error(errc::budget_exceeded, "enumeration exceeded its time budget");
    }

private:
    std::chrono::steady_clock::time_point deadline_;
    std::uint64_t ticks_ = 0;
};

inline void check_size(std::size_t cells, std::size_t cap, const char* what) {
    if (cells > cap)
        throw error(errc::budget_exceeded, std::string(what) + ": region has " + std::to_string(cells) +
                                               " cells, limit is " + std::to_string(cap));
}

inline std::vector<std::vector<int>> neighbor_lists(const Polyomino& p) {
    std::vector<std::vector<int>> adj(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        for (int d = 0; d < 4; ++d)
            if (int j = p.neighbor(i, Dir(d)); j >= 0)
                adj[i].push_back(j);
    for (auto& a : adj)
        std::sort(a.begin(), a.end());
    return adj;
}

} // namespace detail

// Every Hamiltonian cycle once: the path starts at the least cell, leaves
// through the lesser of its two tour neighbours, and returns through the greater.
inline std::size_t for_each_tour(const Polyomino& p, const EnumerationLimits& limits,
                                 const std::function<void(const std::vector<int>&)>& visit) {
    detail::check_size(p.size(), std::size_t(4 * limits.max_cells_S), "tour enumeration");
    const int n = int(p.size());
    if (n < 4)
        return 0;
    const auto adj = detail::neighbor_lists(p);
    detail::Budget budget(limits);
    std::vector<char> used(n, 0);
    std::vector<int> path{0};
    used[0] = 1;
    std::size_t count = 0;
    int first = -1;

    // Unvisited cells need two usable neighbours: unvisited ones, the path end, or the start.
    auto starved = [&](int w, int end) {
        int options = 0;
        for (int x : adj[w])
            if (!used[x] || x == end || x == 0)
                ++options;
        return options < 2;
    };

    std::function<void(int)> extend = [&](int cur) {
        budget.tick();
        if (int(path.size()) == n) {
            if (cur > first && std::binary_search(adj[0].begin(), adj[0].end(), cur)) {
                ++count;
                visit(path);
            }
            return;
        }
        for (int next : adj[cur]) {
            if (used[next])
                continue;
            used[next] = 1;
            path.push_back(next);
            bool dead = false;
            for (int w : adj[cur])
                if (!used[w] && starved(w, next)) {
                    dead = true;
                    break;
                }
            if (!dead) {
                // The start still needs a free neighbour greater than the first step.
                bool closable = false;
                for (int w : adj[0])
                    if (w > first && (!used[w] || w == next)) {
                        closable = true;
                        break;
                    }
                dead = !closable;
            }
            if (!dead)
                extend(next);
            path.pop_back();
            used[next] = 0;
        }
    };

    for (int a : adj[0]) {
        first = a;
        used[a] = 1;
        path.push_back(a);
        extend(a);
        path.pop_back();
        used[a] = 0;
    }
    return count;
}

inline Pseudotour tour_from_path(const RegionPtr& region, const std::vector<int>& path) {
    Pseudotour e(region);
    for (std::size_t i = 0; i < path.size(); ++i)
        e.insert(Edge(region->cell(path[i]), region->cell(path[(i + 1) % path.size()])));
    return e;
}

inline Enumeration<Pseudotour> enumerate_tours(const RegionPtr& p, const EnumerationLimits& limits = {}) {
    Enumeration<Pseudotour> out;
    out.count = for_each_tour(*p, limits, [&](const std::vector<int>& path) {
        if (!limits.count_only)
            out.items.push_back(tour_from_path(p, path));
    });
    return out;
}

// Every 2-factor once, deciding each cell's east and north edges in cell order.
inline std::size_t for_each_pseudotour(const RegionPtr& region, const EnumerationLimits& limits,
                                       const std::function<void(const Pseudotour&)>& visit) {
    const Polyomino& p = *region;
    detail::check_size(p.size(), std::size_t(4 * limits.max_cells_S), "pseudotour enumeration");
    const int n = int(p.size());
    detail::Budget budget(limits);
    Pseudotour e(region);
    std::size_t count = 0;
    auto later_neighbors = [&](int i) {
        return int(p.neighbor(i, East) >= 0) + int(p.neighbor(i, North) >= 0);
    };

    std::function<void(int)> place = [&](int i) {
        budget.tick();
        if (i == n) {
            ++count;
            visit(e);
            return;
        }
        const int need = 2 - e.degree(i);
        const Cell c = p.cell(i);
        const int east = p.neighbor(i, East), north = p.neighbor(i, North);
        for (int choice = 0; choice < 4; ++choice) {
            const bool use_e = choice & 1, use_n = choice & 2;
            if (int(use_e) + int(use_n) != need)
                continue;
            if ((use_e && (east < 0 || e.degree(east) >= 2)) || (use_n && (north < 0 || e.degree(north) >= 2)))
                continue;
            if (use_e)
                e.insert(Edge(c, step(c, East)));
            if (use_n)
                e.insert(Edge(c, step(c, North)));
            // The north neighbour has no undecided lower edges left.
            const bool ok = north < 0 || e.degree(north) + later_neighbors(north) >= 2;
            if (ok)
                place(i + 1);
            if (use_e)
                e.erase(Edge(c, step(c, East)));
            if (use_n)
                e.erase(Edge(c, step(c, North)));
        }
    };
    place(0);
    return count;
}

inline Enumeration<Pseudotour> enumerate_pseudotours(const RegionPtr& p, const EnumerationLimits& limits = {}) {
    Enumeration<Pseudotour> out;
    out.count = for_each_pseudotour(p, limits, [&](const Pseudotour& e) {
        if (!limits.count_only)
            out.items.push_back(e);
    });
    return out;
}

inline std::size_t for_each_spanning_tree(const RegionPtr& region, const EnumerationLimits& limits,
                                          const std::function<void(const SpanningTree&)>& visit) {
    const Polyomino& s = *region;
    detail::check_size(s.size(), std::size_t(limits.max_cells_S), "spanning-tree enumeration");
    const auto edges = adjacency_edges(s);
    const int n = int(s.size()), m = int(edges.size());
    detail::Budget budget(limits);
    SpanningTree tree{region, {}};
    std::size_t count = 0;
    std::vector<int> comp(n);
    for (int i = 0; i < n; ++i)
        comp[i] = i;

    std::function<void(int)> choose = [&](int k) {
        budget.tick();
        if (int(tree.edges.size()) == n - 1) {
            ++count;
            visit(tree);
            return;
        }
        if (k == m || int(tree.edges.size()) + (m - k) < n - 1)
            return;
        const int a = comp[s.index_of(edges[k].a)], b = comp[s.index_of(edges[k].b)];
        if (a != b) {
            const auto saved = comp;
            for (int& c : comp)
                if (c == b)
                    c = a;
            tree.edges.push_back(edges[k]);
            choose(k + 1);
            tree.edges.pop_back();
            comp = saved;
        }
        choose(k + 1);
    };
    choose(0);
    return count;
}

inline Enumeration<SpanningTree> enumerate_spanning_trees(const RegionPtr& s, const EnumerationLimits& limits = {}) {
    Enumeration<SpanningTree> out;
    out.count = for_each_spanning_tree(s, limits, [&](const SpanningTree& t) {
        if (!limits.count_only)
            out.items.push_back(t);
    });
    return out;
}

// Kirchhoff: determinant of the reduced Laplacian, by fraction-free elimination.
inline std::int64_t matrix_tree_count(const Polyomino& s) {
    const int n = int(s.size()) - 1;
    if (n <= 0)
        return 1;
    std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n, 0));
    for (const Edge& e : adjacency_edges(s)) {
        const int i = s.index_of(e.a) - 1, j = s.index_of(e.b) - 1;
        if (i >= 0)
            a[i][i] += 1;
        if (j >= 0)
            a[j][j] += 1;
        if (i >= 0 && j >= 0) {
            a[i][j] -= 1;
            a[j][i] -= 1;
        }
    }
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int r = k + 1;
            while (r < n && a[r][k] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return std::int64_t(sign * a[n - 1][n - 1]);
}

struct MinTurnTours {
    int t_min = 0;
    std::size_t tour_count = 0;
    std::vector<Pseudotour> witnesses;
};

inline MinTurnTours min_turn_tour(const RegionPtr& p, const EnumerationLimits& limits = {}) {
    MinTurnTours out;
    out.t_min = std::numeric_limits<int>::max();
    out.tour_count = for_each_tour(*p, limits, [&](const std::vector<int>& path) {
        Pseudotour e = tour_from_path(p, path);
        const int t = turn_count(e);
        if (t < out.t_min) {
            out.t_min = t;
            out.witnesses.clear();
        }
        if (t == out.t_min)
            out.witnesses.push_back(std::move(e));
    });
    if (out.tour_count == 0)
        out.t_min = -1;
    return out;
}

struct MinTurnRegular {
    int t_min = 0;
    std::size_t tree_count = 0;
    std::vector<SpanningTree> witnesses;
};

inline MinTurnRegular min_turn_regular(const Polyomino& p, const EnumerationLimits& limits = {}) {
    RegionPtr s = share(halve(p));
    if (!is_simply_connected(p))
        throw error(errc::not_simply_connected, "region has a hole");
    MinTurnRegular out;
    out.t_min = std::numeric_limits<int>::max();
    out.tree_count = for_each_spanning_tree(s, limits, [&](const SpanningTree& tree) {
        const int t = turn_count(tour_from_spanning_tree(tree));
        if (t < out.t_min) {
            out.t_min = t;
            out.witnesses.clear();
        }
        if (t == out.t_min)
            out.witnesses.push_back(tree);
    });
    return out;
}

// ---- polyomino enumeration ----

inline std::vector<Cell> normalized_cells(std::vector<Cell> cells) {
    int mx = std::numeric_limits<int>::max(), my = std::numeric_limits<int>::max();
    for (const Cell& c : cells) {
        mx = std::min(mx, c.x);
        my = std::min(my, c.y);
    }
    for (Cell& c : cells)
        c = {c.x - mx, c.y - my};
    std::sort(cells.begin(), cells.end());
    return cells;
}

// Least normalized image under the eight symmetries of the square.
inline std::vector<Cell> canonical_free_form(const std::vector<Cell>& cells) {
    std::vector<Cell> best;
    for (int sym = 0; sym < 8; ++sym) {
        std::vector<Cell> img;
        img.reserve(cells.size());
        for (const Cell& c : cells) {
            int x = c.x, y = c.y;
            if (sym & 4)
                std::swap(x, y);
            if (sym & 1)
                x = -x;
            if (sym & 2)
                y = -y;
            img.push_back({x, y});
        }
        img = normalized_cells(std::move(img));
        if (best.empty() || img < best)
            best = std::move(img);
    }
    return best;
}

// Fixed polyominoes by Redelmeier's method; with free_only, one
// representative (the canonical form) per symmetry class.
inline std::vector<Polyomino> enumerate_polyominoes(int n, bool free_only = false) {
    if (n < 1)
        throw error(errc::malformed_input, "polyomino size must be at least 1");
    std::vector<Polyomino> out;
    std::set<std::vector<Cell>> seen_free;
    // Cells with y > 0, or y == 0 and x >= 0, relative to the root.
    auto allowed = [](Cell c) { return c.y > 0 || (c.y == 0 && c.x >= 0); };
    std::set<Cell> reached{{0, 0}};
    std::vector<Cell> current;

    std::function<void(std::vector<Cell>)> grow = [&](std::vector<Cell> untried) {
        while (!untried.empty()) {
            const Cell c = untried.back();
            untried.pop_back();
            current.push_back(c);
            if (int(current.size()) == n) {
                if (free_only) {
                    auto canon = canonical_free_form(current);
                    if (seen_free.insert(canon).second)
                        out.push_back(Polyomino::from_cells(canon));
                } else {
                    out.push_back(Polyomino::from_cells(current));
                }
            } else {
                std::vector<Cell> next = untried;
                std::vector<Cell> added;
                for (int d = 0; d < 4; ++d) {
                    const Cell nb = step(c, Dir(d));
                    if (allowed(nb) && !reached.count(nb)) {
                        reached.insert(nb);
                        added.push_back(nb);
                        next.push_back(nb);
                    }
                }
                grow(std::move(next));
                for (const Cell& a : added)
                    reached.erase(a);
            }
            current.pop_back();
        }
    };
    grow({{0, 0}});
    std::sort(out.begin(), out.end(), [](const Polyomino& a, const Polyomino& b) { return a.cells() < b.cells(); });
    return out;
}

// ---- verification of the structural claims on one instance ----

struct TheoremReport {
    Polyomino shape;
    int t_min = -1;
    int t_min_regular = -1;
    std::size_t tour_count = 0;
    std::size_t regular_count = 0;
    std::size_t witness_count = 0;
    std::size_t regular_witness_count = 0;
    std::size_t irregular_improved = 0;
    std::size_t cyclic_regular_count = 0; // regular tours whose turn graph has a cycle
    std::size_t spanning_trees = 0;
    bool passed = true;
    std::string failure;
};

inline TheoremReport verify_theorem(const Polyomino& s, const EnumerationLimits& limits = {}) {
    if (!is_simply_connected(s))
        throw error(errc::not_simply_connected, "base region has a hole");
    TheoremReport r;
    r.shape = s;
    RegionPtr p = share(doubled(s));
    auto fail = [&](std::string why) {
        if (r.passed)
            r.failure = std::move(why);
        r.passed = false;
    };
    std::vector<Pseudotour> tours = enumerate_tours(p, limits).items;
    r.tour_count = tours.size();
    r.t_min = std::numeric_limits<int>::max();
    for (const Pseudotour& e : tours) {
        const int t = turn_count(e);
        r.t_min = std::min(r.t_min, t);
        if (is_regular(e)) {
            ++r.regular_count;
            if (find_innermost_cycle(build_turn_graph(e)))
                ++r.cyclic_regular_count;
        } else {
            auto [better, report] = improve(e);
            const int t2 = turn_count(better);
            if (!is_tour(better) || t2 > t - 2)
                fail("improve did not save two turns on an irregular tour");
            ++r.irregular_improved;
        }
    }
    for (const Pseudotour& e : tours)
        if (turn_count(e) == r.t_min) {
            ++r.witness_count;
            if (is_regular(e))
                ++r.regular_witness_count;
        }
    if (r.regular_witness_count != r.witness_count)
        fail("a minimum-turn tour is irregular");
    const auto reg = min_turn_regular(*p, limits);
    r.t_min_regular = reg.t_min;
    r.spanning_trees = reg.tree_count;
    if (reg.t_min != r.t_min)
        fail("regular minimum differs from the tour minimum");
    if (reg.tree_count != r.regular_count)
        fail("regular tours are not in bijection with spanning trees");
    return r;
}

struct PropositionReport {
    std::size_t pseudotour_count = 0;
    int t_min = -1;
    std::size_t witness_count = 0;
    std::size_t turn_even_witnesses = 0;
    bool passed = true;
};

inline PropositionReport verify_proposition(const RegionPtr& p, const EnumerationLimits& limits = {}) {
    if (!is_even(*p))
        throw error(errc::not_even, "region is not even");
    if (!is_simply_connected(*p))
        throw error(errc::not_simply_connected, "region has a hole");
    PropositionReport r;
    r.t_min = std::numeric_limits<int>::max();
    std::vector<Pseudotour> witnesses;
    r.pseudotour_count = for_each_pseudotour(p, limits, [&](const Pseudotour& e) {
        const int t = turn_count(e);
        if (t < r.t_min) {
            r.t_min = t;
            witnesses.clear();
        }
        if (t == r.t_min)
            witnesses.push_back(e);
    });
    r.witness_count = witnesses.size();
    for (const Pseudotour& e : witnesses)
        r.turn_even_witnesses += is_turn_even(e);
    r.passed = r.turn_even_witnesses == r.witness_count;
    return r;
}

} // namespace polytour
