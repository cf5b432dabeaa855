#pragma once

#include <polytour/error.hpp>
#include <polytour/pseudotour.hpp>
#include <polytour/region.hpp>
#include <polytour/turngraph.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

namespace polytour {

// Turns of the regular tour built from T, counted without building it: the
// P-cell in a given quadrant of an S-cell turns exactly when the tree edge
// leaving through the quadrant's horizontal side and the one leaving through
// its vertical side are both present or both absent.
inline int regular_turns(const SpanningTree& tree) {
    const Polyomino& s = *tree.region;
    auto has = [&](Cell a, Cell b) { return std::binary_search(tree.edges.begin(), tree.edges.end(), Edge(a, b)); };
    int t = 0;
    for (const Cell& c : s.cells())
        for (Dir h : {East, West})
            for (Dir v : {North, South})
                t += has(c, step(c, h)) == has(c, step(c, v));
    return t;
}

struct RegularSearchResult {
    int turns = 0;
    SpanningTree tree;
};

namespace detail {

// Frontier slot for the latest processed cell of one column.
struct Slot {
    std::uint8_t label = 0; // 0: empty, otherwise connectivity class
    bool w = false;         // edge to the west neighbour
    bool e = false;         // edge to the east neighbour (once known)
    bool s = false;         // edge to the south neighbour, kept until e is known
};

struct FrontierState {
    std::vector<Slot> slots;
    bool closed = false;

    void canonicalize() {
        std::array<std::uint8_t, 256> map{};
        std::uint8_t next = 1;
        for (Slot& sl : slots) {
            if (!sl.label)
                continue;
            if (!map[sl.label])
                map[sl.label] = next++;
            sl.label = map[sl.label];
        }
    }

    std::string key() const {
        std::string k;
        k.reserve(slots.size() + 1);
        for (const Slot& sl : slots)
            k += char(sl.label | (sl.w << 5) | (sl.e << 6) | (sl.s << 7));
        k += char(closed);
        return k;
    }

    bool label_in_use(std::uint8_t label) const {
        return std::any_of(slots.begin(), slots.end(), [&](const Slot& sl) { return sl.label == label; });
    }

    bool any_label() const {
        return std::any_of(slots.begin(), slots.end(), [](const Slot& sl) { return sl.label != 0; });
    }
};

struct DpLayer {
    std::vector<FrontierState> states;
    std::vector<int> cost;
    std::vector<int> parent;
    std::vector<std::uint8_t> choice; // bit 0: west edge, bit 1: south edge
    std::unordered_map<std::string, int> index;

    void offer(FrontierState st, int c, int from, std::uint8_t ch) {
        st.canonicalize();
        auto [it, inserted] = index.try_emplace(st.key(), int(states.size()));
        if (inserted) {
            states.push_back(std::move(st));
            cost.push_back(c);
            parent.push_back(from);
            choice.push_back(ch);
        } else if (c < cost[it->second]) {
            cost[it->second] = c;
            parent[it->second] = from;
            choice[it->second] = ch;
        }
    }
};

} // namespace detail

// Exact minimum of regular_turns over all spanning trees of S, by a
// row-by-row frontier dynamic programme over spanning forests.
inline RegularSearchResult min_turn_regular_search(const Polyomino& s_in, int max_width = 14) {
    const bool transpose = s_in.width() > s_in.height();
    std::vector<Cell> cells;
    for (const Cell& c : s_in.cells())
        cells.push_back(transpose ? Cell{c.y, c.x} : c);
    const Polyomino s = Polyomino::from_cells(cells);
    const int width = s.width(), height = s.height();
    if (width > max_width)
        throw error(errc::budget_exceeded, "region is too wide for the frontier search");

    std::vector<detail::DpLayer> layers(1);
    layers[0].offer({std::vector<detail::Slot>(std::size_t(width)), false}, 0, -1, 0);

    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const bool present = s.contains({x, y});
            detail::DpLayer next;
            const detail::DpLayer& cur = layers.back();
            for (std::size_t si = 0; si < cur.states.size(); ++si) {
                const detail::FrontierState& st = cur.states[si];
                const detail::Slot up = st.slots[x];
                const bool has_left = x > 0 && st.slots[x - 1].label != 0;
                const bool has_up = up.label != 0;
                for (std::uint8_t ch = 0; ch < 4; ++ch) {
                    const bool w = ch & 1, n = ch & 2;
                    if ((w && (!present || !has_left)) || (n && (!present || !has_up)))
                        continue;
                    detail::FrontierState ns = st;
                    int c = cur.cost[si];
                    if (has_left) {
                        detail::Slot& l = ns.slots[x - 1];
                        c += (w == l.s);
                        l.e = w;
                        l.s = false;
                    }
                    if (has_up)
                        c += (up.w == n) + (up.e == n);
                    if (!present) {
                        ns.slots[x] = {};
                        if (has_up && !ns.label_in_use(up.label)) {
                            if (ns.closed || ns.any_label())
                                continue;
                            ns.closed = true;
                        }
                        next.offer(std::move(ns), c, int(si), ch);
                        continue;
                    }
                    if (ns.closed)
                        continue;
                    c += (w == n);
                    std::uint8_t label = 31;
                    if (w && n) {
                        const std::uint8_t a = ns.slots[x - 1].label, b = up.label;
                        if (a == b)
                            continue;
                        for (auto& sl : ns.slots)
                            if (sl.label == b)
                                sl.label = a;
                        label = a;
                    } else if (w) {
                        label = ns.slots[x - 1].label;
                    } else if (n) {
                        label = up.label;
                    }
                    ns.slots[x] = {label, w, false, n};
                    if (has_up && !n && !ns.label_in_use(up.label))
                        continue;
                    next.offer(std::move(ns), c, int(si), ch);
                }
            }
            layers.push_back(std::move(next));
        }
        // The last column has no east neighbour.
        detail::DpLayer& last = layers.back();
        detail::DpLayer fixed;
        for (std::size_t si = 0; si < last.states.size(); ++si) {
            detail::FrontierState ns = last.states[si];
            int c = last.cost[si];
            detail::Slot& sl = ns.slots[width - 1];
            if (sl.label) {
                c += (false == sl.s);
                sl.s = false;
            }
            fixed.offer(std::move(ns), c, int(si), 0);
        }
        layers.push_back(std::move(fixed));
    }

    // Flush: nothing lies north of the last row.
    int best = std::numeric_limits<int>::max(), best_state = -1;
    const detail::DpLayer& last = layers.back();
    for (std::size_t si = 0; si < last.states.size(); ++si) {
        const detail::FrontierState& st = last.states[si];
        std::uint8_t label = 0;
        bool ok = !st.closed;
        int c = last.cost[si];
        for (const detail::Slot& sl : st.slots) {
            if (!sl.label)
                continue;
            if (label && sl.label != label)
                ok = false;
            label = sl.label;
            c += (sl.w == false) + (sl.e == false);
        }
        if (ok && label && c < best) {
            best = c;
            best_state = int(si);
        }
    }
    ensure(best_state >= 0, "frontier search found no spanning tree");

    // Walk back through the layers, reading off each cell's west/south edges.
    std::vector<Edge> edges;
    int si = best_state;
    std::size_t layer = layers.size() - 1;
    for (int y = height - 1; y >= 0; --y) {
        si = layers[layer].parent[si]; // end-of-row layer
        --layer;
        for (int x = width - 1; x >= 0; --x) {
            const std::uint8_t ch = layers[layer].choice[si];
            const Cell c{x, y};
            auto orient = [&](Cell a) { return transpose ? Cell{a.y, a.x} : a; };
            if (ch & 1)
                edges.emplace_back(orient(c), orient({x - 1, y}));
            if (ch & 2)
                edges.emplace_back(orient(c), orient({x, y - 1}));
            si = layers[layer].parent[si];
            --layer;
        }
    }
    std::sort(edges.begin(), edges.end());
    RegularSearchResult out{best, SpanningTree{share(s_in), std::move(edges)}};
    ensure(is_spanning_tree(s_in, out.tree.edges), "frontier search produced a non-tree");
    ensure(regular_turns(out.tree) == best, "frontier search cost disagrees with the tree");
    return out;
}

} // namespace polytour
