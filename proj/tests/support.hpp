#pragma once

#include <polytour/polytour.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

namespace polytour::testing {

inline Polyomino rect(int w, int h) {
    std::vector<Cell> cells;
    for (int x = 0; x < w; ++x)
        for (int y = 0; y < h; ++y)
            cells.push_back({x, y});
    return Polyomino::from_cells(cells);
}

inline RegionPtr rect_ptr(int w, int h) { return share(rect(w, h)); }

// Grows a random polyomino one neighbouring cell at a time.
inline Polyomino random_polyomino(std::mt19937& rng, int n) {
    std::set<Cell> cells{{0, 0}};
    std::vector<Cell> order{{0, 0}};
    while (int(cells.size()) < n) {
        const Cell c = order[std::uniform_int_distribution<std::size_t>(0, order.size() - 1)(rng)];
        const Dir d = Dir(std::uniform_int_distribution<int>(0, 3)(rng));
        const Cell nc = step(c, d);
        if (cells.insert(nc).second)
            order.push_back(nc);
    }
    return Polyomino::from_cells(order);
}

inline Polyomino random_simple_polyomino(std::mt19937& rng, int n) {
    for (;;) {
        Polyomino p = random_polyomino(rng, n);
        if (is_simply_connected(p))
            return p;
    }
}

// Concentric rings on a 4x4 square: outer 12-cycle and inner 4-cycle.
inline Pseudotour two_rings() {
    return parse_tour("0,0 1,0 2,0 3,0 3,1 3,2 3,3 2,3 1,3 0,3 0,2 0,1\n"
                      "1,1 2,1 2,2 1,2\n");
}

} // namespace polytour::testing
