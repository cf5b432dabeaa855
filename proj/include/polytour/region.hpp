#pragma once

#include <polytour/error.hpp>
#include <polytour/geometry.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace polytour {

// Unit cell named by its lower-left corner, in original units.
struct Cell {
    int x = 0;
    int y = 0;

    friend constexpr auto operator<=>(const Cell&, const Cell&) = default;

    constexpr GPoint center() const { return {2 * x + 1, 2 * y + 1}; }

    friend std::ostream& operator<<(std::ostream& os, const Cell& c) { return os << c.x << ',' << c.y; }
};

inline Cell cell_at_center(GPoint c) {
    if (!is_cell_center(c))
        throw error(errc::malformed_input, "not a cell centre");
    return {(c.x - 1) / 2, (c.y - 1) / 2};
}

enum Dir : std::uint8_t { East = 0, North = 1, West = 2, South = 3 };

inline constexpr std::array<int, 4> dir_dx{1, 0, -1, 0};
inline constexpr std::array<int, 4> dir_dy{0, 1, 0, -1};

constexpr Dir opposite(Dir d) { return Dir((d + 2) & 3); }
constexpr bool is_horizontal(Dir d) { return d == East || d == West; }
constexpr Cell step(Cell c, Dir d) { return {c.x + dir_dx[d], c.y + dir_dy[d]}; }

// Unordered pair of side-adjacent cells, stored with a < b.
struct Edge {
    Cell a;
    Cell b;

    Edge() = default;
    Edge(Cell p, Cell q) : a(std::min(p, q)), b(std::max(p, q)) {}

    bool is_unit() const { return std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1; }
    bool horizontal() const { return a.y == b.y; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Polyomino {
public:
    Polyomino() = default;

    // Normalizes the translation so that min x = min y = 0.
    static Polyomino from_cells(std::vector<Cell> cells) {
        if (cells.empty())
            throw error(errc::empty_region, "region has no cells");
        int min_x = std::numeric_limits<int>::max(), min_y = std::numeric_limits<int>::max();
        for (const Cell& c : cells) {
            min_x = std::min(min_x, c.x);
            min_y = std::min(min_y, c.y);
        }
        for (Cell& c : cells) {
            c.x -= min_x;
            c.y -= min_y;
        }
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

        Polyomino p;
        for (const Cell& c : cells) {
            p.width_ = std::max(p.width_, c.x + 1);
            p.height_ = std::max(p.height_, c.y + 1);
        }
        p.cells_ = std::move(cells);
        p.index_.assign(std::size_t(p.width_) * p.height_, -1);
        for (std::size_t i = 0; i < p.cells_.size(); ++i)
            p.index_[p.slot(p.cells_[i])] = int(i);
        if (!p.connected())
            throw error(errc::not_connected, "cells are not joined by their sides");
        return p;
    }

    const std::vector<Cell>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    int width() const { return width_; }
    int height() const { return height_; }

    const Cell& cell(std::size_t i) const { return cells_[i]; }

    int index_of(Cell c) const {
        if (c.x < 0 || c.y < 0 || c.x >= width_ || c.y >= height_)
            return -1;
        return index_[slot(c)];
    }

    bool contains(Cell c) const { return index_of(c) >= 0; }

    // Index of the side neighbour of cell i, or -1.
    int neighbor(std::size_t i, Dir d) const { return index_of(step(cells_[i], d)); }

    // Number of cells among the four that meet at grid vertex (gx, gy), original units.
    int cells_around(int gx, int gy) const {
        return contains({gx - 1, gy - 1}) + contains({gx, gy - 1}) + contains({gx - 1, gy}) +
               contains({gx, gy});
    }

    // Corner of the boundary: one or three of the four surrounding cells are present.
    bool is_corner(GPoint g) const {
        if (!is_grid_vertex(g))
            return false;
        const int n = cells_around(g.x / 2, g.y / 2);
        return n == 1 || n == 3;
    }

    bool operator==(const Polyomino& o) const { return cells_ == o.cells_; }

private:
    std::size_t slot(Cell c) const { return std::size_t(c.y) * width_ + c.x; }

    bool connected() const {
        std::vector<char> seen(cells_.size(), 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            for (int d = 0; d < 4; ++d) {
                const int j = neighbor(i, Dir(d));
                if (j >= 0 && !seen[j]) {
                    seen[j] = 1;
                    ++reached;
                    stack.push_back(std::size_t(j));
                }
            }
        }
        return reached == cells_.size();
    }

    std::vector<Cell> cells_;
    std::vector<int> index_;
    int width_ = 0;
    int height_ = 0;
};

// Rows are listed top to bottom; '#' marks a cell.
inline Polyomino parse_ascii(std::string_view text) {
    std::vector<std::string> rows;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        rows.push_back(line);
    }
    while (!rows.empty() && rows.back().empty())
        rows.pop_back();
    std::vector<Cell> cells;
    const int h = int(rows.size());
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < int(rows[r].size()); ++c) {
            const char ch = rows[r][c];
            if (ch == '#')
                cells.push_back({c, h - 1 - r});
            else if (ch != '.')
                throw error(errc::bad_character,
                            "unexpected character '" + std::string(1, ch) + "' at row " + std::to_string(r + 1));
        }
    }
    return Polyomino::from_cells(std::move(cells));
}

// One "cell x y" line per cell.
inline Polyomino parse_cell_list(std::string_view text) {
    std::vector<Cell> cells;
    std::istringstream in{std::string(text)};
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag))
            continue;
        Cell c;
        std::string rest;
        if (tag != "cell" || !(ls >> c.x >> c.y) || (ls >> rest))
            throw error(errc::bad_character, "malformed cell line " + std::to_string(line_no));
        cells.push_back(c);
    }
    return Polyomino::from_cells(std::move(cells));
}

inline Polyomino parse_region(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text.substr(first).starts_with("cell"))
        return parse_cell_list(text);
    return parse_ascii(text);
}

inline std::string to_ascii(const Polyomino& p) {
    std::string out;
    for (int y = p.height() - 1; y >= 0; --y) {
        for (int x = 0; x < p.width(); ++x)
            out += p.contains({x, y}) ? '#' : '.';
        out += '\n';
    }
    return out;
}

inline std::string to_cell_list(const Polyomino& p) {
    std::string out;
    for (const Cell& c : p.cells())
        out += "cell " + std::to_string(c.x) + ' ' + std::to_string(c.y) + '\n';
    return out;
}

// Complement (inside a one-cell margin around the bounding box) is 4-connected.
inline bool is_simply_connected(const Polyomino& p) {
    const int w = p.width() + 2, h = p.height() + 2;
    auto filled = [&](int x, int y) { return p.contains({x - 1, y - 1}); };
    std::vector<char> seen(std::size_t(w) * h, 0);
    std::vector<std::pair<int, int>> stack{{0, 0}};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        for (int d = 0; d < 4; ++d) {
            const int nx = x + dir_dx[d], ny = y + dir_dy[d];
            if (nx < 0 || ny < 0 || nx >= w || ny >= h || filled(nx, ny))
                continue;
            auto& s = seen[std::size_t(ny) * w + nx];
            if (!s) {
                s = 1;
                ++reached;
                stack.push_back({nx, ny});
            }
        }
    }
    return reached + p.size() == std::size_t(w) * h;
}

// Each cell becomes an aligned 2x2 block.
inline Polyomino doubled(const Polyomino& s) {
    std::vector<Cell> cells;
    cells.reserve(4 * s.size());
    for (const Cell& c : s.cells())
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i)
                cells.push_back({2 * c.x + i, 2 * c.y + j});
    return Polyomino::from_cells(std::move(cells));
}

inline bool is_even(const Polyomino& p) {
    for (const Cell& c : p.cells()) {
        const int bx = c.x & ~1, by = c.y & ~1;
        if (!p.contains({bx, by}) || !p.contains({bx + 1, by}) || !p.contains({bx, by + 1}) ||
            !p.contains({bx + 1, by + 1}))
            return false;
    }
    return true;
}

inline Polyomino halve(const Polyomino& p) {
    if (!is_even(p))
        throw error(errc::not_even, "region is not made of aligned 2x2 blocks");
    std::vector<Cell> cells;
    for (const Cell& c : p.cells())
        if ((c.x & 1) == 0 && (c.y & 1) == 0)
            cells.push_back({c.x / 2, c.y / 2});
    return Polyomino::from_cells(std::move(cells));
}

struct BoundaryCycle {
    std::vector<GPoint> points;  // every lattice point on the boundary, counterclockwise
    std::vector<GPoint> corners; // the points where the direction changes
};

inline BoundaryCycle boundary(const Polyomino& p) {
    if (!is_simply_connected(p))
        throw error(errc::not_simply_connected, "region has a hole");
    // Directed boundary unit edges with the region on the left; one leaves each boundary vertex.
    const int w = p.width() + 1;
    std::vector<int> next_dir(std::size_t(w) * (p.height() + 1), -1);
    auto at = [&](int gx, int gy) -> int& { return next_dir[std::size_t(gy) * w + gx]; };
    for (const Cell& c : p.cells()) {
        if (!p.contains({c.x, c.y - 1}))
            at(c.x, c.y) = East;
        if (!p.contains({c.x + 1, c.y}))
            at(c.x + 1, c.y) = North;
        if (!p.contains({c.x, c.y + 1}))
            at(c.x + 1, c.y + 1) = West;
        if (!p.contains({c.x - 1, c.y}))
            at(c.x, c.y + 1) = South;
    }
    // The lexicographically least boundary vertex is a convex corner.
    const Cell first = p.cells().front();
    int gx = first.x, gy = first.y;
    BoundaryCycle out;
    int prev = at(gx, gy) == East ? South : West;
    do {
        const int d = at(gx, gy);
        ensure(d >= 0, "boundary trace left the boundary");
        out.points.push_back({2 * gx, 2 * gy});
        if (d != prev)
            out.corners.push_back({2 * gx, 2 * gy});
        prev = d;
        gx += dir_dx[d];
        gy += dir_dy[d];
    } while (gx != first.x || gy != first.y);
    ensure(out.corners.size() >= 4 && out.corners.size() % 2 == 0, "corner count must be even and at least 4");
    return out;
}

struct AdjacencyGraph {
    std::vector<GPoint> vertices;
    std::vector<std::pair<GPoint, GPoint>> edges;
};

inline std::vector<Edge> adjacency_edges(const Polyomino& p) {
    std::vector<Edge> edges;
    for (const Cell& c : p.cells()) {
        if (p.contains(step(c, East)))
            edges.emplace_back(c, step(c, East));
        if (p.contains(step(c, North)))
            edges.emplace_back(c, step(c, North));
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

inline AdjacencyGraph adjacency_graph(const Polyomino& p) {
    AdjacencyGraph g;
    for (const Cell& c : p.cells())
        g.vertices.push_back(c.center());
    for (const Edge& e : adjacency_edges(p))
        g.edges.emplace_back(e.a.center(), e.b.center());
    return g;
}

} // namespace polytour
