#pragma once

#include <polytour/error.hpp>
#include <polytour/geometry.hpp>
#include <polytour/region.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace polytour {

using RegionPtr = std::shared_ptr<const Polyomino>;

inline RegionPtr share(Polyomino p) { return std::make_shared<const Polyomino>(std::move(p)); }

// A set of unit edges between cell centres of a region. Valid pseudotours
// give every cell degree two; arbitrary edge sets are representable so that
// validate() can report what is wrong with them.
class Pseudotour {
public:
    Pseudotour() = default;

    explicit Pseudotour(RegionPtr region)
        : region_(std::move(region)), masks_(region_->size(), 0) {}

    static Pseudotour from_edges(RegionPtr region, std::span<const Edge> edges) {
        Pseudotour e(std::move(region));
        for (const Edge& edge : edges)
            e.insert(edge);
        return e;
    }

    const Polyomino& region() const { return *region_; }
    const RegionPtr& region_ptr() const { return region_; }

    // Bit d of mask(i) is set when cell i has an edge in direction d.
    std::uint8_t mask(std::size_t i) const { return masks_[i]; }
    int degree(std::size_t i) const { return std::popcount(unsigned(masks_[i])); }

    bool has_edge(Cell c, Dir d) const {
        const int i = region_->index_of(c);
        return i >= 0 && (masks_[i] >> d & 1);
    }

    bool contains(const Edge& e) const {
        if (!e.is_unit())
            return std::binary_search(foreign_.begin(), foreign_.end(), e);
        return has_edge(e.a, e.horizontal() ? East : North);
    }

    void insert(const Edge& e) {
        const int i = region_->index_of(e.a), j = region_->index_of(e.b);
        if (i < 0 || j < 0 || !e.is_unit()) {
            auto it = std::lower_bound(foreign_.begin(), foreign_.end(), e);
            if (it == foreign_.end() || *it != e)
                foreign_.insert(it, e);
            return;
        }
        const Dir d = e.horizontal() ? East : North;
        masks_[i] |= std::uint8_t(1u << d);
        masks_[j] |= std::uint8_t(1u << opposite(d));
    }

    void erase(const Edge& e) {
        const int i = region_->index_of(e.a), j = region_->index_of(e.b);
        if (i < 0 || j < 0 || !e.is_unit()) {
            auto it = std::lower_bound(foreign_.begin(), foreign_.end(), e);
            if (it != foreign_.end() && *it == e)
                foreign_.erase(it);
            return;
        }
        const Dir d = e.horizontal() ? East : North;
        masks_[i] &= std::uint8_t(~(1u << d));
        masks_[j] &= std::uint8_t(~(1u << opposite(d)));
    }

    const std::vector<Edge>& foreign_edges() const { return foreign_; }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (std::size_t i = 0; i < masks_.size(); ++i) {
            const Cell c = region_->cell(i);
            if (masks_[i] >> East & 1)
                out.emplace_back(c, step(c, East));
            if (masks_[i] >> North & 1)
                out.emplace_back(c, step(c, North));
        }
        out.insert(out.end(), foreign_.begin(), foreign_.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (auto m : masks_)
            n += std::popcount(unsigned(m));
        return n / 2 + foreign_.size();
    }

    friend bool operator==(const Pseudotour& a, const Pseudotour& b) {
        return a.masks_ == b.masks_ && a.foreign_ == b.foreign_ &&
               (a.region_ == b.region_ || *a.region_ == *b.region_);
    }

private:
    RegionPtr region_;
    std::vector<std::uint8_t> masks_;
    std::vector<Edge> foreign_;
};

struct Violation {
    errc kind;
    std::string message;
};

inline std::optional<Violation> validate(const Pseudotour& e) {
    if (!e.foreign_edges().empty()) {
        const Edge& f = e.foreign_edges().front();
        std::ostringstream os;
        os << "edge " << f.a << " -- " << f.b << " does not join side-adjacent cells of the region";
        return Violation{errc::foreign_edge, os.str()};
    }
    for (std::size_t i = 0; i < e.region().size(); ++i) {
        if (e.degree(i) != 2) {
            std::ostringstream os;
            os << "cell " << e.region().cell(i) << " has degree " << e.degree(i);
            return Violation{errc::degree_violation, os.str()};
        }
    }
    return std::nullopt;
}

inline void require_valid(const Pseudotour& e) {
    if (auto v = validate(e))
        throw error(v->kind, v->message);
}

// Cycles in traversal order, each starting at its least cell and heading to
// that cell's lesser neighbour; cycles are ordered by their least cell.
inline std::vector<std::vector<Cell>> cycles(const Pseudotour& e) {
    require_valid(e);
    const Polyomino& p = e.region();
    std::vector<char> seen(p.size(), 0);
    std::vector<std::vector<Cell>> out;
    for (std::size_t start = 0; start < p.size(); ++start) {
        if (seen[start])
            continue;
        std::vector<Cell> cycle;
        int prev = -1;
        int cur = int(start);
        // The lesser neighbour comes first because cells are sorted.
        int first_next = -1;
        for (int d = 0; d < 4; ++d)
            if (e.mask(start) >> d & 1) {
                const int n = p.neighbor(start, Dir(d));
                if (first_next < 0 || n < first_next)
                    first_next = n;
            }
        while (!seen[cur]) {
            seen[cur] = 1;
            cycle.push_back(p.cell(cur));
            int next = -1;
            if (prev < 0) {
                next = first_next;
            } else {
                for (int d = 0; d < 4; ++d)
                    if (e.mask(cur) >> d & 1) {
                        const int n = p.neighbor(cur, Dir(d));
                        if (n != prev) {
                            next = n;
                            break;
                        }
                    }
            }
            prev = cur;
            cur = next;
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

// Number of cycles, without materializing them.
inline int cycle_count(const Pseudotour& e) {
    const Polyomino& p = e.region();
    std::vector<int> parent(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        parent[i] = int(i);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    int components = int(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        for (Dir d : {East, North})
            if (e.mask(i) >> d & 1) {
                const int a = find(int(i)), b = find(p.neighbor(i, d));
                if (a != b) {
                    parent[a] = b;
                    --components;
                }
            }
    return components;
}

struct Turn {
    Cell v;
    Cell u1;
    Cell u2;
};

inline bool is_turn_mask(std::uint8_t m) {
    const bool h = (m >> East & 1) || (m >> West & 1);
    const bool v = (m >> North & 1) || (m >> South & 1);
    return std::popcount(unsigned(m)) == 2 && h && v;
}

inline std::vector<Turn> turns(const Pseudotour& e) {
    std::vector<Turn> out;
    for (std::size_t i = 0; i < e.region().size(); ++i) {
        const std::uint8_t m = e.mask(i);
        if (!is_turn_mask(m))
            continue;
        const Cell v = e.region().cell(i);
        const Dir h = (m >> East & 1) ? East : West;
        const Dir vert = (m >> North & 1) ? North : South;
        out.push_back({v, step(v, h), step(v, vert)});
    }
    return out;
}

inline int turn_count(const Pseudotour& e) {
    int t = 0;
    for (std::size_t i = 0; i < e.region().size(); ++i)
        t += is_turn_mask(e.mask(i));
    return t;
}

struct TourStats {
    int s = 0; // cycles
    int t = 0; // turns

    friend bool operator==(const TourStats&, const TourStats&) = default;
};

inline TourStats stats(const Pseudotour& e) {
    require_valid(e);
    return {cycle_count(e), turn_count(e)};
}

inline bool is_tour(const Pseudotour& e) { return !validate(e) && cycle_count(e) == 1; }

// Tour format: one cycle per line, "x,y" cells in traversal order.
inline std::string write_tour(const Pseudotour& e) {
    std::string out;
    for (const auto& cycle : cycles(e)) {
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (i)
                out += ' ';
            out += std::to_string(cycle[i].x) + ',' + std::to_string(cycle[i].y);
        }
        out += '\n';
    }
    return out;
}

// The region is the set of cells named in the file (translation-normalized).
// Lines starting with '#' are comments.
inline Pseudotour parse_tour(std::string_view text) {
    std::vector<std::vector<Cell>> lines;
    std::istringstream in{std::string(text)};
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (line.starts_with('#'))
            continue;
        std::istringstream ls(line);
        std::vector<Cell> cycle;
        for (std::string tok; ls >> tok;) {
            const auto comma = tok.find(',');
            Cell c;
            try {
                std::size_t used_x = 0, used_y = 0;
                if (comma == std::string::npos)
                    throw std::invalid_argument("missing comma");
                c.x = std::stoi(tok.substr(0, comma), &used_x);
                c.y = std::stoi(tok.substr(comma + 1), &used_y);
                if (used_x != comma || used_y != tok.size() - comma - 1)
                    throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw error(errc::malformed_input,
                            "bad cell '" + tok + "' on line " + std::to_string(line_no));
            }
            cycle.push_back(c);
        }
        if (cycle.empty())
            continue;
        if (cycle.size() < 4)
            throw error(errc::malformed_input, "cycle on line " + std::to_string(line_no) + " is too short");
        lines.push_back(std::move(cycle));
    }
    if (lines.empty())
        throw error(errc::malformed_input, "no cycles");
    std::vector<Cell> all;
    for (const auto& l : lines)
        all.insert(all.end(), l.begin(), l.end());
    std::vector<Cell> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
        throw error(errc::malformed_input,
                    "cell " + std::to_string(dup->x) + "," + std::to_string(dup->y) + " is visited twice");
    const int min_x = std::min_element(all.begin(), all.end(), [](Cell a, Cell b) { return a.x < b.x; })->x;
    const int min_y = std::min_element(all.begin(), all.end(), [](Cell a, Cell b) { return a.y < b.y; })->y;
    RegionPtr region = share(Polyomino::from_cells(all));
    Pseudotour e(region);
    for (const auto& l : lines)
        for (std::size_t i = 0; i < l.size(); ++i) {
            const Cell a{l[i].x - min_x, l[i].y - min_y};
            const Cell b{l[(i + 1) % l.size()].x - min_x, l[(i + 1) % l.size()].y - min_y};
            e.insert(Edge(a, b));
        }
    return e;
}

} // namespace polytour
