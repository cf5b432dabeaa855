#pragma once

#include <polytour/error.hpp>
#include <polytour/pseudotour.hpp>
#include <polytour/region.hpp>
#include <polytour/turngraph.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace polytour {

enum class RenderFormat { Ascii, Svg };
enum class Layer { Region, Tour, TurnGraph, Tree };

struct RenderSpec {
    RenderFormat format = RenderFormat::Ascii;
    std::vector<Layer> layers;
    int scale = 24; // pixels per cell
};

inline Layer parse_layer(std::string_view name) {
    if (name == "region")
        return Layer::Region;
    if (name == "tour")
        return Layer::Tour;
    if (name == "turn-graph")
        return Layer::TurnGraph;
    if (name == "tree")
        return Layer::Tree;
    throw error(errc::malformed_input, "unknown layer '" + std::string(name) + "'");
}

namespace detail {

inline std::vector<Layer> ordered_layers(const RenderSpec& spec) {
    std::vector<Layer> layers = spec.layers;
    std::sort(layers.begin(), layers.end());
    layers.erase(std::unique(layers.begin(), layers.end()), layers.end());
    return layers;
}

inline const char* box_char(std::uint8_t m) {
    switch (m) {
    case (1 << East) | (1 << West): return "─";
    case (1 << North) | (1 << South): return "│";
    case (1 << East) | (1 << North): return "└";
    case (1 << East) | (1 << South): return "┌";
    case (1 << West) | (1 << North): return "┘";
    case (1 << West) | (1 << South): return "┐";
    default: return "?";
    }
}

inline std::string ascii_tour(const Pseudotour& e) {
    const Polyomino& p = e.region();
    std::string out;
    for (int y = p.height() - 1; y >= 0; --y) {
        std::string row;
        for (int x = 0; x < p.width(); ++x) {
            const int i = p.index_of({x, y});
            row += i < 0 ? " " : box_char(e.mask(std::size_t(i)));
        }
        while (!row.empty() && row.back() == ' ')
            row.pop_back();
        out += row + '\n';
    }
    return out;
}

inline std::string ascii_turn_graph(const TurnGraph& u) {
    const Polyomino& p = u.region();
    std::vector<std::string> rows(std::size_t(p.height()), std::string(std::size_t(p.width()), ' '));
    for (const Cell& c : p.cells())
        rows[std::size_t(p.height() - 1 - c.y)][std::size_t(c.x)] = '.';
    for (const DiagEdge& d : u.diagonals()) {
        auto [cx, cy] = d.cell();
        rows[std::size_t(p.height() - 1 - cy)][std::size_t(cx)] = d.rising() ? '/' : '\\';
    }
    std::string out;
    for (auto& r : rows) {
        while (!r.empty() && r.back() == ' ')
            r.pop_back();
        out += r + '\n';
    }
    return out;
}

// Cells as 'o', tree edges as '-' and '|', on a grid of doubled resolution.
inline std::string ascii_tree(const SpanningTree& tree) {
    const Polyomino& s = *tree.region;
    const int w = 2 * s.width() - 1, h = 2 * s.height() - 1;
    std::vector<std::string> rows(std::size_t(h), std::string(std::size_t(w), ' '));
    auto put = [&](int gx, int gy, char ch) { rows[std::size_t(h - 1 - gy)][std::size_t(gx)] = ch; };
    for (const Cell& c : s.cells())
        put(2 * c.x, 2 * c.y, 'o');
    for (const Edge& e : tree.edges)
        put(e.a.x + e.b.x, e.a.y + e.b.y, e.horizontal() ? '-' : '|');
    std::string out;
    for (auto& r : rows) {
        while (!r.empty() && r.back() == ' ')
            r.pop_back();
        out += r + '\n';
    }
    return out;
}

// Value given in half pixels.
inline std::string half_px(long twice) {
    std::string s = std::to_string(twice / 2);
    if (twice % 2)
        s += ".5";
    return s;
}

} // namespace detail

// Deterministic rendering of a region and, optionally, a pseudotour on it.
// Turn-graph and tree layers are derived from the pseudotour.
inline std::string render(const Polyomino& region, const std::optional<Pseudotour>& tour, const RenderSpec& spec) {
    const auto layers = detail::ordered_layers(spec);
    if (layers.empty())
        throw error(errc::malformed_input, "no layers requested");
    if (spec.format == RenderFormat::Svg && spec.scale < 4)
        throw error(errc::malformed_input, "svg scale must be at least 4");
    for (Layer l : layers)
        if (l != Layer::Region && !tour)
            throw error(errc::malformed_input, "tour, turn-graph and tree layers need a tour input");
    std::optional<SpanningTree> tree;
    if (std::find(layers.begin(), layers.end(), Layer::Tree) != layers.end()) {
        if (!is_regular(*tour))
            throw error(errc::malformed_input, "tree layer needs a regular tour");
        tree = spanning_tree_from_regular_tour(*tour);
    }

    if (spec.format == RenderFormat::Ascii) {
        std::string out;
        for (Layer l : layers) {
            if (!out.empty())
                out += '\n';
            switch (l) {
            case Layer::Region: out += to_ascii(region); break;
            case Layer::Tour: out += detail::ascii_tour(*tour); break;
            case Layer::TurnGraph: out += detail::ascii_turn_graph(build_turn_graph(*tour)); break;
            case Layer::Tree: out += detail::ascii_tree(*tree); break;
            }
        }
        return out;
    }

    // SVG: y axis flipped; doubled coordinates map to half-cell steps.
    const long s = spec.scale, margin = spec.scale;
    const long width_px = 2 * margin + region.width() * s, height_px = 2 * margin + region.height() * s;
    auto px = [&](int dx) { return detail::half_px(2 * margin + dx * s); };
    auto py = [&](int dy) { return detail::half_px(2 * margin + (2L * region.height() - dy) * s); };
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width_px << "\" height=\""
       << height_px << "\" viewBox=\"0 0 " << width_px << ' ' << height_px << "\">\n";
    for (Layer l : layers) {
        switch (l) {
        case Layer::Region:
            os << "<g class=\"region\" fill=\"#eeeeee\" stroke=\"#999999\" stroke-width=\"1\">\n";
            for (const Cell& c : region.cells())
                os << "<rect x=\"" << px(2 * c.x) << "\" y=\"" << py(2 * c.y + 2) << "\" width=\"" << s
                   << "\" height=\"" << s << "\"/>\n";
            os << "</g>\n";
            break;
        case Layer::Tour:
            os << "<g class=\"tour\" fill=\"none\" stroke=\"#1f4fd8\" stroke-width=\"2\">\n";
            for (const auto& cyc : cycles(*tour)) {
                os << "<polyline points=\"";
                for (std::size_t i = 0; i <= cyc.size(); ++i) {
                    const GPoint g = cyc[i % cyc.size()].center();
                    os << (i ? " " : "") << px(g.x) << ',' << py(g.y);
                }
                os << "\"/>\n";
            }
            os << "</g>\n";
            break;
        case Layer::TurnGraph: {
            os << "<g class=\"turn-graph\" stroke=\"#d81f1f\" stroke-width=\"2\">\n";
            const TurnGraph u = build_turn_graph(*tour);
            for (const DiagEdge& d : u.diagonals())
                os << "<line x1=\"" << px(d.a().x) << "\" y1=\"" << py(d.a().y) << "\" x2=\"" << px(d.b().x)
                   << "\" y2=\"" << py(d.b().y) << "\"/>\n";
            os << "</g>\n";
            break;
        }
        case Layer::Tree:
            // Tree vertices sit at block centres of the doubled region: S cell (x, y) -> doubled (4x+2, 4y+2).
            os << "<g class=\"tree\" stroke=\"#1f9d3a\" stroke-width=\"3\">\n";
            for (const Edge& e : tree->edges)
                os << "<line x1=\"" << px(4 * e.a.x + 2) << "\" y1=\"" << py(4 * e.a.y + 2) << "\" x2=\""
                   << px(4 * e.b.x + 2) << "\" y2=\"" << py(4 * e.b.y + 2) << "\"/>\n";
            os << "</g>\n";
            break;
        }
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace polytour
