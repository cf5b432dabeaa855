#pragma once

#include <polytour/oracle.hpp>
#include <polytour/region.hpp>

#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace polytour {

inline constexpr int verify_cell_cap = 8;

inline std::string shape_hash(const Polyomino& p) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : to_cell_list(p)) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Free, hole-free base regions with 1..max_cells cells.
inline std::vector<Polyomino> theorem_corpus(int max_cells) {
    std::vector<Polyomino> out;
    for (int n = 1; n <= max_cells; ++n)
        for (Polyomino& p : enumerate_polyominoes(n, true))
            if (is_simply_connected(p))
                out.push_back(std::move(p));
    return out;
}

struct CorpusOptions {
    int max_cells = 6;
    int proposition_max_cells = 5;
    unsigned jobs = 1;
    EnumerationLimits limits;
};

struct InstanceResult {
    Polyomino shape;
    std::string hash;
    TheoremReport theorem;
    std::optional<PropositionReport> proposition;
    std::string error; // budget or other failure to complete

    bool passed() const {
        return error.empty() && theorem.passed && (!proposition || proposition->passed);
    }
};

inline InstanceResult verify_instance(const Polyomino& s, const CorpusOptions& opts) {
    InstanceResult r;
    r.shape = s;
    r.hash = shape_hash(s);
    try {
        r.theorem = verify_theorem(s, opts.limits);
        if (int(s.size()) <= opts.proposition_max_cells)
            r.proposition = verify_proposition(share(doubled(s)), opts.limits);
    } catch (const error& e) {
        r.error = e.what();
    }
    return r;
}

inline std::vector<InstanceResult> run_corpus(const CorpusOptions& opts) {
    if (opts.max_cells < 1 || opts.max_cells > verify_cell_cap)
        throw error(errc::budget_exceeded,
                    "corpus size " + std::to_string(opts.max_cells) + " outside 1.." + std::to_string(verify_cell_cap));
    const auto corpus = theorem_corpus(opts.max_cells);
    std::vector<InstanceResult> results(corpus.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < corpus.size();)
            results[i] = verify_instance(corpus[i], opts);
    };
    const unsigned jobs = std::max(1u, opts.jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    return results;
}

inline std::string result_line(const InstanceResult& r) {
    std::string line = "shape=" + r.hash + " cells=" + std::to_string(r.shape.size()) +
                       " t_min=" + std::to_string(r.theorem.t_min) + " tours=" + std::to_string(r.theorem.tour_count) +
                       " regular_witnesses=" + std::to_string(r.theorem.regular_witness_count) + "/" +
                       std::to_string(r.theorem.witness_count);
    if (r.proposition)
        line += " pseudotours=" + std::to_string(r.proposition->pseudotour_count) +
                " pseudo_t_min=" + std::to_string(r.proposition->t_min);
    line += r.passed() ? " pass" : " FAIL";
    if (!r.error.empty())
        line += " (" + r.error + ")";
    else if (!r.theorem.passed)
        line += " (" + r.theorem.failure + ")";
    return line;
}

inline nlohmann::json summary_json(const CorpusOptions& opts, const std::vector<InstanceResult>& results) {
    nlohmann::json j;
    j["max_cells"] = opts.max_cells;
    j["proposition_max_cells"] = opts.proposition_max_cells;
    std::size_t passed = 0, cyclic_regular = 0;
    nlohmann::json items = nlohmann::json::array();
    for (const auto& r : results) {
        passed += r.passed();
        cyclic_regular += r.theorem.cyclic_regular_count;
        nlohmann::json it;
        it["shape"] = r.hash;
        it["ascii"] = to_ascii(r.shape);
        it["cells"] = r.shape.size();
        it["t_min"] = r.theorem.t_min;
        it["t_min_regular"] = r.theorem.t_min_regular;
        it["tours"] = r.theorem.tour_count;
        it["regular_tours"] = r.theorem.regular_count;
        it["witnesses"] = r.theorem.witness_count;
        it["regular_witnesses"] = r.theorem.regular_witness_count;
        it["irregular_improved"] = r.theorem.irregular_improved;
        it["cyclic_regular_turn_graphs"] = r.theorem.cyclic_regular_count;
        if (r.proposition) {
            it["pseudotours"] = r.proposition->pseudotour_count;
            it["pseudotour_t_min"] = r.proposition->t_min;
            it["pseudotour_witnesses_turn_even"] = r.proposition->turn_even_witnesses;
        }
        it["passed"] = r.passed();
        if (!r.error.empty())
            it["error"] = r.error;
        items.push_back(std::move(it));
    }
    j["instances"] = results.size();
    j["passed"] = passed;
    j["failed"] = results.size() - passed;
    j["cyclic_regular_turn_graphs"] = cyclic_regular;
    j["results"] = std::move(items);
    return j;
}

} // namespace polytour
