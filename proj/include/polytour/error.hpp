#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polytour {

enum class errc {
    empty_region,
    not_connected,
    bad_character,
    not_even,
    not_simply_connected,
    degree_violation,
    foreign_edge,
    parity_violation,
    not_well_formed,
    coloring_contradiction,
    cycle_not_innermost,
    single_cycle,
    not_turn_even,
    not_a_tour,
    not_spanning_tree,
    not_regular,
    budget_exceeded,
    theorem_violation,
    proposition_violation,
    malformed_input,
    invariant_failure,
};

constexpr std::string_view to_string(errc code) {
    switch (code) {
    case errc::empty_region: return "EmptyRegion";
    case errc::not_connected: return "NotConnected";
    case errc::bad_character: return "BadCharacter";
    case errc::not_even: return "NotEven";
    case errc::not_simply_connected: return "NotSimplyConnected";
    case errc::degree_violation: return "DegreeViolation";
    case errc::foreign_edge: return "ForeignEdge";
    case errc::parity_violation: return "ParityViolation";
    case errc::not_well_formed: return "NotWellFormed";
    case errc::coloring_contradiction: return "ColoringContradiction";
    case errc::cycle_not_innermost: return "CycleNotInnermost";
    case errc::single_cycle: return "SingleCycle";
    case errc::not_turn_even: return "NotTurnEven";
    case errc::not_a_tour: return "NotATour";
    case errc::not_spanning_tree: return "NotSpanningTree";
    case errc::not_regular: return "NotRegular";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::theorem_violation: return "TheoremViolation";
    case errc::proposition_violation: return "PropositionViolation";
    case errc::malformed_input: return "MalformedInput";
    case errc::invariant_failure: return "InvariantFailure";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// Internal consistency checks that hold for every valid input.
inline void ensure(bool condition, const char* what) {
    if (!condition)
        throw error(errc::invariant_failure, what);
}

} // namespace polytour
