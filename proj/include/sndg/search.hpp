#ifndef SNDG_SEARCH_HPP
#define SNDG_SEARCH_HPP

#include "sndg/bounds.hpp"
#include "sndg/instance_io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sndg {

struct CostSlot {
    int edge = 0;
    long long min_value = 1;
    long long max_value = 2000;
};

enum class SearchObjective { maximize_pos, maximize_popos, match_targets };

struct TargetSpec {
    std::string name;  // pos | poa | popos | popoa
    Rational value;
};

// A fixed topology with mutable integer cost slots, an objective, and a
// seeded evaluation budget. The eps coefficients of the skeleton's costs are
// kept as-is; only the constant terms in the slots move.
struct SearchSpec {
    Instance skeleton;
    std::vector<CostSlot> slots;
    SearchObjective objective = SearchObjective::maximize_pos;
    std::vector<TargetSpec> targets;
    std::uint64_t budget = 10000;
    std::uint64_t seed = 1;
    EnumLimits limits;
};

struct SearchImprovement {
    std::uint64_t evaluation = 0;  // 1-based evaluation index
    Rational objective;
};

struct SearchResult {
    Instance best;
    bool feasible = false;
    Rational best_objective;   // ratio limit, or minus the target distance
    std::uint64_t evaluations = 0;
    std::vector<SearchImprovement> improvements;
};

// Seeded hill climbing with restarts over the integer cost slots; every
// candidate is evaluated with the exact analyzer. Deterministic for a fixed
// (spec, seed). BudgetError if no feasible assignment was found at all.
SearchResult search_costs(const SearchSpec& spec);

// JSON spec: {"instance": "<instance text>", "slots": [{"edge","min","max"}],
// "objective": "maximize-pos"|"maximize-popos"|"match-targets",
// "targets": [{"name","value"}], "budget", "seed", "max_paths",
// "profile_budget"}. Throws ArgumentError or ParseError.
SearchSpec parse_search_spec(const std::string& json_text);

}  // namespace sndg

#endif
