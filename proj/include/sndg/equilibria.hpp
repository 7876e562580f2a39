#ifndef SNDG_EQUILIBRIA_HPP
#define SNDG_EQUILIBRIA_HPP

#include "sndg/game.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace sndg {

struct EnumLimits {
    int path_cap = 10000;                       // per player, hard error beyond
    std::uint64_t profile_budget = 100000000;   // product of path counts
};

// Canonical strategy space: per-player simple paths in lexicographic order.
struct StrategySpace {
    std::vector<std::vector<Path>> paths;
    std::uint64_t profile_count = 0;

    int player_count() const { return static_cast<int>(paths.size()); }
};

StrategySpace enumerate_strategies(const Game& game, const EnumLimits& limits = {});

// Profiles in canonical order: the index tuple is incremented with the last
// player fastest, i.e. lexicographic over (choice_0, ..., choice_{k-1}).
// Returns the materialized profile for each index tuple.
void for_each_profile(const StrategySpace& space,
                      const std::function<void(const std::vector<int>&, const StrategyProfile&)>& fn);

StrategyProfile profile_at(const StrategySpace& space, const std::vector<int>& choice);

struct BestResponse {
    int player = 0;
    Path path;       // canonical-least minimum-cost path
    EpsCost cost;    // player's cost after unilaterally switching to `path`
};

// Minimum-cost reply of player i against the rest of the profile, computed as
// a shortest path under weights c_e / (load_without_i(e) + 1). Weights are
// positive, so a minimum-weight walk is a simple path. Among equal-cost
// replies, the lexicographically least edge sequence is returned.
BestResponse best_response(const Game& game, const StrategyProfile& profile, int player);

bool is_nash(const Game& game, const StrategyProfile& profile);

enum class EquilibriumKind { nash, potential_minimum, social_optimum };

struct EquilibriumSet {
    EquilibriumKind kind{};
    std::vector<StrategyProfile> profiles;  // canonical order
    EpsCost value;                          // minimized cost (optimum) or potential
};

// Exhaustive computations over the full profile space.
EquilibriumSet all_nash(const Game& game, const EnumLimits& limits = {});
EquilibriumSet social_optimum(const Game& game, const EnumLimits& limits = {});
EquilibriumSet potential_minima(const Game& game, const EnumLimits& limits = {});

// One-pass exhaustive analysis.
struct GameAnalysis {
    std::vector<std::uint64_t> path_counts;
    std::uint64_t profile_count = 0;

    std::vector<StrategyProfile> optima;
    EpsCost optimum_cost;

    std::vector<StrategyProfile> nash;
    EpsCost nash_min_cost;
    EpsCost nash_max_cost;

    std::vector<StrategyProfile> minima;  // potential minima
    EpsCost min_potential;
    EpsCost minima_min_cost;
    EpsCost minima_max_cost;
};

GameAnalysis analyze_game(const Game& game, const EnumLimits& limits = {});

enum class Schedule { round_robin, seeded_random };

struct DynamicsStep {
    int player = 0;
    Path from;
    Path to;
    EpsCost delta;      // strictly negative cost change for the mover
    EpsCost phi_after;  // potential after the step
};

struct DynamicsTrace {
    std::vector<DynamicsStep> steps;
    StrategyProfile terminal;
};

// Iterated strict best responses until no player improves. The potential
// strictly decreases each step, so termination is guaranteed; max_steps
// exhaustion therefore signals a bug and raises BudgetError.
DynamicsTrace best_response_dynamics(const Game& game, const StrategyProfile& start,
                                     Schedule schedule, std::uint64_t seed,
                                     std::uint64_t max_steps = 100000);

}  // namespace sndg

#endif
