#ifndef SNDG_GENERATORS_HPP
#define SNDG_GENERATORS_HPP

#include "sndg/instance_io.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace sndg {

// Directed family whose price of stability tends to H_k: private arcs of
// cost 1/i from each source to the sink, a pure-eps arc from each source
// into a shared hub, and a hub-sink arc of cost 1+eps. k >= 2.
Game directed_hk_family(int k);

struct RandomGameParams {
    int min_vertices = 2;
    int max_vertices = 5;
    int max_extra_edges = 3;   // on top of a random spanning tree
    int min_players = 1;
    int max_players = 3;
    int max_cost = 30;
    int eps_coeff_percent = 10;     // chance an edge cost carries an eps term
    int pure_eps_percent = 5;       // chance an edge cost is a pure eps
    int shared_terminals_percent = 50;  // chance all players share one pair
};

// Deterministic seeded instance generator for sweeps; always yields a game
// that passes validate_game.
Game random_game(std::uint64_t seed, const RandomGameParams& params = {});

// Single named claim verdict of a reconstruction checker.
struct ClaimVerdict {
    std::string claim;
    bool holds = false;
    std::string detail;
};

struct FigAClaims {
    bool all_hold = false;
    std::vector<ClaimVerdict> items;
};

// Exhaustively verifies every checkable claim the three-player tight example
// must satisfy: optimum structure and cost 700+3eps, unique potential minimum
// of cost 1144, potential comparisons of every rejected three-edge profile
// class, price of stability 1 and potential-optimal ratios 286/175.
FigAClaims check_fig_a_claims(const Game& game);

// Constrained search over four-vertex topologies with the fixed cost multiset
// {209+eps, 209+eps, 282+eps, 374, 374, 396}; returns the unique normalized
// instance passing check_fig_a_claims. ReconstructionError if none exists.
Instance reconstruct_fig_a();

struct FigBResult {
    Instance instance;
    bool exact_match = false;      // reproduces the published 1769/1126 sums
    Rational pos_limit;            // price of stability of the emitted instance
    std::uint64_t evaluations = 0; // exact cost-vector evaluations spent
    std::string report;
};

// Best-effort reconstruction of the three-player lower-bound instance:
// five vertices, one direct edge per player forming the unique Nash
// equilibrium (total 1769) and a spanning forest carrying the social optimum
// (total 1126). Warm starts recorded from earlier search runs are verified
// first; otherwise a seeded hill-climbing search runs within the budget and
// the best instance with a unique Nash equilibrium and PoS > 74/48 is
// emitted.
FigBResult reconstruct_fig_b(std::uint64_t budget = 1000000, std::uint64_t seed = 1);

}  // namespace sndg

#endif
