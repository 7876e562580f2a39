#ifndef SNDG_BOUNDS_HPP
#define SNDG_BOUNDS_HPP

#include "sndg/equilibria.hpp"

#include <string>
#include <vector>

namespace sndg {

// Closed-form upper bound on the potential-optimal price of anarchy (and
// hence the price of stability) for k >= 2 players:
//   f(k) = B/(1+B) * H_k  with  B = k^3(k+1)/2 - k^2.
Rational theorem_bound(int k);

// 1 - f(k)/H_k = 1/(1+B); of order 2/k^4.
Rational theorem_gap_factor(int k);

// Coefficient relating partially-shared equilibrium cost to partially-shared
// optimum cost: k^2(k+1)/2 - k.
Rational lemma1_factor(int k);

// beta*k/(1+beta*k) * H_k for beta > 0.
Rational lemma2_bound(const Rational& beta, int k);

struct LemmaOneReport {
    bool applicable = false;  // O has at least one edge shared by all players
    Rational factor;
    EpsCost lhs;   // cost of equilibrium edges used by fewer than k players
    EpsCost rhs;   // factor times the optimum counterpart
    bool holds = false;
};

// Verifies the partial-usage inequality on a concrete instance. N must be a
// Nash equilibrium and O a social optimum (PreconditionError otherwise).
LemmaOneReport lemma1_check(const Game& game, const StrategyProfile& nash,
                            const StrategyProfile& optimum, const EnumLimits& limits = {});

struct LemmaTwoReport {
    Rational beta;
    bool phi_antecedent = false;    // potential(N) <= potential(O)
    bool usage_antecedent = false;  // partial usage of N <= beta * partial usage of O
    Rational bound_factor;          // lemma2_bound(beta, k)
    bool conclusion = false;        // cost(N) <= bound_factor * cost(O)
    bool implication_holds = false; // antecedents => conclusion
    EpsCost potential_nash, potential_optimum;
    EpsCost cost_nash, cost_optimum;
};

// Instantiates beta with lemma1_factor(k) and reports each antecedent and the
// conclusion separately.
LemmaTwoReport lemma2_check(const Game& game, const StrategyProfile& nash,
                            const StrategyProfile& optimum);

struct HkMinusOneReport {
    Rational coefficient;  // H_{k-1}
    EpsCost cost_nash, cost_optimum;
    bool holds = false;
};

// cost(N) <= H_{k-1} * cost(O) for the branch where no optimum edge is shared
// by all players. PreconditionError if some edge is, or potential(N) exceeds
// potential(O).
HkMinusOneReport hk_minus1_check(const Game& game, const StrategyProfile& nash,
                                 const StrategyProfile& optimum);

struct MajorTreeOrder {
    std::vector<int> order;    // player indices, major-tree order
    std::vector<int> o_plus;   // edge ids of the larger tree
    std::vector<int> o_minus;  // edge ids of the smaller tree
    std::vector<int> o_k;      // edge ids shared by all players
    std::vector<int> walk;     // closed walk over o_plus (vertex sequence)
};

// Splits a forest-shaped optimum with a fully-shared edge into its two
// terminal trees and orders the players along a depth-first closed walk of
// the larger tree. StructureError when the split does not exist.
MajorTreeOrder major_tree_order(const Game& game, const StrategyProfile& optimum);

enum class DeviationDirection { successor, predecessor };

struct DeviationCertificate {
    Path path;                      // the constructed simple deviation path
    std::vector<int> optimum_overlap;  // its edges inside the optimum network
    bool edge_property = false;     // every edge in neighbor's N-path or outside O^k
    EpsCost lhs, rhs;               // exchange inequality, lhs <= rhs
    bool inequality_holds = false;
    int junction_first = -1, junction_last = -1;
    bool reversed_neighbor = false;
};

// Builds the deviation path of player i through her successor's (or
// predecessor's) optimum and equilibrium paths, reduces it to a simple path,
// and certifies the edge property together with the exchange inequality.
// Undirected games only; requires a fully-shared optimum edge.
DeviationCertificate deviation_path(const Game& game, const StrategyProfile& nash,
                                    const StrategyProfile& optimum, int player,
                                    DeviationDirection direction);

struct RatioValue {
    Rational limit;      // value of the ratio as eps tends to 0 from above
    int direction = 0;   // -1/0/+1: ratio approaches the limit from below/exactly/above
    EpsCost numerator;
    EpsCost denominator;
};

RatioValue make_ratio(const EpsCost& numerator, const EpsCost& denominator);

struct RatioReport {
    RatioValue pos, poa, popos, popoa;
    bool chain_holds = false;  // pos <= popos <= popoa <= poa, exactly
    StrategyProfile optimum, best_nash, worst_nash, best_minimum, worst_minimum;
};

// The four inefficiency ratios from an exhaustive analysis.
// DegenerateError if the optimum cost has a zero constant term.
RatioReport inefficiency_ratios(const Game& game, const EnumLimits& limits = {});
RatioReport inefficiency_ratios(const Game& game, const GameAnalysis& analysis);

// Applies a player permutation: players[i] of the result is players[order[i]]
// of the input (profiles are permuted the same way).
Game permute_players(const Game& game, const std::vector<int>& order);
StrategyProfile permute_players(const StrategyProfile& profile, const std::vector<int>& order);

}  // namespace sndg

#endif
