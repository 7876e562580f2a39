#ifndef SNDG_GAME_HPP
#define SNDG_GAME_HPP

#include "sndg/eps_cost.hpp"

#include <string>
#include <vector>

namespace sndg {

struct Edge {
    int u = 0;
    int v = 0;
    EpsCost cost;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Player {
    int source = 0;
    int target = 0;

    friend bool operator==(const Player&, const Player&) = default;
};

// A Shapley network design game: a graph (parallel edges allowed, optionally
// directed) with positive edge costs and one terminal pair per player.
// Immutable after construction; all operations below are pure functions.
struct Game {
    int vertex_count = 0;
    bool directed = false;
    std::vector<Edge> edges;
    std::vector<Player> players;

    int player_count() const { return static_cast<int>(players.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    // Endpoint of edge e opposite to vertex `from`.
    int other_end(int e, int from) const {
        const Edge& ed = edges[e];
        return ed.u == from ? ed.v : ed.u;
    }

    // Edge ids incident to each vertex (outgoing only in directed mode),
    // ascending, so traversals in id order are canonical.
    std::vector<std::vector<int>> adjacency() const;

    friend bool operator==(const Game&, const Game&) = default;
};

// A strategy: edge ids forming a simple path from the player's source to her
// target. The empty path is the unique strategy of a player with source ==
// target.
using Path = std::vector<int>;

struct StrategyProfile {
    std::vector<Path> paths;

    friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

// Per-edge player counts; load(e) == 0 means no player uses e.
struct LoadMap {
    std::vector<int> loads;

    int load(int e) const { return loads[e]; }
};

// totals[j] = total cost of edges used by exactly j players, j = 1..k.
struct UsageHistogram {
    std::vector<EpsCost> totals;  // index 0 unused

    const EpsCost& at(int j) const { return totals[j]; }
    int max_multiplicity() const { return static_cast<int>(totals.size()) - 1; }
};

// Empty iff the game satisfies every invariant (ids in range, positive costs,
// at least one player, and every player able to connect her terminals).
std::vector<std::string> validate_game(const Game& game);

// Vertex sequence of a path that starts at `start`; [start] for the empty
// path. Throws ArgumentError if the edges do not chain.
std::vector<int> path_vertex_sequence(const Game& game, int start, const Path& path);

// Reason the path is not a valid strategy for player i, or empty string.
std::string check_path(const Game& game, int player, const Path& path);

LoadMap edge_loads(const Game& game, const StrategyProfile& profile);

// Exact Shapley share sum along player i's path: sum of c_e / k_e.
EpsCost player_cost(const Game& game, const StrategyProfile& profile, int player);

// Total cost of used edges; cross-checked against the sum of player costs.
EpsCost social_cost(const Game& game, const StrategyProfile& profile);

// Exact potential: sum over used edges of H_{k_e} * c_e.
EpsCost potential(const Game& game, const StrategyProfile& profile);

UsageHistogram usage_histogram(const Game& game, const StrategyProfile& profile);

// All simple source-target paths of the player, lexicographic by edge-id
// sequence. Throws ExplosionError if more than cap paths exist.
std::vector<Path> enumerate_simple_paths(const Game& game, int player, int cap = 10000);

// True if the edge set of the profile's underlying network is acyclic
// (ignoring direction).
bool used_edges_acyclic(const Game& game, const StrategyProfile& profile);

}  // namespace sndg

#endif
