#include "sndg/game.hpp"

#include "sndg/errors.hpp"

#include <algorithm>
#include <queue>

namespace sndg {

std::string eps_cost_str(const EpsCost& c) {
    if (c.eps_coeff == 0) return rational_str(c.base);
    std::string eps_part =
        (abs(c.eps_coeff) == 1 ? std::string("eps")
                               : rational_str(abs(c.eps_coeff)) + "*eps");
    if (c.base == 0) return (c.eps_coeff < 0 ? "-" : "") + eps_part;
    return rational_str(c.base) + (c.eps_coeff < 0 ? "-" : "+") + eps_part;
}

std::vector<std::vector<int>> Game::adjacency() const {
    std::vector<std::vector<int>> adj(vertex_count);
    for (int e = 0; e < edge_count(); ++e) {
        adj[edges[e].u].push_back(e);
        if (!directed && edges[e].v != edges[e].u) adj[edges[e].v].push_back(e);
    }
    return adj;
}

namespace {

// Vertices reachable from `from`, respecting direction.
std::vector<bool> reachable_set(const Game& game, int from) {
    std::vector<bool> seen(game.vertex_count, false);
    std::vector<std::vector<int>> adj = game.adjacency();
    std::queue<int> queue;
    seen[from] = true;
    queue.push(from);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop();
        for (int e : adj[u]) {
            int v = game.other_end(e, u);
            if (game.directed && game.edges[e].u != u) continue;
            if (!seen[v]) {
                seen[v] = true;
                queue.push(v);
            }
        }
    }
    return seen;
}

}  // namespace

std::vector<std::string> validate_game(const Game& game) {
    std::vector<std::string> violations;
    if (game.vertex_count < 1)
        violations.push_back("vertex count must be positive");
    if (game.players.empty())
        violations.push_back("at least one player required");
    for (int e = 0; e < game.edge_count(); ++e) {
        const Edge& ed = game.edges[e];
        if (ed.u < 0 || ed.u >= game.vertex_count || ed.v < 0 || ed.v >= game.vertex_count)
            violations.push_back("edge " + std::to_string(e) + ": endpoint out of range");
        if (!ed.cost.is_positive())
            violations.push_back("edge " + std::to_string(e) + ": non-positive cost " +
                                 eps_cost_str(ed.cost));
    }
    bool ids_ok = violations.empty();
    for (int i = 0; i < game.player_count(); ++i) {
        const Player& p = game.players[i];
        if (p.source < 0 || p.source >= game.vertex_count || p.target < 0 ||
            p.target >= game.vertex_count) {
            violations.push_back("player " + std::to_string(i) + ": terminal out of range");
            ids_ok = false;
        }
    }
    if (ids_ok) {
        for (int i = 0; i < game.player_count(); ++i) {
            const Player& p = game.players[i];
            if (p.source == p.target) continue;  // empty path always available
            if (!reachable_set(game, p.source)[p.target])
                violations.push_back("player " + std::to_string(i) + " has no path");
        }
    }
    return violations;
}

std::vector<int> path_vertex_sequence(const Game& game, int start, const Path& path) {
    std::vector<int> seq{start};
    int at = start;
    for (int e : path) {
        if (e < 0 || e >= game.edge_count())
            throw ArgumentError("path contains invalid edge id " + std::to_string(e));
        const Edge& ed = game.edges[e];
        if (game.directed) {
            if (ed.u != at)
                throw ArgumentError("path does not respect arc direction at edge " +
                                    std::to_string(e));
            at = ed.v;
        } else {
            if (ed.u == at) at = ed.v;
            else if (ed.v == at) at = ed.u;
            else
                throw ArgumentError("path edges do not chain at edge " + std::to_string(e));
        }
        seq.push_back(at);
    }
    return seq;
}

std::string check_path(const Game& game, int player, const Path& path) {
    const Player& p = game.players[player];
    std::vector<int> seq;
    try {
        seq = path_vertex_sequence(game, p.source, path);
    } catch (const ArgumentError& e) {
        return e.what();
    }
    if (seq.back() != p.target) return "path does not end at the player's target";
    std::vector<int> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return "path is not simple";
    return {};
}

LoadMap edge_loads(const Game& game, const StrategyProfile& profile) {
    LoadMap lm{std::vector<int>(game.edge_count(), 0)};
    for (const Path& path : profile.paths)
        for (int e : path) ++lm.loads[e];
    return lm;
}

EpsCost player_cost(const Game& game, const StrategyProfile& profile, int player) {
    LoadMap lm = edge_loads(game, profile);
    EpsCost total;
    for (int e : profile.paths[player]) total += game.edges[e].cost / lm.load(e);
    return total;
}

EpsCost social_cost(const Game& game, const StrategyProfile& profile) {
    LoadMap lm = edge_loads(game, profile);
    EpsCost by_edges;
    for (int e = 0; e < game.edge_count(); ++e)
        if (lm.load(e) > 0) by_edges += game.edges[e].cost;

    EpsCost by_shares;
    for (int i = 0; i < game.player_count(); ++i)
        for (int e : profile.paths[i]) by_shares += game.edges[e].cost / lm.load(e);
    if (by_edges != by_shares)
        throw InternalError("social cost mismatch: edges " + eps_cost_str(by_edges) +
                            " vs shares " + eps_cost_str(by_shares));
    return by_edges;
}

EpsCost potential(const Game& game, const StrategyProfile& profile) {
    LoadMap lm = edge_loads(game, profile);
    EpsCost phi;
    for (int e = 0; e < game.edge_count(); ++e)
        if (lm.load(e) > 0) phi += harmonic(lm.load(e)) * game.edges[e].cost;
    return phi;
}

UsageHistogram usage_histogram(const Game& game, const StrategyProfile& profile) {
    LoadMap lm = edge_loads(game, profile);
    UsageHistogram hist{std::vector<EpsCost>(game.player_count() + 1)};
    for (int e = 0; e < game.edge_count(); ++e)
        if (lm.load(e) > 0) hist.totals[lm.load(e)] += game.edges[e].cost;
    return hist;
}

std::vector<Path> enumerate_simple_paths(const Game& game, int player, int cap) {
    if (cap < 1) throw ArgumentError("path cap must be positive");
    const Player& p = game.players[player];
    std::vector<Path> result;
    if (p.source == p.target) {
        result.push_back({});
        return result;
    }

    std::vector<std::vector<int>> adj = game.adjacency();
    std::vector<bool> visited(game.vertex_count, false);
    Path current;

    // Depth-first search taking incident edges in ascending id order, which
    // yields lexicographic order on edge-id sequences.
    auto dfs = [&](auto&& self, int at) -> void {
        visited[at] = true;
        for (int e : adj[at]) {
            if (game.directed && game.edges[e].u != at) continue;
            int next = game.other_end(e, at);
            if (visited[next]) continue;
            current.push_back(e);
            if (next == p.target) {
                if (static_cast<int>(result.size()) >= cap)
                    throw ExplosionError(cap, result.size() + 1,
                                         "simple paths of player " + std::to_string(player));
                result.push_back(current);
            } else {
                self(self, next);
            }
            current.pop_back();
        }
        visited[at] = false;
    };
    dfs(dfs, p.source);
    return result;
}

bool used_edges_acyclic(const Game& game, const StrategyProfile& profile) {
    LoadMap lm = edge_loads(game, profile);
    // Union-find over vertices; a repeated union within one component means a
    // cycle (parallel edges count).
    std::vector<int> parent(game.vertex_count);
    for (int v = 0; v < game.vertex_count; ++v) parent[v] = v;
    auto find = [&](int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (int e = 0; e < game.edge_count(); ++e) {
        if (lm.load(e) == 0) continue;
        int a = find(game.edges[e].u);
        int b = find(game.edges[e].v);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

}  // namespace sndg
