#include "sndg/equilibria.hpp"

#include "sndg/errors.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <random>

namespace sndg {

StrategySpace enumerate_strategies(const Game& game, const EnumLimits& limits) {
    StrategySpace space;
    space.paths.reserve(game.player_count());
    space.profile_count = 1;
    for (int i = 0; i < game.player_count(); ++i) {
        space.paths.push_back(enumerate_simple_paths(game, i, limits.path_cap));
        if (space.paths.back().empty())
            throw NoPathError("player " + std::to_string(i) + " has no path");
        std::uint64_t count = space.paths.back().size();
        if (space.profile_count > limits.profile_budget / count)
            throw ExplosionError(limits.profile_budget, 0, "profile count");
        space.profile_count *= count;
    }
    return space;
}

StrategyProfile profile_at(const StrategySpace& space, const std::vector<int>& choice) {
    StrategyProfile profile;
    profile.paths.reserve(space.player_count());
    for (int i = 0; i < space.player_count(); ++i)
        profile.paths.push_back(space.paths[i][choice[i]]);
    return profile;
}

void for_each_profile(const StrategySpace& space,
                      const std::function<void(const std::vector<int>&, const StrategyProfile&)>& fn) {
    const int k = space.player_count();
    std::vector<int> choice(k, 0);
    StrategyProfile profile = profile_at(space, choice);
    for (;;) {
        fn(choice, profile);
        int i = k - 1;
        while (i >= 0 && choice[i] + 1 == static_cast<int>(space.paths[i].size())) {
            choice[i] = 0;
            profile.paths[i] = space.paths[i][0];
            --i;
        }
        if (i < 0) return;
        ++choice[i];
        profile.paths[i] = space.paths[i][choice[i]];
    }
}

namespace {

struct QueueEntry {
    EpsCost dist;
    int vertex;

    bool operator>(const QueueEntry& o) const {
        if (dist != o.dist) return o.dist < dist;
        return vertex > o.vertex;
    }
};

// Single-source shortest distances under positive EpsCost weights.
// weights[e] must be positive; reversed = true walks arcs backwards.
std::vector<std::optional<EpsCost>> dijkstra(const Game& game,
                                             const std::vector<EpsCost>& weights,
                                             int source, bool reversed) {
    std::vector<std::optional<EpsCost>> dist(game.vertex_count);
    std::vector<std::vector<int>> adj(game.vertex_count);
    for (int e = 0; e < game.edge_count(); ++e) {
        if (game.directed) {
            adj[reversed ? game.edges[e].v : game.edges[e].u].push_back(e);
        } else {
            adj[game.edges[e].u].push_back(e);
            if (game.edges[e].v != game.edges[e].u) adj[game.edges[e].v].push_back(e);
        }
    }
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> queue;
    dist[source] = EpsCost::zero();
    queue.push({EpsCost::zero(), source});
    std::vector<bool> done(game.vertex_count, false);
    while (!queue.empty()) {
        QueueEntry top = queue.top();
        queue.pop();
        if (done[top.vertex]) continue;
        done[top.vertex] = true;
        for (int e : adj[top.vertex]) {
            int next = game.other_end(e, top.vertex);
            EpsCost candidate = top.dist + weights[e];
            if (!dist[next] || candidate < *dist[next]) {
                dist[next] = candidate;
                queue.push({candidate, next});
            }
        }
    }
    return dist;
}

std::vector<EpsCost> response_weights(const Game& game, const StrategyProfile& profile,
                                      int player) {
    LoadMap lm = edge_loads(game, profile);
    for (int e : profile.paths[player]) --lm.loads[e];
    std::vector<EpsCost> weights;
    weights.reserve(game.edge_count());
    for (int e = 0; e < game.edge_count(); ++e)
        weights.push_back(game.edges[e].cost / (lm.loads[e] + 1));
    return weights;
}

}  // namespace

BestResponse best_response(const Game& game, const StrategyProfile& profile, int player) {
    const Player& p = game.players[player];
    if (p.source == p.target) return {player, {}, EpsCost::zero()};

    std::vector<EpsCost> weights = response_weights(game, profile, player);
    std::vector<std::optional<EpsCost>> from_source = dijkstra(game, weights, p.source, false);
    if (!from_source[p.target])
        throw NoPathError("player " + std::to_string(player) + " has no path");
    std::vector<std::optional<EpsCost>> to_target =
        dijkstra(game, weights, p.target, game.directed);

    const EpsCost total = *from_source[p.target];

    // Walk the tight-edge subgraph taking the least edge id at every step;
    // this realizes the lexicographically least minimum-cost path. Positive
    // weights make the distance to the target strictly decrease, so the walk
    // terminates in a simple path.
    std::vector<std::vector<int>> adj(game.vertex_count);
    for (int e = 0; e < game.edge_count(); ++e) {
        adj[game.edges[e].u].push_back(e);
        if (!game.directed && game.edges[e].v != game.edges[e].u)
            adj[game.edges[e].v].push_back(e);
    }

    Path path;
    int at = p.source;
    EpsCost walked;
    while (at != p.target) {
        bool advanced = false;
        for (int e : adj[at]) {
            if (game.directed && game.edges[e].u != at) continue;
            int next = game.other_end(e, at);
            if (!to_target[next]) continue;
            if (walked + weights[e] + *to_target[next] == total) {
                path.push_back(e);
                walked += weights[e];
                at = next;
                advanced = true;
                break;
            }
        }
        if (!advanced)
            throw InternalError("tight-edge walk stalled during best response");
    }
    return {player, path, total};
}

bool is_nash(const Game& game, const StrategyProfile& profile) {
    // Cost-only variant of best_response: one Dijkstra per player, no
    // lexicographic path extraction.
    LoadMap lm = edge_loads(game, profile);
    for (int i = 0; i < game.player_count(); ++i) {
        const Player& p = game.players[i];
        EpsCost current;
        for (int e : profile.paths[i]) current += game.edges[e].cost / lm.load(e);
        if (p.source == p.target) {
            if (EpsCost::zero() < current) return false;
            continue;
        }
        std::vector<EpsCost> weights = response_weights(game, profile, i);
        std::vector<std::optional<EpsCost>> dist = dijkstra(game, weights, p.source, false);
        if (!dist[p.target])
            throw NoPathError("player " + std::to_string(i) + " has no path");
        if (*dist[p.target] < current) return false;
    }
    return true;
}

GameAnalysis analyze_game(const Game& game, const EnumLimits& limits) {
    StrategySpace space = enumerate_strategies(game, limits);
    GameAnalysis analysis;
    for (const auto& paths : space.paths) analysis.path_counts.push_back(paths.size());
    analysis.profile_count = space.profile_count;

    bool first = true;
    for_each_profile(space, [&](const std::vector<int>&, const StrategyProfile& profile) {
        EpsCost cost = social_cost(game, profile);
        EpsCost phi = potential(game, profile);
        if (first || cost < analysis.optimum_cost) {
            analysis.optimum_cost = cost;
            analysis.optima.clear();
        }
        if (cost == analysis.optimum_cost) analysis.optima.push_back(profile);

        if (first || phi < analysis.min_potential) {
            analysis.min_potential = phi;
            analysis.minima.clear();
        }
        if (phi == analysis.min_potential) analysis.minima.push_back(profile);

        if (is_nash(game, profile)) {
            if (analysis.nash.empty() || cost < analysis.nash_min_cost)
                analysis.nash_min_cost = cost;
            if (analysis.nash.empty() || cost > analysis.nash_max_cost)
                analysis.nash_max_cost = cost;
            analysis.nash.push_back(profile);
        }
        first = false;
    });

    if (analysis.nash.empty())
        throw InternalError("no Nash equilibrium found by exhaustive enumeration");

    bool first_min = true;
    for (const StrategyProfile& profile : analysis.minima) {
        if (!is_nash(game, profile))
            throw InternalError("potential minimum failed the Nash check");
        EpsCost cost = social_cost(game, profile);
        if (first_min || cost < analysis.minima_min_cost) analysis.minima_min_cost = cost;
        if (first_min || cost > analysis.minima_max_cost) analysis.minima_max_cost = cost;
        first_min = false;
    }

    if (!game.directed) {
        for (const StrategyProfile& profile : analysis.optima)
            if (!used_edges_acyclic(game, profile))
                throw InternalError("social optimum uses a cyclic edge set");
    }
    return analysis;
}

EquilibriumSet all_nash(const Game& game, const EnumLimits& limits) {
    GameAnalysis analysis = analyze_game(game, limits);
    return {EquilibriumKind::nash, std::move(analysis.nash), analysis.nash_min_cost};
}

EquilibriumSet social_optimum(const Game& game, const EnumLimits& limits) {
    StrategySpace space = enumerate_strategies(game, limits);
    EquilibriumSet set{EquilibriumKind::social_optimum, {}, {}};
    bool first = true;
    for_each_profile(space, [&](const std::vector<int>&, const StrategyProfile& profile) {
        EpsCost cost = social_cost(game, profile);
        if (first || cost < set.value) {
            set.value = cost;
            set.profiles.clear();
            first = false;
        }
        if (cost == set.value) set.profiles.push_back(profile);
    });
    if (!game.directed) {
        for (const StrategyProfile& profile : set.profiles)
            if (!used_edges_acyclic(game, profile))
                throw InternalError("social optimum uses a cyclic edge set");
    }
    return set;
}

EquilibriumSet potential_minima(const Game& game, const EnumLimits& limits) {
    StrategySpace space = enumerate_strategies(game, limits);
    EquilibriumSet set{EquilibriumKind::potential_minimum, {}, {}};
    bool first = true;
    for_each_profile(space, [&](const std::vector<int>&, const StrategyProfile& profile) {
        EpsCost phi = potential(game, profile);
        if (first || phi < set.value) {
            set.value = phi;
            set.profiles.clear();
            first = false;
        }
        if (phi == set.value) set.profiles.push_back(profile);
    });
    for (const StrategyProfile& profile : set.profiles)
        if (!is_nash(game, profile))
            throw InternalError("potential minimum failed the Nash check");
    return set;
}

DynamicsTrace best_response_dynamics(const Game& game, const StrategyProfile& start,
                                     Schedule schedule, std::uint64_t seed,
                                     std::uint64_t max_steps) {
    for (int i = 0; i < game.player_count(); ++i) {
        std::string reason = check_path(game, i, start.paths[i]);
        if (!reason.empty())
            throw ArgumentError("start profile, player " + std::to_string(i) + ": " + reason);
    }

    DynamicsTrace trace;
    StrategyProfile current = start;
    std::mt19937_64 rng(seed);
    EpsCost phi = potential(game, current);

    for (;;) {
        std::vector<int> order(game.player_count());
        for (int i = 0; i < game.player_count(); ++i) order[i] = i;
        if (schedule == Schedule::seeded_random) {
            for (int i = game.player_count() - 1; i > 0; --i)
                std::swap(order[i], order[rng() % (i + 1)]);
        }

        bool moved = false;
        for (int i : order) {
            BestResponse reply = best_response(game, current, i);
            EpsCost cost_now = player_cost(game, current, i);
            if (reply.cost < cost_now) {
                DynamicsStep step;
                step.player = i;
                step.from = current.paths[i];
                step.to = reply.path;
                step.delta = reply.cost - cost_now;
                current.paths[i] = reply.path;
                EpsCost phi_next = potential(game, current);
                if (phi_next - phi != step.delta)
                    throw InternalError("potential change differs from mover's cost change");
                phi = phi_next;
                step.phi_after = phi;
                trace.steps.push_back(std::move(step));
                moved = true;
                break;
            }
        }
        if (!moved) break;
        if (trace.steps.size() >= max_steps) {
            std::string phis;
            for (const DynamicsStep& s : trace.steps)
                phis += (phis.empty() ? "" : ", ") + eps_cost_str(s.phi_after);
            throw BudgetError("dynamics exceeded " + std::to_string(max_steps) +
                              " steps; potential trace: " + phis);
        }
    }

    if (!is_nash(game, current))
        throw InternalError("dynamics terminated in a non-equilibrium profile");
    trace.terminal = std::move(current);
    return trace;
}

}  // namespace sndg
