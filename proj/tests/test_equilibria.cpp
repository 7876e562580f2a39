#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sndg/equilibria.hpp"
#include "sndg/errors.hpp"
#include "sndg/generators.hpp"

#include <random>

using namespace sndg;

namespace {

Game parallel_pair(int cost_a, int cost_b) {
    Game g;
    g.vertex_count = 2;
    g.edges = {{0, 1, EpsCost(cost_a)}, {0, 1, EpsCost(cost_b)}};
    g.players = {{0, 1}, {0, 1}};
    return g;
}

Game triangle() {
    Game g;
    g.vertex_count = 3;
    g.edges = {{0, 1, EpsCost(5)}, {0, 2, EpsCost(3)}, {2, 1, EpsCost(4)}};
    g.players = {{0, 1}};
    return g;
}

// Best-response oracle: brute-force minimum over all enumerated simple paths.
BestResponse oracle_best_response(const Game& g, const StrategyProfile& profile, int player) {
    auto paths = enumerate_simple_paths(g, player);
    BestResponse best{player, {}, EpsCost()};
    bool first = true;
    for (const Path& path : paths) {
        StrategyProfile switched = profile;
        switched.paths[player] = path;
        EpsCost cost = player_cost(g, switched, player);
        if (first || cost < best.cost) {
            best.path = path;
            best.cost = cost;
            first = false;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("best response stays on the shared cheap edge") {
    Game g = parallel_pair(10, 12);
    StrategyProfile pooled{{{0}, {0}}};
    BestResponse reply = best_response(g, pooled, 0);
    CHECK(reply.path == Path{0});
    CHECK(reply.cost == EpsCost(5));
}

TEST_CASE("best response at an equilibrium re-derives the current cost") {
    Game g = parallel_pair(1, 1);
    StrategyProfile pooled{{{0}, {0}}};
    CHECK(best_response(g, pooled, 0).cost == player_cost(g, pooled, 0));
    CHECK(best_response(g, pooled, 1).cost == player_cost(g, pooled, 1));
}

TEST_CASE("best response raises NoPathError when disconnected") {
    Game g;
    g.vertex_count = 3;
    g.edges = {{0, 1, EpsCost(1)}};
    g.players = {{0, 2}};
    StrategyProfile profile{{{}}};
    profile.paths[0] = {};  // placeholder; the player has no valid strategy
    CHECK_THROWS_AS(best_response(g, profile, 0), NoPathError);
}

TEST_CASE("best response equals the brute-force oracle on random instances") {
    std::mt19937_64 rng(23);
    int checks = 0;
    for (std::uint64_t seed = 900; checks < 400; ++seed) {
        RandomGameParams params;
        params.max_vertices = 6;
        params.max_extra_edges = 5;
        Game g = random_game(seed, params);
        StrategySpace space = enumerate_strategies(g);
        StrategyProfile profile;
        for (int i = 0; i < g.player_count(); ++i)
            profile.paths.push_back(space.paths[i][rng() % space.paths[i].size()]);
        for (int i = 0; i < g.player_count(); ++i) {
            BestResponse fast = best_response(g, profile, i);
            BestResponse slow = oracle_best_response(g, profile, i);
            REQUIRE(fast.cost == slow.cost);
            REQUIRE(fast.path == slow.path);  // canonical-least tie-breaking
            ++checks;
        }
    }
}

TEST_CASE("is_nash on dominated and undominated profiles") {
    Game g = parallel_pair(10, 12);
    g.players = {{0, 1}};  // single player
    StrategyProfile shortest{{{0}}};
    CHECK(is_nash(g, shortest));
    StrategyProfile dominated{{{1}}};
    CHECK(!is_nash(g, dominated));
}

TEST_CASE("profile enumeration counts") {
    CHECK(enumerate_strategies(triangle()).profile_count == 2);

    Game g;
    g.vertex_count = 2;
    g.edges = {{0, 1, EpsCost(1)}, {0, 1, EpsCost(2)}};
    g.players = {{0, 1}, {0, 1}, {0, 1}};
    CHECK(enumerate_strategies(g).profile_count == 8);

    Game k4;
    k4.vertex_count = 4;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4.edges.push_back({u, v, EpsCost(1)});
    k4.players = {{0, 1}, {0, 1}};
    CHECK(enumerate_strategies(k4).profile_count == 25);
}

TEST_CASE("profile budget raises an explosion error") {
    Game k4;
    k4.vertex_count = 4;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4.edges.push_back({u, v, EpsCost(1)});
    k4.players = {{0, 1}, {0, 1}};
    EnumLimits limits;
    limits.profile_budget = 24;
    CHECK_THROWS_AS(enumerate_strategies(k4, limits), ExplosionError);
}

TEST_CASE("equal parallel edges: exactly the two pooled equilibria") {
    Game g = parallel_pair(1, 1);
    EquilibriumSet nash = all_nash(g);
    REQUIRE(nash.profiles.size() == 2);
    CHECK(nash.profiles[0] == StrategyProfile{{{0}, {0}}});
    CHECK(nash.profiles[1] == StrategyProfile{{{1}, {1}}});
}

TEST_CASE("single player: equilibria are exactly the shortest paths") {
    Game g = triangle();
    EquilibriumSet nash = all_nash(g);
    REQUIRE(nash.profiles.size() == 1);
    CHECK(nash.profiles[0].paths[0] == Path{0});  // cost 5 beats 3+4
    EquilibriumSet optimum = social_optimum(g);
    CHECK(optimum.value == EpsCost(5));
}

TEST_CASE("potential minima on parallel edges 1 and 3") {
    Game g = parallel_pair(1, 3);
    EquilibriumSet minima = potential_minima(g);
    REQUIRE(minima.profiles.size() == 1);
    CHECK(minima.profiles[0] == StrategyProfile{{{0}, {0}}});
    CHECK(minima.value == EpsCost(Rational(3, 2)));

    // exhaustive potential table as the oracle
    StrategySpace space = enumerate_strategies(g);
    EpsCost best;
    bool first = true;
    for_each_profile(space, [&](const std::vector<int>&, const StrategyProfile& profile) {
        EpsCost phi = potential(g, profile);
        if (first || phi < best) best = phi;
        first = false;
    });
    CHECK(best == minima.value);
}

TEST_CASE("potential minima are Nash equilibria on random instances") {
    for (std::uint64_t seed = 1500; seed < 1540; ++seed) {
        Game g = random_game(seed);
        GameAnalysis analysis = analyze_game(g);  // asserts internally as well
        for (const StrategyProfile& minimum : analysis.minima) CHECK(is_nash(g, minimum));
        CHECK(!analysis.nash.empty());
        // potential minima are a subset of the equilibria
        for (const StrategyProfile& minimum : analysis.minima)
            CHECK(std::find(analysis.nash.begin(), analysis.nash.end(), minimum) !=
                  analysis.nash.end());
        // chain over costs
        CHECK(analysis.nash_min_cost <= analysis.minima_min_cost);
        CHECK(analysis.minima_min_cost <= analysis.minima_max_cost);
        CHECK(analysis.minima_max_cost <= analysis.nash_max_cost);
        CHECK(analysis.minima_max_cost <=
              harmonic(g.player_count()) * analysis.optimum_cost);
    }
}

TEST_CASE("dynamics from an equilibrium is an empty trace") {
    Game g = parallel_pair(1, 3);
    StrategyProfile pooled{{{0}, {0}}};
    DynamicsTrace trace = best_response_dynamics(g, pooled, Schedule::round_robin, 1);
    CHECK(trace.steps.empty());
    CHECK(trace.terminal == pooled);
}

TEST_CASE("dynamics converges from the dominated edge in two steps") {
    Game g = parallel_pair(1, 3);
    StrategyProfile start{{{1}, {1}}};
    DynamicsTrace trace = best_response_dynamics(g, start, Schedule::round_robin, 1);
    CHECK(trace.steps.size() <= 2);
    CHECK(trace.terminal == StrategyProfile{{{0}, {0}}});
    EpsCost last = potential(g, start);
    for (const DynamicsStep& step : trace.steps) {
        CHECK(step.delta < EpsCost::zero());
        CHECK(step.phi_after < last);
        last = step.phi_after;
    }
    CHECK(is_nash(g, trace.terminal));
}

TEST_CASE("dynamics exhausting the step budget raises BudgetError") {
    Game g = parallel_pair(1, 3);
    StrategyProfile start{{{1}, {1}}};
    CHECK_THROWS_AS(best_response_dynamics(g, start, Schedule::round_robin, 1, 1),
                    BudgetError);
}

TEST_CASE("random-schedule dynamics terminates in an equilibrium") {
    for (std::uint64_t seed = 1600; seed < 1620; ++seed) {
        Game g = random_game(seed);
        StrategySpace space = enumerate_strategies(g);
        StrategyProfile start;
        for (int i = 0; i < g.player_count(); ++i) start.paths.push_back(space.paths[i].back());
        DynamicsTrace trace = best_response_dynamics(g, start, Schedule::seeded_random, seed);
        CHECK(is_nash(g, trace.terminal));
    }
}

TEST_CASE("best response matches the oracle on directed instances") {
    std::mt19937_64 rng(31);
    int checks = 0;
    for (std::uint64_t seed = 7000; checks < 150; ++seed) {
        Game g = random_game(seed);
        g.directed = true;
        // Orient every edge randomly; keep only players that stay connected.
        for (Edge& e : g.edges)
            if (rng() % 2) std::swap(e.u, e.v);
        if (!validate_game(g).empty()) continue;
        StrategySpace space = enumerate_strategies(g);
        StrategyProfile profile;
        for (int i = 0; i < g.player_count(); ++i)
            profile.paths.push_back(space.paths[i][rng() % space.paths[i].size()]);
        for (int i = 0; i < g.player_count(); ++i) {
            BestResponse fast = best_response(g, profile, i);
            BestResponse slow = oracle_best_response(g, profile, i);
            REQUIRE(fast.cost == slow.cost);
            REQUIRE(fast.path == slow.path);
            ++checks;
        }
    }
}
