#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sndg/bounds.hpp"
#include "sndg/errors.hpp"
#include "sndg/generators.hpp"
#include "sndg/search.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sndg;

TEST_CASE("minimal instance parses") {
    Instance inst = parse_instance("vertices: 2\nedge 0 1 1\nplayer 0 1\n");
    CHECK(inst.game.vertex_count == 2);
    CHECK(inst.game.edge_count() == 1);
    CHECK(inst.game.players.size() == 1);
    CHECK(!inst.game.directed);
    CHECK(validate_game(inst.game).empty());
}

TEST_CASE("pure-eps edge cost is valid") {
    Instance inst = parse_instance("vertices: 2\nedge 0 1 0 1\nplayer 0 1\n");
    CHECK(inst.game.edges[0].cost == EpsCost(0, 1));
    CHECK(validate_game(inst.game).empty());
}

TEST_CASE("duplicate directed header is a parse error") {
    CHECK_THROWS_AS(parse_instance("directed: true\ndirected: false\nvertices: 1\n"),
                    ParseError);
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_instance("vertices: 2\nedge 0 1 zonk\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 10);
    }
}

TEST_CASE("headers after records are rejected") {
    CHECK_THROWS_AS(parse_instance("vertices: 2\nedge 0 1 1\nvertices: 3\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("vertices: 2\nplayer 0 1\nname: late\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("edge 0 1 1\nvertices: 2\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("vertices: 2\nfrobnicate 1\n"), ParseError);
}

TEST_CASE("comments and rational costs") {
    Instance inst = parse_instance(
        "# a comment\nname: demo\nnote: provenance: test\ndirected: true\n"
        "vertices: 3\nedge 0 1 3/2 1/4\nedge 1 2 2\nplayer 0 2\n");
    CHECK(inst.name == "demo");
    CHECK(inst.note == "provenance: test");
    CHECK(inst.game.directed);
    CHECK(inst.game.edges[0].cost == EpsCost(Rational(3, 2), Rational(1, 4)));
}

TEST_CASE("serialize-parse round trip on random instances") {
    for (std::uint64_t seed = 2000; seed < 2080; ++seed) {
        Instance inst;
        inst.game = random_game(seed);
        if (seed % 3 == 0) inst.name = "random-" + std::to_string(seed);
        if (seed % 4 == 0) inst.note = "provenance: generated";
        Instance round = parse_instance(serialize_instance(inst));
        REQUIRE(round == inst);
    }
}

TEST_CASE("digest is stable and content-sensitive") {
    Instance a = parse_instance("vertices: 2\nedge 0 1 1\nplayer 0 1\n");
    Instance b = parse_instance("vertices: 2\nedge 0 1 2\nplayer 0 1\n");
    CHECK(instance_digest(a) == instance_digest(a));
    CHECK(instance_digest(a) != instance_digest(b));
    CHECK(instance_digest(a).substr(0, 8) == "fnv1a64:");
}

TEST_CASE("directed family: price of stability approaches the harmonic number") {
    for (int k = 2; k <= 4; ++k) {
        Game g = directed_hk_family(k);
        CHECK(validate_game(g).empty());
        RatioReport ratios = inefficiency_ratios(g);
        CHECK(ratios.pos.limit == harmonic(k));
        CHECK(ratios.pos.direction == -1);  // approaches H_k from below
    }
    CHECK_THROWS_AS(directed_hk_family(1), ArgumentError);
}

TEST_CASE("directed family has a unique equilibrium on private arcs") {
    Game g = directed_hk_family(3);
    EquilibriumSet nash = all_nash(g);
    REQUIRE(nash.profiles.size() == 1);
    for (int i = 0; i < 3; ++i) CHECK(nash.profiles.front().paths[i] == Path{i});
}

TEST_CASE("random games are always valid") {
    for (std::uint64_t seed = 3000; seed < 3100; ++seed)
        CHECK(validate_game(random_game(seed)).empty());
}

TEST_CASE("fig-a reconstruction satisfies every claim") {
    Instance inst = reconstruct_fig_a();
    CHECK(inst.name == "fig-a-reconstruction");
    FigAClaims claims = check_fig_a_claims(inst.game);
    for (const ClaimVerdict& item : claims.items) {
        INFO(item.claim << " " << item.detail);
        CHECK(item.holds);
    }
    CHECK(claims.all_hold);
    RatioReport ratios = inefficiency_ratios(inst.game);
    CHECK(ratios.popos.limit == Rational(286, 175));
    CHECK(ratios.popoa.limit == Rational(286, 175));
    CHECK(ratios.pos.limit == 1);
}

TEST_CASE("fig-a reconstruction is deterministic") {
    CHECK(reconstruct_fig_a() == reconstruct_fig_a());
}

TEST_CASE("fig-b reconstruction hits the published sums") {
    FigBResult figb = reconstruct_fig_b(1000, 1);
    CHECK(figb.exact_match);
    CHECK(figb.pos_limit == Rational(1769, 1126));
    CHECK(figb.pos_limit > Rational(74, 48));
    CHECK(validate_game(figb.instance.game).empty());

    GameAnalysis analysis = analyze_game(figb.instance.game);
    CHECK(analysis.nash.size() == 1);
    CHECK(social_cost(figb.instance.game, analysis.nash.front()) ==
          EpsCost(Rational(1769)));
    CHECK(analysis.optimum_cost == EpsCost(Rational(1126)));
}

TEST_CASE("fig-b reconstruction is deterministic for a fixed seed") {
    FigBResult a = reconstruct_fig_b(500, 7);
    FigBResult b = reconstruct_fig_b(500, 7);
    CHECK(a.instance == b.instance);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("search with budget 1 echoes the initial evaluation") {
    SearchSpec spec;
    spec.skeleton = parse_instance(
        "vertices: 3\nedge 0 1 5\nedge 0 2 3\nedge 2 1 4\nplayer 0 1\n");
    spec.slots = {{0, 1, 100}, {1, 1, 100}, {2, 1, 100}};
    spec.budget = 1;
    SearchResult result = search_costs(spec);
    CHECK(result.evaluations == 1);
    CHECK(result.feasible);
    CHECK(result.best.game == spec.skeleton.game);
    CHECK(result.best_objective == 1);  // single player: pos is 1
}

TEST_CASE("search is reproducible for a fixed seed") {
    SearchSpec spec;
    spec.skeleton = parse_instance(
        "vertices: 3\nedge 0 1 2 1\nedge 0 2 2\nedge 1 2 2\nplayer 0 2\nplayer 1 2\n");
    spec.slots = {{0, 1, 12}, {1, 1, 12}, {2, 1, 12}};
    spec.budget = 400;
    spec.seed = 99;
    SearchResult a = search_costs(spec);
    SearchResult b = search_costs(spec);
    CHECK(a.best.game == b.best.game);
    CHECK(a.best_objective == b.best_objective);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.improvements.size() == b.improvements.size());
}

TEST_CASE("match-targets search finds the two-player tight family") {
    // Triangle skeleton: terminals (0,2) and (1,2), a cross edge 0-1 carrying
    // an eps term. The classical tight family sits at costs (1, 2, 2).
    SearchSpec spec;
    spec.skeleton = parse_instance(
        "vertices: 3\nedge 0 1 5 1\nedge 0 2 5\nedge 1 2 5\nplayer 0 2\nplayer 1 2\n");
    spec.slots = {{0, 1, 8}, {1, 1, 8}, {2, 1, 8}};
    spec.objective = SearchObjective::match_targets;
    spec.targets = {{"pos", Rational(4, 3)}};
    spec.budget = 4000;
    spec.seed = 5;
    SearchResult result = search_costs(spec);
    REQUIRE(result.feasible);
    CHECK(result.best_objective == 0);  // exact target met
    RatioReport ratios = inefficiency_ratios(result.best.game);
    CHECK(ratios.pos.limit == Rational(4, 3));
}

TEST_CASE("search spec JSON parsing") {
    SearchSpec spec = parse_search_spec(R"({
        "instance": "vertices: 2\nedge 0 1 1\nplayer 0 1\n",
        "slots": [{"edge": 0, "min": 1, "max": 9}],
        "objective": "match-targets",
        "targets": [{"name": "pos", "value": "4/3"}],
        "budget": 7,
        "seed": 3
    })");
    CHECK(spec.slots.size() == 1);
    CHECK(spec.objective == SearchObjective::match_targets);
    CHECK(spec.targets[0].value == Rational(4, 3));
    CHECK(spec.budget == 7);
    CHECK_THROWS_AS(parse_search_spec("not json"), ArgumentError);
    CHECK_THROWS_AS(parse_search_spec("{}"), ArgumentError);
}

TEST_CASE("bundled instances parse, validate and round-trip") {
#ifdef SNDG_INSTANCES_DIR
    namespace fs = std::filesystem;
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(SNDG_INSTANCES_DIR)) {
        if (entry.path().extension() != ".sndg") continue;
        std::ifstream in(entry.path());
        std::stringstream buffer;
        buffer << in.rdbuf();
        INFO(entry.path().string());
        Instance inst = parse_instance(buffer.str());
        CHECK(validate_game(inst.game).empty());
        CHECK(parse_instance(serialize_instance(inst)) == inst);
        ++seen;
    }
    CHECK(seen >= 8);
#else
    FAIL("SNDG_INSTANCES_DIR not configured");
#endif
}

TEST_CASE("dynamics started at the fig-a optimum takes no steps") {
    Instance inst = reconstruct_fig_a();
    EquilibriumSet optima = social_optimum(inst.game);
    DynamicsTrace trace =
        best_response_dynamics(inst.game, optima.profiles.front(), Schedule::round_robin, 1);
    CHECK(trace.steps.empty());
    CHECK(trace.terminal == optima.profiles.front());
}

TEST_CASE("maximize-pos search on the fig-b skeleton stays above the floor") {
    FigBResult figb = reconstruct_fig_b(1000, 1);
    SearchSpec spec;
    spec.skeleton = figb.instance;
    for (int e = 0; e < spec.skeleton.game.edge_count(); ++e)
        spec.slots.push_back({e, 1, 2000});
    spec.objective = SearchObjective::maximize_pos;
    spec.budget = 60;
    spec.seed = 3;
    SearchResult result = search_costs(spec);
    REQUIRE(result.feasible);
    CHECK(result.best_objective >= Rational(74, 48));
}

TEST_CASE("match-targets supports cost targets") {
    SearchSpec spec;
    spec.skeleton = parse_instance(
        "vertices: 2\nedge 0 1 5\nplayer 0 1\n");
    spec.slots = {{0, 1, 50}};
    spec.objective = SearchObjective::match_targets;
    spec.targets = {{"optimum-cost", Rational(17)}};
    spec.budget = 300;
    spec.seed = 2;
    SearchResult result = search_costs(spec);
    REQUIRE(result.feasible);
    CHECK(result.best_objective == 0);
    CHECK(result.best.game.edges[0].cost == EpsCost(17));
}

TEST_CASE("fig-a potential and ratio values satisfy the beta-bound check") {
    Instance inst = reconstruct_fig_a();
    EquilibriumSet optima = social_optimum(inst.game);
    EquilibriumSet minima = potential_minima(inst.game);
    REQUIRE(minima.profiles.size() == 1);
    const StrategyProfile& minimum = minima.profiles.front();
    const StrategyProfile& optimum = optima.profiles.front();

    CHECK(potential(inst.game, minimum) == EpsCost(1144, 0));
    CHECK(potential(inst.game, optimum) == EpsCost(1144, Rational(29, 6)));

    LemmaTwoReport report = lemma2_check(inst.game, minimum, optimum);
    CHECK(report.beta == Rational(15));
    CHECK(report.phi_antecedent);
    CHECK(report.usage_antecedent);
    CHECK(report.conclusion);  // 1144/(700+3eps) stays below 165/92
    CHECK(report.bound_factor == Rational(165, 92));
    CHECK(Rational(1144, 700) == Rational(286, 175));
    CHECK(Rational(286, 175) <= Rational(165, 92));

    LemmaOneReport l1 = lemma1_check(inst.game, minimum, optimum);
    CHECK(l1.applicable);
    CHECK(l1.holds);
}
