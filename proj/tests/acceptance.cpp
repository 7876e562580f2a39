// Acceptance suite: runs every acceptance criterion at its stated tolerance
// (exact arithmetic means tolerance zero) and prints one PASS/FAIL line per
// criterion. Exit status is zero iff every criterion passes.

#include "sndg/bounds.hpp"
#include "sndg/commands.hpp"
#include "sndg/errors.hpp"
#include "sndg/generators.hpp"
#include "sndg/search.hpp"

#include <chrono>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

using namespace sndg;

namespace {

struct SweepEntry {
    Game game;
    GameAnalysis analysis;
};

// Shared sweep for criteria 3, 4, 9 and 10: exhaustively solved random
// instances, biased so a healthy share has a fully shared optimum edge.
std::vector<SweepEntry> build_sweep(int count) {
    std::vector<SweepEntry> sweep;
    std::uint64_t seed = 42000;
    int with_shared_edge = 0;
    while (static_cast<int>(sweep.size()) < count || with_shared_edge < 25) {
        RandomGameParams params;
        params.min_players = 2;
        params.max_players = 3;
        Game game = random_game(seed++, params);
        SweepEntry entry{game, analyze_game(game)};
        UsageHistogram hist = usage_histogram(game, entry.analysis.optima.front());
        if (hist.at(game.player_count()) != EpsCost::zero()) ++with_shared_edge;
        sweep.push_back(std::move(entry));
        if (sweep.size() > 4000) break;  // defensive; never needed
    }
    return sweep;
}

bool criterion_1(std::string& detail) {
    bool ok = theorem_bound(2) == Rational(4, 3) && theorem_bound(3) == Rational(165, 92);
    for (int k = 2; k <= 50; ++k) ok = ok && theorem_bound(k) < harmonic(k);
    Rational k4 = Rational(100) * 100 * 100 * 100;
    Rational scaled = k4 * theorem_gap_factor(100);
    ok = ok && scaled >= Rational(18, 10) && scaled <= Rational(22, 10);
    std::ostringstream out;
    out << "f(2)=" << rational_str(theorem_bound(2)) << ", f(3)=" << rational_str(theorem_bound(3))
        << ", 100^4*(1-f/H) = " << decimal_str(scaled, 6);
    detail = out.str();
    return ok;
}

bool criterion_2(std::string& detail) {
    std::mt19937_64 rng(2024);
    int triples = 0;
    for (std::uint64_t seed = 50000; triples < 500; ++seed) {
        RandomGameParams params;
        params.max_players = 4;
        Game game = random_game(seed, params);
        StrategySpace space = enumerate_strategies(game);
        StrategyProfile profile;
        for (int i = 0; i < game.player_count(); ++i)
            profile.paths.push_back(space.paths[i][rng() % space.paths[i].size()]);
        int mover = static_cast<int>(rng() % game.player_count());
        StrategyProfile deviated = profile;
        deviated.paths[mover] = space.paths[mover][rng() % space.paths[mover].size()];
        EpsCost delta_phi = potential(game, profile) - potential(game, deviated);
        EpsCost delta_cost =
            player_cost(game, profile, mover) - player_cost(game, deviated, mover);
        if (delta_phi != delta_cost) {
            detail = "identity failed at seed " + std::to_string(seed);
            return false;
        }
        ++triples;
    }
    detail = std::to_string(triples) + " deviation triples, all exact";
    return true;
}

bool criterion_3(const std::vector<SweepEntry>& sweep, std::string& detail) {
    for (const SweepEntry& entry : sweep) {
        const GameAnalysis& analysis = entry.analysis;
        for (const StrategyProfile& minimum : analysis.minima)
            if (!is_nash(entry.game, minimum)) {
                detail = "potential minimum is not an equilibrium";
                return false;
            }
        bool chain = analysis.nash_min_cost <= analysis.minima_min_cost &&
                     analysis.minima_min_cost <= analysis.minima_max_cost &&
                     analysis.minima_max_cost <= analysis.nash_max_cost;
        bool hk = analysis.minima_max_cost <=
                  harmonic(entry.game.player_count()) * analysis.optimum_cost;
        if (!chain || !hk) {
            detail = chain ? "H_k bound failed" : "ratio chain failed";
            return false;
        }
    }
    detail = std::to_string(sweep.size()) + " instances solved exhaustively";
    return true;
}

bool criterion_4(const std::vector<SweepEntry>& sweep, std::string& detail) {
    int lemma1_applicable = 0, deviation_certs = 0;
    for (const SweepEntry& entry : sweep) {
        const Game& game = entry.game;
        const GameAnalysis& analysis = entry.analysis;
        const int k = game.player_count();
        Rational bound = theorem_bound(k);
        for (const StrategyProfile& minimum : analysis.minima) {
            if (!(social_cost(game, minimum) <= bound * analysis.optimum_cost)) {
                detail = "theorem bound violated on an instance";
                return false;
            }
        }
        const StrategyProfile& optimum = analysis.optima.front();
        UsageHistogram hist = usage_histogram(game, optimum);
        if (hist.at(k) == EpsCost::zero()) continue;

        ++lemma1_applicable;
        for (const StrategyProfile& minimum : analysis.minima) {
            LemmaOneReport report = lemma1_check(game, minimum, optimum);
            if (!report.applicable || !report.holds) {
                detail = "partial-usage inequality failed";
                return false;
            }
        }

        // Deviation certificates for every player and both directions, with
        // the players renumbered into major-tree order.
        MajorTreeOrder order = major_tree_order(game, optimum);
        Game ordered_game = permute_players(game, order.order);
        StrategyProfile ordered_optimum = permute_players(optimum, order.order);
        for (const StrategyProfile& minimum : analysis.minima) {
            StrategyProfile ordered_minimum = permute_players(minimum, order.order);
            for (int i = 0; i < k; ++i) {
                for (DeviationDirection dir :
                     {DeviationDirection::successor, DeviationDirection::predecessor}) {
                    DeviationCertificate cert =
                        deviation_path(ordered_game, ordered_minimum, ordered_optimum, i, dir);
                    if (!cert.edge_property || !cert.inequality_holds) {
                        detail = "deviation certificate failed";
                        return false;
                    }
                    ++deviation_certs;
                }
            }
        }
    }
    detail = std::to_string(lemma1_applicable) + " instances with a fully shared edge, " +
             std::to_string(deviation_certs) + " deviation certificates";
    return lemma1_applicable >= 25;
}

bool criterion_5(std::string& detail) {
    std::mt19937_64 rng(77);
    int instances = 0, checks = 0;
    for (std::uint64_t seed = 60000; instances < 200; ++seed) {
        RandomGameParams params;
        params.max_vertices = 6;
        params.max_extra_edges = 5;
        Game game = random_game(seed, params);
        StrategySpace space = enumerate_strategies(game);
        StrategyProfile profile;
        for (int i = 0; i < game.player_count(); ++i)
            profile.paths.push_back(space.paths[i][rng() % space.paths[i].size()]);
        for (int i = 0; i < game.player_count(); ++i) {
            BestResponse fast = best_response(game, profile, i);
            EpsCost brute;
            bool first = true;
            for (const Path& path : space.paths[i]) {
                StrategyProfile switched = profile;
                switched.paths[i] = path;
                EpsCost cost = player_cost(game, switched, i);
                if (first || cost < brute) brute = cost;
                first = false;
            }
            if (fast.cost != brute) {
                detail = "best-response mismatch at seed " + std::to_string(seed);
                return false;
            }
            ++checks;
        }
        ++instances;
    }
    detail = std::to_string(instances) + " instances, " + std::to_string(checks) +
             " best responses, all equal to the enumeration oracle";
    return true;
}

bool criterion_6(std::string& detail) {
    std::ostringstream out;
    for (int k = 2; k <= 4; ++k) {
        Game game = directed_hk_family(k);
        RatioReport ratios = inefficiency_ratios(game);
        if (ratios.pos.limit != harmonic(k)) {
            detail = "pos limit mismatch at k=" + std::to_string(k);
            return false;
        }
        out << "k=" << k << ": " << rational_str(ratios.pos.limit) << "  ";
    }
    detail = out.str();
    return true;
}

bool criterion_7(std::string& detail) {
    Instance inst = reconstruct_fig_a();
    FigAClaims claims = check_fig_a_claims(inst.game);
    int held = 0;
    for (const ClaimVerdict& item : claims.items) {
        if (!item.holds) {
            detail = "claim failed: " + item.claim;
            return false;
        }
        ++held;
    }
    GameAnalysis analysis = analyze_game(inst.game);
    RatioReport ratios = inefficiency_ratios(inst.game, analysis);
    bool ok = analysis.optimum_cost == EpsCost(700, 3) &&
              analysis.minima.size() == 1 &&
              analysis.min_potential == EpsCost(1144, 0) &&
              is_nash(inst.game, analysis.optima.front()) &&
              ratios.pos.limit == 1 && ratios.popos.limit == Rational(286, 175) &&
              ratios.popoa.limit == Rational(286, 175);
    detail = std::to_string(held) + " claims verified; popos=popoa=286/175, pos=1";
    return ok;
}

bool criterion_8(std::string& detail) {
    const std::uint64_t budget = 1000000;  // documented default
    FigBResult figb = reconstruct_fig_b(budget, 1);
    GameAnalysis analysis = analyze_game(figb.instance.game);
    bool unique = analysis.nash.size() == 1;
    bool floor = figb.pos_limit >= Rational(74, 48);
    bool shape = figb.instance.game.vertex_count == 5 &&
                 figb.instance.game.player_count() == 3;
    std::ostringstream out;
    out << "pos=" << rational_str(figb.pos_limit) << " (floor 74/48), exact 1769/1126 match: "
        << (figb.exact_match ? "yes" : "no") << ", evaluations=" << figb.evaluations;
    detail = out.str();
    return unique && floor && shape;
}

bool criterion_9(const std::vector<SweepEntry>& sweep, std::string& detail) {
    // Command reports, repeated runs.
    Instance fig_a = reconstruct_fig_a();
    if (run_analyze(fig_a, "{}") != run_analyze(fig_a, "{}")) {
        detail = "analyze reports differ between runs";
        return false;
    }
    if (run_dynamics(fig_a, R"({"start":"random","schedule":"random","seed":11})") !=
        run_dynamics(fig_a, R"({"start":"random","schedule":"random","seed":11})")) {
        detail = "dynamics reports differ between runs";
        return false;
    }
    std::string gen_a, gen_b;
    run_generate("fig-b", R"({"seed":5})", &gen_a);
    run_generate("fig-b", R"({"seed":5})", &gen_b);
    if (gen_a != gen_b) {
        detail = "generated instances differ between runs";
        return false;
    }
    std::string spec = R"({"instance": "vertices: 3\nedge 0 1 2 1\nedge 0 2 2\nedge 1 2 2\nplayer 0 2\nplayer 1 2\n", "budget": 150, "seed": 9})";
    if (run_search(spec, "{}", nullptr) != run_search(spec, "{}", nullptr)) {
        detail = "search reports differ between runs";
        return false;
    }

    // Parallel sweep: per-instance reports must be byte-identical no matter
    // how the sweep is scheduled. Instances whose optimum is a pure
    // infinitesimal have no ratio limit and are skipped.
    std::vector<const Game*> games;
    for (const SweepEntry& entry : sweep) {
        if (entry.analysis.optimum_cost.base != 0) games.push_back(&entry.game);
        if (games.size() == 48) break;
    }
    const int count = static_cast<int>(games.size());
    std::vector<std::string> sequential(count);
    for (int i = 0; i < count; ++i) {
        Instance inst{*games[i], "", ""};
        sequential[i] = run_analyze(inst, "{}");
    }
    std::vector<std::future<std::string>> futures;
    for (int i = 0; i < count; ++i)
        futures.push_back(std::async(std::launch::async, [&games, i] {
            Instance inst{*games[i], "", ""};
            return run_analyze(inst, "{}");
        }));
    for (int i = 0; i < count; ++i) {
        if (futures[i].get() != sequential[i]) {
            detail = "parallel sweep report differs at instance " + std::to_string(i);
            return false;
        }
    }
    detail = "repeated command reports and a " + std::to_string(count) +
             "-instance parallel sweep are byte-identical";
    return true;
}

bool criterion_10(const std::vector<SweepEntry>& sweep, std::string& detail) {
    int optima = 0;
    for (const SweepEntry& entry : sweep) {
        for (const StrategyProfile& optimum : entry.analysis.optima) {
            if (!used_edges_acyclic(entry.game, optimum)) {
                detail = "cyclic optimum network";
                return false;
            }
            ++optima;
        }
    }
    Instance fig_a = reconstruct_fig_a();
    FigBResult fig_b = reconstruct_fig_b(1000, 1);
    for (const Game* game : {&fig_a.game, &fig_b.instance.game}) {
        GameAnalysis analysis = analyze_game(*game);
        for (const StrategyProfile& optimum : analysis.optima) {
            if (!used_edges_acyclic(*game, optimum)) {
                detail = "cyclic optimum network on a reconstruction";
                return false;
            }
            ++optima;
        }
    }
    detail = std::to_string(optima) + " optima checked, all forests";
    return true;
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    bool all_ok = true;
    auto report = [&](int id, const std::string& name, bool ok, double ms, double limit_ms,
                      const std::string& detail) {
        bool in_time = limit_ms <= 0 || ms <= limit_ms;
        all_ok = all_ok && ok && in_time;
        std::cout << (ok && in_time ? "PASS" : "FAIL") << " criterion " << id << " [" << name
                  << "] (" << static_cast<long long>(ms) << " ms";
        if (limit_ms > 0) std::cout << ", limit " << static_cast<long long>(limit_ms) << " ms";
        std::cout << "): " << detail;
        if (ok && !in_time) std::cout << " -- over the runtime limit";
        std::cout << "\n" << std::flush;
    };
    auto timed = [&](auto&& fn, std::string& detail) {
        auto start = clock::now();
        bool ok = fn(detail);
        double ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
        return std::pair(ok, ms);
    };

    std::string detail;

    {
        auto [ok, ms] = timed([](std::string& d) { return criterion_1(d); }, detail);
        report(1, "closed-form bounds", ok, ms, 1000, detail);
    }
    {
        auto [ok, ms] = timed([](std::string& d) { return criterion_2(d); }, detail);
        report(2, "exact-potential identity", ok, ms, 30000, detail);
    }

    auto sweep_start = clock::now();
    std::vector<SweepEntry> sweep = build_sweep(100);
    double sweep_ms =
        std::chrono::duration<double, std::milli>(clock::now() - sweep_start).count();

    {
        auto [ok, ms] = timed([&](std::string& d) { return criterion_3(sweep, d); }, detail);
        report(3, "potential-minimum sanity sweep", ok, ms + sweep_ms, 300000, detail);
    }
    {
        auto [ok, ms] = timed([&](std::string& d) { return criterion_4(sweep, d); }, detail);
        report(4, "per-instance theorem and lemma checks", ok, ms, 0, detail);
    }
    {
        auto [ok, ms] = timed([](std::string& d) { return criterion_5(d); }, detail);
        report(5, "best-response oracle equivalence", ok, ms, 0, detail);
    }
    {
        auto [ok, ms] = timed([](std::string& d) { return criterion_6(d); }, detail);
        report(6, "directed tight family", ok, ms, 60000, detail);
    }
    {
        auto [ok, ms] = timed([](std::string& d) { return criterion_7(d); }, detail);
        report(7, "three-player tight reconstruction", ok, ms, 60000, detail);
    }
    {
        auto [ok, ms] = timed([](std::string& d) { return criterion_8(d); }, detail);
        report(8, "three-player lower-bound reconstruction", ok, ms, 0, detail);
    }
    {
        auto [ok, ms] = timed([&](std::string& d) { return criterion_9(sweep, d); }, detail);
        report(9, "deterministic reports", ok, ms, 0, detail);
    }
    {
        auto [ok, ms] = timed([&](std::string& d) { return criterion_10(sweep, d); }, detail);
        report(10, "social optima are forests", ok, ms, 0, detail);
    }

    return all_ok ? 0 : 1;
}
