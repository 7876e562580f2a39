#include "sndg/commands.hpp"

#include "sndg/bounds.hpp"
#include "sndg/errors.hpp"
#include "sndg/generators.hpp"
#include "sndg/search.hpp"

#include <json.hpp>

#include <random>

namespace sndg {

namespace {

using nlohmann::json;

json rational_json(const Rational& q) {
    return json{{"num", rational_num(q).str()},
                {"den", rational_den(q).str()},
                {"decimal", decimal_str(q)},
                {"display", rational_str(q)}};
}

std::string eps_decimal(const EpsCost& c) {
    if (c.eps_coeff == 0) return decimal_str(c.base);
    std::string eps = decimal_str(abs(c.eps_coeff)) + "*eps";
    if (c.base == 0) return (c.eps_coeff < 0 ? "-" : "") + eps;
    return decimal_str(c.base) + (c.eps_coeff < 0 ? "-" : "+") + eps;
}

json eps_json(const EpsCost& c) {
    return json{{"num", rational_num(c.base).str()},
                {"den", rational_den(c.base).str()},
                {"eps_num", rational_num(c.eps_coeff).str()},
                {"eps_den", rational_den(c.eps_coeff).str()},
                {"decimal", eps_decimal(c)},
                {"display", eps_cost_str(c)}};
}

json ratio_json(const RatioValue& value) {
    return json{{"limit", rational_json(value.limit)},
                {"direction", value.direction},
                {"numerator", eps_json(value.numerator)},
                {"denominator", eps_json(value.denominator)}};
}

json profile_json(const StrategyProfile& profile) {
    json out = json::array();
    for (const Path& path : profile.paths) out.push_back(path);
    return out;
}

// Flat deterministic text rendering: one "key: value" line per leaf, with
// exact-value objects compacted to their display string.
void render_text(const json& node, const std::string& prefix, std::string& out) {
    if (node.is_object()) {
        if (node.contains("display")) {
            out += prefix + ": " + node["display"].get<std::string>();
            if (node.contains("decimal"))
                out += " (" + node["decimal"].get<std::string>() + ")";
            out += "\n";
            return;
        }
        for (auto it = node.begin(); it != node.end(); ++it)
            render_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (node.is_array()) {
        if (node.empty()) {
            out += prefix + ": []\n";
            return;
        }
        bool scalar = true;
        for (const auto& item : node) scalar = scalar && (item.is_number() || item.is_string());
        if (scalar) {
            out += prefix + ": " + node.dump() + "\n";
        } else {
            int index = 0;
            for (const auto& item : node)
                render_text(item, prefix + "[" + std::to_string(index++) + "]", out);
        }
    } else {
        out += prefix + ": " + (node.is_string() ? node.get<std::string>() : node.dump()) + "\n";
    }
}

struct ParsedOptions {
    json echo;           // options with defaults applied
    std::string format;  // json | text
};

ParsedOptions parse_options(const std::string& options_json, const json& defaults) {
    json given = json::object();
    if (!options_json.empty()) {
        try {
            given = json::parse(options_json);
        } catch (const json::exception& e) {
            throw ArgumentError(std::string("options are not valid JSON: ") + e.what());
        }
        if (!given.is_object()) throw ArgumentError("options must be a JSON object");
    }
    json merged = defaults;
    merged["format"] = "json";
    for (auto it = given.begin(); it != given.end(); ++it) {
        if (!merged.contains(it.key()))
            throw ArgumentError("unknown option '" + it.key() + "'");
        merged[it.key()] = it.value();
    }
    ParsedOptions parsed;
    parsed.format = merged["format"].get<std::string>();
    if (parsed.format != "json" && parsed.format != "text")
        throw ArgumentError("format must be 'json' or 'text'");
    parsed.echo = merged;
    return parsed;
}

EnumLimits limits_from(const json& options) {
    EnumLimits limits;
    limits.path_cap = options.value("max_paths", 10000);
    limits.profile_budget = options.value("profile_budget", std::uint64_t{100000000});
    if (limits.path_cap < 1) throw ArgumentError("max_paths must be positive");
    if (limits.profile_budget < 1) throw ArgumentError("profile_budget must be positive");
    return limits;
}

std::string render_report(const std::string& command, const ParsedOptions& options,
                          const json& instance_block, const json& results) {
    json report{{"schema", 1},
                {"command", command},
                {"options", options.echo},
                {"results", results}};
    if (!instance_block.is_null()) report["instance"] = instance_block;
    if (options.format == "text") {
        std::string out;
        render_text(report, "", out);
        return out;
    }
    return report.dump(2) + "\n";
}

json instance_block_json(const Instance& instance) {
    json block{{"digest", instance_digest(instance)}};
    if (!instance.name.empty()) block["name"] = instance.name;
    return block;
}

void require_valid(const Game& game) {
    std::vector<std::string> violations = validate_game(game);
    if (!violations.empty()) {
        std::string message = "invalid instance:";
        for (const std::string& v : violations) message += " " + v + ";";
        message.pop_back();
        throw ValidationError(message);
    }
}

json analysis_json(const Game& game, const GameAnalysis& analysis) {
    const int k = game.player_count();
    json results;
    results["players"] = k;
    results["vertices"] = game.vertex_count;
    results["edges"] = game.edge_count();
    results["path_counts"] = analysis.path_counts;
    results["profile_count"] = analysis.profile_count;

    bool forest = true;
    if (!game.directed)
        for (const StrategyProfile& profile : analysis.optima)
            forest = forest && used_edges_acyclic(game, profile);
    results["optimum"] = json{{"cost", eps_json(analysis.optimum_cost)},
                              {"count", analysis.optima.size()},
                              {"witness", profile_json(analysis.optima.front())},
                              {"forest", game.directed ? json() : json(forest)}};
    results["nash"] = json{{"count", analysis.nash.size()},
                           {"min_cost", eps_json(analysis.nash_min_cost)},
                           {"max_cost", eps_json(analysis.nash_max_cost)}};
    results["potential_minima"] = json{{"count", analysis.minima.size()},
                                       {"potential", eps_json(analysis.min_potential)},
                                       {"min_cost", eps_json(analysis.minima_min_cost)},
                                       {"max_cost", eps_json(analysis.minima_max_cost)},
                                       {"witness", profile_json(analysis.minima.front())}};

    RatioReport ratios = inefficiency_ratios(game, analysis);
    results["ratios"] = json{{"pos", ratio_json(ratios.pos)},
                             {"popos", ratio_json(ratios.popos)},
                             {"popoa", ratio_json(ratios.popoa)},
                             {"poa", ratio_json(ratios.poa)},
                             {"chain_holds", ratios.chain_holds}};
    results["witnesses"] = json{{"best_nash", profile_json(ratios.best_nash)},
                                {"worst_nash", profile_json(ratios.worst_nash)},
                                {"best_minimum", profile_json(ratios.best_minimum)},
                                {"worst_minimum", profile_json(ratios.worst_minimum)}};

    json checks;
    checks["cost_le_hk_cost"] =
        analysis.minima_max_cost <= harmonic(k) * analysis.optimum_cost;
    if (k >= 2) {
        Rational bound = theorem_bound(k);
        checks["theorem_bound"] = rational_json(bound);
        checks["theorem_holds"] = analysis.minima_max_cost <= bound * analysis.optimum_cost;
    }
    results["checks"] = checks;
    return results;
}

}  // namespace

std::string run_analyze(const Instance& instance, const std::string& options_json) {
    ParsedOptions options = parse_options(
        options_json,
        json{{"max_paths", 10000}, {"profile_budget", std::uint64_t{100000000}}});
    require_valid(instance.game);
    GameAnalysis analysis = analyze_game(instance.game, limits_from(options.echo));
    return render_report("analyze", options, instance_block_json(instance),
                         analysis_json(instance.game, analysis));
}

std::string run_bounds(int k, const std::string& options_json) {
    ParsedOptions options = parse_options(options_json, json::object());
    if (k < 2) throw ArgumentError("bounds requires k >= 2");
    Rational bound = theorem_bound(k);
    Rational gap = theorem_gap_factor(k);
    Rational k4(k);
    k4 = k4 * k4 * k4 * k4;
    json results{{"k", k},
                 {"theorem_bound", rational_json(bound)},
                 {"harmonic", rational_json(harmonic(k))},
                 {"gap_factor", rational_json(gap)},
                 {"k4_times_gap", rational_json(k4 * gap)},
                 {"lemma1_factor", rational_json(lemma1_factor(k))},
                 {"lemma2_bound_at_lemma1_factor",
                  rational_json(lemma2_bound(lemma1_factor(k), k))}};
    return render_report("bounds", options, json(), results);
}

std::string run_dynamics(const Instance& instance, const std::string& options_json) {
    ParsedOptions options = parse_options(
        options_json, json{{"max_paths", 10000},
                           {"profile_budget", std::uint64_t{100000000}},
                           {"start", "canonical"},
                           {"schedule", "round-robin"},
                           {"seed", std::uint64_t{1}},
                           {"max_steps", std::uint64_t{100000}}});
    require_valid(instance.game);
    const Game& game = instance.game;
    EnumLimits limits = limits_from(options.echo);

    std::string start_mode = options.echo["start"].get<std::string>();
    std::uint64_t seed = options.echo["seed"].get<std::uint64_t>();
    StrategyProfile start;
    if (start_mode == "canonical") {
        for (int i = 0; i < game.player_count(); ++i)
            start.paths.push_back(enumerate_simple_paths(game, i, limits.path_cap).front());
    } else if (start_mode == "random") {
        std::mt19937_64 rng(seed ^ 0x5bf03635ull);
        for (int i = 0; i < game.player_count(); ++i) {
            auto paths = enumerate_simple_paths(game, i, limits.path_cap);
            start.paths.push_back(paths[rng() % paths.size()]);
        }
    } else {
        throw ArgumentError("start must be 'canonical' or 'random'");
    }

    std::string schedule_name = options.echo["schedule"].get<std::string>();
    Schedule schedule;
    if (schedule_name == "round-robin") schedule = Schedule::round_robin;
    else if (schedule_name == "random") schedule = Schedule::seeded_random;
    else throw ArgumentError("schedule must be 'round-robin' or 'random'");

    DynamicsTrace trace = best_response_dynamics(
        game, start, schedule, seed, options.echo["max_steps"].get<std::uint64_t>());

    json steps = json::array();
    for (const DynamicsStep& step : trace.steps)
        steps.push_back(json{{"player", step.player},
                             {"from", step.from},
                             {"to", step.to},
                             {"delta", eps_json(step.delta)},
                             {"potential", eps_json(step.phi_after)}});
    json results{{"start", profile_json(start)},
                 {"steps", steps},
                 {"step_count", trace.steps.size()},
                 {"terminal", profile_json(trace.terminal)},
                 {"terminal_cost", eps_json(social_cost(game, trace.terminal))},
                 {"terminal_potential", eps_json(potential(game, trace.terminal))},
                 {"terminal_is_nash", is_nash(game, trace.terminal)}};
    return render_report("dynamics", options, instance_block_json(instance), results);
}

std::string run_check(const Instance& instance, const std::string& options_json) {
    ParsedOptions options = parse_options(
        options_json, json{{"max_paths", 10000},
                           {"profile_budget", std::uint64_t{100000000}},
                           {"lemma", "theorem"}});
    require_valid(instance.game);
    const Game& game = instance.game;
    const int k = game.player_count();
    EnumLimits limits = limits_from(options.echo);
    std::string lemma = options.echo["lemma"].get<std::string>();
    if (lemma != "1" && lemma != "2" && lemma != "hk1" && lemma != "theorem")
        throw ArgumentError("lemma must be one of 1, 2, hk1, theorem");

    GameAnalysis analysis = analyze_game(game, limits);
    const StrategyProfile& optimum = analysis.optima.front();

    json results{{"lemma", lemma}, {"k", k}, {"optimum_cost", eps_json(analysis.optimum_cost)}};
    if (k < 2) {
        results["applicable"] = false;
        results["reason"] = "checks require k >= 2";
        return render_report("check", options, instance_block_json(instance), results);
    }
    UsageHistogram hist_o = usage_histogram(game, optimum);

    if (lemma == "theorem") {
        Rational bound = theorem_bound(k);
        results["bound"] = rational_json(bound);
        json reports = json::array();
        bool all = true;
        for (const StrategyProfile& minimum : analysis.minima) {
            EpsCost cost = social_cost(game, minimum);
            bool holds = cost <= bound * analysis.optimum_cost;
            all = all && holds;
            reports.push_back(json{{"cost", eps_json(cost)}, {"holds", holds}});
        }
        results["applicable"] = true;
        results["minima"] = reports;
        results["all_hold"] = all;
    } else if (lemma == "1") {
        bool applicable = hist_o.at(k) != EpsCost::zero();
        results["applicable"] = applicable;
        results["factor"] = rational_json(lemma1_factor(k));
        if (!applicable) {
            results["reason"] = "not applicable: no optimum edge is shared by all players";
        } else {
            json reports = json::array();
            bool all = true;
            for (const StrategyProfile& minimum : analysis.minima) {
                LemmaOneReport report = lemma1_check(game, minimum, optimum, limits);
                all = all && report.holds;
                reports.push_back(json{{"lhs", eps_json(report.lhs)},
                                       {"rhs", eps_json(report.rhs)},
                                       {"holds", report.holds}});
            }
            results["minima"] = reports;
            results["all_hold"] = all;
        }
    } else if (lemma == "2") {
        json reports = json::array();
        bool all = true;
        for (const StrategyProfile& minimum : analysis.minima) {
            LemmaTwoReport report = lemma2_check(game, minimum, optimum);
            all = all && report.implication_holds;
            reports.push_back(json{{"beta", rational_json(report.beta)},
                                   {"bound_factor", rational_json(report.bound_factor)},
                                   {"phi_antecedent", report.phi_antecedent},
                                   {"usage_antecedent", report.usage_antecedent},
                                   {"conclusion", report.conclusion},
                                   {"implication_holds", report.implication_holds},
                                   {"cost", eps_json(report.cost_nash)}});
        }
        results["applicable"] = true;
        results["minima"] = reports;
        results["all_hold"] = all;
    } else {  // hk1
        bool applicable = hist_o.at(k) == EpsCost::zero();
        results["applicable"] = applicable;
        if (!applicable) {
            results["reason"] = "not applicable: some optimum edge is shared by all players";
        } else {
            results["coefficient"] = rational_json(harmonic(k - 1));
            json reports = json::array();
            bool all = true;
            for (const StrategyProfile& minimum : analysis.minima) {
                HkMinusOneReport report = hk_minus1_check(game, minimum, optimum);
                all = all && report.holds;
                reports.push_back(
                    json{{"cost", eps_json(report.cost_nash)}, {"holds", report.holds}});
            }
            results["minima"] = reports;
            results["all_hold"] = all;
        }
    }
    return render_report("check", options, instance_block_json(instance), results);
}

std::string run_generate(const std::string& family, const std::string& options_json,
                         std::string* instance_text_out) {
    ParsedOptions options = parse_options(
        options_json,
        json{{"k", 3}, {"budget", std::uint64_t{1000000}}, {"seed", std::uint64_t{1}}});
    Instance instance;
    json extra;
    if (family == "directed-hk") {
        int k = options.echo["k"].get<int>();
        instance.game = directed_hk_family(k);
        instance.name = "directed-hk-" + std::to_string(k);
        instance.note = "provenance: generated";
        RatioReport ratios = inefficiency_ratios(instance.game);
        extra["pos"] = ratio_json(ratios.pos);
        extra["pos_limit_is_harmonic"] = ratios.pos.limit == harmonic(k);
    } else if (family == "fig-a") {
        instance = reconstruct_fig_a();
        FigAClaims claims = check_fig_a_claims(instance.game);
        extra["claims_checked"] = claims.items.size();
        extra["claims_hold"] = claims.all_hold;
        RatioReport ratios = inefficiency_ratios(instance.game);
        extra["popos"] = ratio_json(ratios.popos);
        extra["pos"] = ratio_json(ratios.pos);
    } else if (family == "fig-b") {
        FigBResult figb = reconstruct_fig_b(options.echo["budget"].get<std::uint64_t>(),
                                            options.echo["seed"].get<std::uint64_t>());
        instance = figb.instance;
        extra["exact_match"] = figb.exact_match;
        extra["pos_limit"] = rational_json(figb.pos_limit);
        extra["evaluations"] = figb.evaluations;
        extra["search_report"] = figb.report;
        extra["meets_floor"] = figb.pos_limit > Rational(74, 48);
    } else {
        throw ArgumentError("unknown family '" + family + "'");
    }

    if (instance_text_out) *instance_text_out = serialize_instance(instance);
    json results{{"family", family}, {"details", extra}};
    return render_report("generate", options, instance_block_json(instance), results);
}

std::string run_search(const std::string& spec_json, const std::string& options_json,
                       std::string* instance_text_out) {
    ParsedOptions options = parse_options(
        options_json, json{{"budget", std::uint64_t{0}}, {"seed", std::uint64_t{0}}});
    SearchSpec spec = parse_search_spec(spec_json);
    // Non-zero command options override the spec file.
    if (std::uint64_t b = options.echo["budget"].get<std::uint64_t>(); b > 0) spec.budget = b;
    if (std::uint64_t s = options.echo["seed"].get<std::uint64_t>(); s > 0) spec.seed = s;

    SearchResult result = search_costs(spec);
    if (instance_text_out) *instance_text_out = serialize_instance(result.best);

    json improvements = json::array();
    for (const SearchImprovement& imp : result.improvements)
        improvements.push_back(
            json{{"evaluation", imp.evaluation}, {"objective", rational_json(imp.objective)}});
    json results{{"evaluations", result.evaluations},
                 {"budget", spec.budget},
                 {"seed", spec.seed},
                 {"feasible", result.feasible},
                 {"best_objective", rational_json(result.best_objective)},
                 {"improvements", improvements},
                 {"best_instance", instance_block_json(result.best)}};
    return render_report("search", options, json(), results);
}

}  // namespace sndg
