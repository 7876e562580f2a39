#include "sndg/search.hpp"

#include "sndg/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <random>

namespace sndg {

namespace {

// Objective value to maximize; nullopt when the candidate cannot be scored.
std::optional<Rational> evaluate(const SearchSpec& spec, const Game& game) {
    if (!validate_game(game).empty()) return std::nullopt;
    RatioReport ratios;
    try {
        ratios = inefficiency_ratios(game, spec.limits);
    } catch (const Error&) {
        return std::nullopt;
    }
    switch (spec.objective) {
        case SearchObjective::maximize_pos:
            return ratios.pos.limit;
        case SearchObjective::maximize_popos:
            return ratios.popos.limit;
        case SearchObjective::match_targets: {
            Rational distance = 0;
            for (const TargetSpec& target : spec.targets) {
                Rational actual;
                if (target.name == "pos") actual = ratios.pos.limit;
                else if (target.name == "poa") actual = ratios.poa.limit;
                else if (target.name == "popos") actual = ratios.popos.limit;
                else if (target.name == "popoa") actual = ratios.popoa.limit;
                // cost targets compare against the constant term
                else if (target.name == "optimum-cost") actual = ratios.pos.denominator.base;
                else if (target.name == "nash-min-cost") actual = ratios.pos.numerator.base;
                else if (target.name == "nash-max-cost") actual = ratios.poa.numerator.base;
                else throw ArgumentError("unknown target '" + target.name + "'");
                distance += abs(actual - target.value);
            }
            return -distance;
        }
    }
    return std::nullopt;
}

}  // namespace

SearchResult search_costs(const SearchSpec& spec) {
    if (spec.budget < 1) throw ArgumentError("search budget must be positive");
    if (spec.slots.empty()) throw ArgumentError("search spec has no cost slots");
    if (spec.objective == SearchObjective::match_targets && spec.targets.empty())
        throw ArgumentError("match-targets objective without targets");
    for (const CostSlot& slot : spec.slots) {
        if (slot.edge < 0 || slot.edge >= spec.skeleton.game.edge_count())
            throw ArgumentError("cost slot references edge " + std::to_string(slot.edge));
        if (slot.min_value < 0 || slot.min_value > slot.max_value)
            throw ArgumentError("cost slot bounds are inconsistent");
    }

    std::mt19937_64 rng(spec.seed);
    const std::array<long long, 5> deltas{1, 2, 5, 10, 25};

    std::vector<long long> values;
    for (const CostSlot& slot : spec.slots) {
        Rational base = spec.skeleton.game.edges[slot.edge].cost.base;
        long long v = rational_den(base) == 1 ? static_cast<long long>(rational_num(base))
                                              : slot.min_value;
        values.push_back(std::clamp(v, slot.min_value, slot.max_value));
    }

    auto build = [&](const std::vector<long long>& vs) {
        Game game = spec.skeleton.game;
        for (size_t s = 0; s < spec.slots.size(); ++s)
            game.edges[spec.slots[s].edge].cost.base = Rational(vs[s]);
        return game;
    };

    SearchResult result;
    auto score_current = [&](const std::vector<long long>& vs) {
        ++result.evaluations;
        return evaluate(spec, build(vs));
    };

    std::optional<Rational> current = score_current(values);
    std::vector<long long> best_values = values;
    if (current) {
        result.feasible = true;
        result.best_objective = *current;
        result.improvements.push_back({result.evaluations, *current});
    }

    int stall = 0;
    while (result.evaluations < spec.budget) {
        size_t s = rng() % spec.slots.size();
        long long old = values[s];
        long long candidate;
        switch (rng() % 4) {
            case 0: candidate = old + deltas[rng() % deltas.size()]; break;
            case 1: candidate = old - deltas[rng() % deltas.size()]; break;
            case 2: candidate = old * 2; break;
            default: candidate = old / 2; break;
        }
        candidate = std::clamp(candidate, spec.slots[s].min_value, spec.slots[s].max_value);
        if (candidate == old) continue;
        values[s] = candidate;

        std::optional<Rational> next = score_current(values);
        bool improved = next && (!current || *next > *current);
        if (improved) {
            current = next;
            stall = 0;
            if (!result.feasible || *next > result.best_objective) {
                result.feasible = true;
                result.best_objective = *next;
                best_values = values;
                result.improvements.push_back({result.evaluations, *next});
            }
        } else {
            values[s] = old;
            if (++stall > 200) {
                for (size_t i = 0; i < values.size(); ++i) {
                    long long span = spec.slots[i].max_value - spec.slots[i].min_value;
                    values[i] = spec.slots[i].min_value +
                                (span > 0 ? static_cast<long long>(rng() % (span + 1)) : 0);
                }
                if (result.evaluations < spec.budget) {
                    current = score_current(values);
                    if (current && (!result.feasible || *current > result.best_objective)) {
                        result.feasible = true;
                        result.best_objective = *current;
                        best_values = values;
                        result.improvements.push_back({result.evaluations, *current});
                    }
                }
                stall = 0;
            }
        }
    }

    if (!result.feasible)
        throw BudgetError("no feasible cost assignment within " + std::to_string(spec.budget) +
                          " evaluations");
    result.best = spec.skeleton;
    result.best.game = build(best_values);
    return result;
}

SearchSpec parse_search_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("search spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("instance") || !j["instance"].is_string())
        throw ArgumentError("search spec requires an 'instance' text field");

    SearchSpec spec;
    spec.skeleton = parse_instance(j["instance"].get<std::string>());

    if (j.contains("slots")) {
        for (const auto& s : j["slots"]) {
            CostSlot slot;
            slot.edge = s.at("edge").get<int>();
            if (s.contains("min")) slot.min_value = s["min"].get<long long>();
            if (s.contains("max")) slot.max_value = s["max"].get<long long>();
            spec.slots.push_back(slot);
        }
    } else {
        for (int e = 0; e < spec.skeleton.game.edge_count(); ++e)
            spec.slots.push_back({e, 1, 2000});
    }

    std::string objective = j.value("objective", std::string("maximize-pos"));
    if (objective == "maximize-pos") spec.objective = SearchObjective::maximize_pos;
    else if (objective == "maximize-popos") spec.objective = SearchObjective::maximize_popos;
    else if (objective == "match-targets") spec.objective = SearchObjective::match_targets;
    else throw ArgumentError("unknown objective '" + objective + "'");

    if (j.contains("targets")) {
        for (const auto& t : j["targets"]) {
            TargetSpec target;
            target.name = t.at("name").get<std::string>();
            std::string value = t.at("value").get<std::string>();
            if (!try_parse_rational(value, target.value))
                throw ArgumentError("target value '" + value + "' is not a rational");
            spec.targets.push_back(target);
        }
    }
    spec.budget = j.value("budget", std::uint64_t{10000});
    spec.seed = j.value("seed", std::uint64_t{1});
    spec.limits.path_cap = j.value("max_paths", 10000);
    spec.limits.profile_budget = j.value("profile_budget", std::uint64_t{100000000});
    return spec;
}

}  // namespace sndg
