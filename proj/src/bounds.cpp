#include "sndg/bounds.hpp"

#include "sndg/errors.hpp"

#include <algorithm>
#include <set>

namespace sndg {

Rational theorem_bound(int k) {
    if (k < 2) throw ArgumentError("theorem_bound requires k >= 2");
    Rational kk(k);
    Rational b = kk * kk * kk * (kk + 1) / 2 - kk * kk;
    return b / (1 + b) * harmonic(k);
}

Rational theorem_gap_factor(int k) {
    if (k < 2) throw ArgumentError("theorem_gap_factor requires k >= 2");
    Rational kk(k);
    Rational b = kk * kk * kk * (kk + 1) / 2 - kk * kk;
    return 1 / (1 + b);
}

Rational lemma1_factor(int k) {
    if (k < 2) throw ArgumentError("lemma1_factor requires k >= 2");
    Rational kk(k);
    return kk * kk * (kk + 1) / 2 - kk;
}

Rational lemma2_bound(const Rational& beta, int k) {
    if (k < 2) throw ArgumentError("lemma2_bound requires k >= 2");
    if (beta <= 0) throw ArgumentError("lemma2_bound requires beta > 0");
    return beta * k / (1 + beta * k) * harmonic(k);
}

namespace {

EpsCost partial_usage(const UsageHistogram& hist, int k) {
    EpsCost total;
    for (int j = 1; j < k; ++j) total += hist.at(j);
    return total;
}

}  // namespace

LemmaOneReport lemma1_check(const Game& game, const StrategyProfile& nash,
                            const StrategyProfile& optimum, const EnumLimits& limits) {
    const int k = game.player_count();
    if (k < 2) throw PreconditionError("lemma1_check requires k >= 2");
    if (!is_nash(game, nash))
        throw PreconditionError("lemma1_check: N is not a Nash equilibrium");
    EpsCost opt_value = social_optimum(game, limits).value;
    if (social_cost(game, optimum) != opt_value)
        throw PreconditionError("lemma1_check: O is not a social optimum");

    LemmaOneReport report;
    report.factor = lemma1_factor(k);
    UsageHistogram hist_n = usage_histogram(game, nash);
    UsageHistogram hist_o = usage_histogram(game, optimum);
    report.applicable = hist_o.at(k) != EpsCost::zero();
    report.lhs = partial_usage(hist_n, k);
    report.rhs = report.factor * partial_usage(hist_o, k);
    report.holds = report.lhs <= report.rhs;
    return report;
}

LemmaTwoReport lemma2_check(const Game& game, const StrategyProfile& nash,
                            const StrategyProfile& optimum) {
    const int k = game.player_count();
    if (k < 2) throw PreconditionError("lemma2_check requires k >= 2");

    LemmaTwoReport report;
    report.beta = lemma1_factor(k);
    report.bound_factor = lemma2_bound(report.beta, k);
    report.potential_nash = potential(game, nash);
    report.potential_optimum = potential(game, optimum);
    report.cost_nash = social_cost(game, nash);
    report.cost_optimum = social_cost(game, optimum);
    report.phi_antecedent = report.potential_nash <= report.potential_optimum;

    UsageHistogram hist_n = usage_histogram(game, nash);
    UsageHistogram hist_o = usage_histogram(game, optimum);
    report.usage_antecedent =
        partial_usage(hist_n, k) <= report.beta * partial_usage(hist_o, k);
    report.conclusion = report.cost_nash <= report.bound_factor * report.cost_optimum;
    report.implication_holds =
        !(report.phi_antecedent && report.usage_antecedent) || report.conclusion;
    return report;
}

HkMinusOneReport hk_minus1_check(const Game& game, const StrategyProfile& nash,
                                 const StrategyProfile& optimum) {
    const int k = game.player_count();
    UsageHistogram hist_o = usage_histogram(game, optimum);
    if (hist_o.at(k) != EpsCost::zero())
        throw PreconditionError("hk_minus1_check: some optimum edge is shared by all players");
    if (potential(game, nash) > potential(game, optimum))
        throw PreconditionError("hk_minus1_check: N does not have minimal-side potential");

    HkMinusOneReport report;
    report.coefficient = harmonic(k - 1);
    report.cost_nash = social_cost(game, nash);
    report.cost_optimum = social_cost(game, optimum);
    report.holds = report.cost_nash <= report.coefficient * report.cost_optimum;
    return report;
}

namespace {

std::vector<int> component_labels(const Game& game, const std::vector<int>& edge_ids) {
    std::vector<int> parent(game.vertex_count);
    for (int v = 0; v < game.vertex_count; ++v) parent[v] = v;
    auto find = [&](int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (int e : edge_ids) {
        int a = find(game.edges[e].u);
        int b = find(game.edges[e].v);
        if (a != b) parent[a] = b;
    }
    std::vector<int> label(game.vertex_count);
    for (int v = 0; v < game.vertex_count; ++v) label[v] = find(v);
    return label;
}

}  // namespace

MajorTreeOrder major_tree_order(const Game& game, const StrategyProfile& optimum) {
    const int k = game.player_count();
    if (game.directed) throw StructureError("major-tree order is defined for undirected games");
    if (k < 2) throw StructureError("major-tree order requires k >= 2 (single tree)");
    if (!used_edges_acyclic(game, optimum))
        throw StructureError("optimum network is not a forest");

    LoadMap lm = edge_loads(game, optimum);
    MajorTreeOrder result;
    std::vector<int> rest;
    for (int e = 0; e < game.edge_count(); ++e) {
        if (lm.load(e) == k) result.o_k.push_back(e);
        else if (lm.load(e) > 0) rest.push_back(e);
    }
    if (result.o_k.empty())
        throw StructureError("no optimum edge is shared by all players");

    // Components of the optimum network with the fully-shared edges removed.
    std::vector<int> label = component_labels(game, rest);
    std::set<int> terminal_components;
    for (const Player& p : game.players) {
        terminal_components.insert(label[p.source]);
        terminal_components.insert(label[p.target]);
    }
    if (terminal_components.size() != 2)
        throw StructureError("terminals span " + std::to_string(terminal_components.size()) +
                             " components instead of 2");
    int comp_a = *terminal_components.begin();
    int comp_b = *std::next(terminal_components.begin());
    for (int i = 0; i < k; ++i) {
        const Player& p = game.players[i];
        if (label[p.source] == label[p.target])
            throw StructureError("player " + std::to_string(i) +
                                 " has both terminals in one tree");
    }

    std::vector<int> edges_a, edges_b;
    EpsCost cost_a, cost_b;
    for (int e : rest) {
        if (label[game.edges[e].u] == comp_a) {
            edges_a.push_back(e);
            cost_a += game.edges[e].cost;
        } else if (label[game.edges[e].u] == comp_b) {
            edges_b.push_back(e);
            cost_b += game.edges[e].cost;
        }
        // Edges outside both terminal components cannot exist: the optimum is
        // a forest whose every edge lies on some player's path, and each path
        // crosses from one terminal component to the other.
        else
            throw StructureError("optimum edge outside both terminal trees");
    }

    bool a_is_major;
    if (cost_a != cost_b) {
        a_is_major = cost_b < cost_a;
    } else if (!edges_a.empty() || !edges_b.empty()) {
        // Tie on cost: the tree containing the least edge id is the major one.
        int min_a = edges_a.empty() ? game.edge_count() : *std::min_element(edges_a.begin(), edges_a.end());
        int min_b = edges_b.empty() ? game.edge_count() : *std::min_element(edges_b.begin(), edges_b.end());
        a_is_major = min_a < min_b;
    } else {
        // Both trees are single vertices; take the one with the least vertex id.
        a_is_major = comp_a < comp_b;
    }
    result.o_plus = a_is_major ? edges_a : edges_b;
    result.o_minus = a_is_major ? edges_b : edges_a;
    int major_comp = a_is_major ? comp_a : comp_b;

    // Depth-first closed walk of the major tree from its least vertex,
    // following incident edges in ascending id order. Every tree edge is
    // traversed exactly twice.
    std::vector<std::vector<int>> incident(game.vertex_count);
    for (int e : result.o_plus) {
        incident[game.edges[e].u].push_back(e);
        incident[game.edges[e].v].push_back(e);
    }
    int start = -1;
    for (int v = 0; v < game.vertex_count; ++v)
        if (label[v] == major_comp && (start == -1)) start = v;
    std::vector<bool> visited(game.vertex_count, false);
    auto dfs = [&](auto&& self, int at) -> void {
        visited[at] = true;
        result.walk.push_back(at);
        for (int e : incident[at]) {
            int next = game.other_end(e, at);
            if (visited[next]) continue;
            self(self, next);
            result.walk.push_back(at);
        }
    };
    dfs(dfs, start);

    // First visit time of each vertex along the walk.
    std::vector<int> first_visit(game.vertex_count, -1);
    for (int i = 0; i < static_cast<int>(result.walk.size()); ++i)
        if (first_visit[result.walk[i]] == -1) first_visit[result.walk[i]] = i;

    result.order.resize(k);
    for (int i = 0; i < k; ++i) result.order[i] = i;
    std::sort(result.order.begin(), result.order.end(), [&](int i, int j) {
        const Player& pi = game.players[i];
        const Player& pj = game.players[j];
        int ti = label[pi.source] == major_comp ? pi.source : pi.target;
        int tj = label[pj.source] == major_comp ? pj.source : pj.target;
        if (first_visit[ti] != first_visit[tj]) return first_visit[ti] < first_visit[tj];
        return i < j;
    });
    return result;
}

namespace {

int find_position(const std::vector<int>& seq, int vertex) {
    for (int i = 0; i < static_cast<int>(seq.size()); ++i)
        if (seq[i] == vertex) return i;
    return -1;
}

// Removes cycles from a walk given as (vertex sequence, edge sequence),
// producing a simple path.
Path erase_cycles(const std::vector<int>& vertices, const Path& edges) {
    std::vector<int> out_vertices;
    Path out_edges;
    std::vector<int> position;  // position of vertex in out_vertices, -1 if absent
    int max_vertex = 0;
    for (int v : vertices) max_vertex = std::max(max_vertex, v);
    position.assign(max_vertex + 1, -1);

    out_vertices.push_back(vertices[0]);
    position[vertices[0]] = 0;
    for (size_t i = 0; i < edges.size(); ++i) {
        int next = vertices[i + 1];
        if (position[next] != -1) {
            // Truncate the loop back to the previous visit of `next`.
            int keep = position[next];
            while (static_cast<int>(out_vertices.size()) > keep + 1) {
                position[out_vertices.back()] = -1;
                out_vertices.pop_back();
                out_edges.pop_back();
            }
        } else {
            out_vertices.push_back(next);
            out_edges.push_back(edges[i]);
            position[next] = static_cast<int>(out_vertices.size()) - 1;
        }
    }
    return out_edges;
}

}  // namespace

DeviationCertificate deviation_path(const Game& game, const StrategyProfile& nash,
                                    const StrategyProfile& optimum, int player,
                                    DeviationDirection direction) {
    const int k = game.player_count();
    if (game.directed)
        throw StructureError("deviation paths are defined for undirected games");
    if (k < 2) throw StructureError("deviation paths require k >= 2");

    UsageHistogram hist_o = usage_histogram(game, optimum);
    if (hist_o.at(k) == EpsCost::zero())
        throw StructureError("no optimum edge is shared by all players");

    const int neighbor =
        direction == DeviationDirection::successor ? (player + 1) % k : (player + k - 1) % k;

    const Player& pi = game.players[player];
    const Player& pn = game.players[neighbor];

    std::vector<int> seq_i = path_vertex_sequence(game, pi.source, optimum.paths[player]);
    std::vector<int> seq_n = path_vertex_sequence(game, pn.source, optimum.paths[neighbor]);

    std::vector<bool> on_neighbor(game.vertex_count, false);
    for (int v : seq_n) on_neighbor[v] = true;

    int u_pos = -1, v_pos = -1;
    for (int i = 0; i < static_cast<int>(seq_i.size()); ++i) {
        if (on_neighbor[seq_i[i]]) {
            if (u_pos == -1) u_pos = i;
            v_pos = i;
        }
    }
    if (u_pos == -1)
        throw StructureError("optimum paths of players " + std::to_string(player) + " and " +
                             std::to_string(neighbor) + " do not meet");

    DeviationCertificate cert;
    cert.junction_first = seq_i[u_pos];
    cert.junction_last = seq_i[v_pos];

    // Orient the neighbor's paths so the first junction precedes the last one
    // on her optimum path.
    std::vector<int> n_vertices = seq_n;
    Path n_opt_edges = optimum.paths[neighbor];
    Path n_nash_edges = nash.paths[neighbor];
    int pos_u = find_position(n_vertices, cert.junction_first);
    int pos_v = find_position(n_vertices, cert.junction_last);
    if (pos_u > pos_v) {
        std::reverse(n_vertices.begin(), n_vertices.end());
        std::reverse(n_opt_edges.begin(), n_opt_edges.end());
        std::reverse(n_nash_edges.begin(), n_nash_edges.end());
        std::swap(pos_u, pos_v);
        pos_u = find_position(n_vertices, cert.junction_first);
        pos_v = find_position(n_vertices, cert.junction_last);
        cert.reversed_neighbor = true;
    }

    // Walk: O_i prefix to u, O_n backwards from u to the neighbor's source,
    // N_n across, O_n backwards from her target to v, O_i suffix from v.
    std::vector<int> walk_vertices;
    Path walk_edges;
    auto append = [&](const std::vector<int>& vs, const Path& es, int from, int to, bool forward) {
        // Appends the segment of (vs, es) between vertex positions from..to.
        if (forward) {
            for (int i = from; i < to; ++i) {
                walk_edges.push_back(es[i]);
                walk_vertices.push_back(vs[i + 1]);
            }
        } else {
            for (int i = from; i > to; --i) {
                walk_edges.push_back(es[i - 1]);
                walk_vertices.push_back(vs[i - 1]);
            }
        }
    };

    walk_vertices.push_back(pi.source);
    append(seq_i, optimum.paths[player], 0, u_pos, true);
    append(n_vertices, n_opt_edges, pos_u, 0, false);
    std::vector<int> n_nash_vertices =
        path_vertex_sequence(game, n_vertices.front(), n_nash_edges);
    append(n_nash_vertices, n_nash_edges, 0,
           static_cast<int>(n_nash_edges.size()), true);
    append(n_vertices, n_opt_edges, static_cast<int>(n_opt_edges.size()), pos_v, false);
    append(seq_i, optimum.paths[player], v_pos, static_cast<int>(seq_i.size()) - 1, true);

    cert.path = erase_cycles(walk_vertices, walk_edges);
    std::string reason = check_path(game, player, cert.path);
    if (!reason.empty())
        throw InternalError("deviation path construction failed: " + reason);

    // Edge property: every edge lies on the neighbor's equilibrium path or
    // outside the fully-shared optimum edges.
    LoadMap lm_o = edge_loads(game, optimum);
    std::set<int> neighbor_nash(nash.paths[neighbor].begin(), nash.paths[neighbor].end());
    cert.edge_property = true;
    for (int e : cert.path) {
        if (!neighbor_nash.count(e) && lm_o.load(e) == k) cert.edge_property = false;
    }

    // Edges of the deviation path inside the optimum network.
    for (int e : cert.path)
        if (lm_o.load(e) > 0) cert.optimum_overlap.push_back(e);

    // Exchange inequality: the gain player i keeps on edges she does not
    // share with the neighbor is bounded by the full cost of the deviation
    // path's optimum edges.
    LoadMap lm_n = edge_loads(game, nash);
    std::set<int> own_nash(nash.paths[player].begin(), nash.paths[player].end());
    EpsCost lhs;
    for (int e : nash.paths[player])
        if (!neighbor_nash.count(e)) lhs += game.edges[e].cost / lm_n.load(e);
    for (int e : nash.paths[neighbor])
        if (!own_nash.count(e)) lhs -= game.edges[e].cost / (lm_n.load(e) + 1);
    EpsCost rhs;
    for (int e : cert.optimum_overlap) rhs += game.edges[e].cost;
    cert.lhs = lhs;
    cert.rhs = rhs;
    cert.inequality_holds = lhs <= rhs;
    return cert;
}

RatioValue make_ratio(const EpsCost& numerator, const EpsCost& denominator) {
    if (denominator.base == 0)
        throw DegenerateError("ratio denominator has zero constant term");
    RatioValue value;
    value.numerator = numerator;
    value.denominator = denominator;
    value.limit = numerator.base / denominator.base;
    Rational slope =
        numerator.eps_coeff * denominator.base - numerator.base * denominator.eps_coeff;
    value.direction = slope == 0 ? 0 : (slope > 0 ? 1 : -1);
    return value;
}

RatioReport inefficiency_ratios(const Game& game, const GameAnalysis& analysis) {
    RatioReport report;
    const EpsCost& opt = analysis.optimum_cost;
    report.pos = make_ratio(analysis.nash_min_cost, opt);
    report.poa = make_ratio(analysis.nash_max_cost, opt);
    report.popos = make_ratio(analysis.minima_min_cost, opt);
    report.popoa = make_ratio(analysis.minima_max_cost, opt);
    report.chain_holds = analysis.nash_min_cost <= analysis.minima_min_cost &&
                         analysis.minima_min_cost <= analysis.minima_max_cost &&
                         analysis.minima_max_cost <= analysis.nash_max_cost;
    report.optimum = analysis.optima.front();

    for (const StrategyProfile& profile : analysis.nash) {
        EpsCost cost = social_cost(game, profile);
        if (report.best_nash.paths.empty() && cost == analysis.nash_min_cost)
            report.best_nash = profile;
        if (report.worst_nash.paths.empty() && cost == analysis.nash_max_cost)
            report.worst_nash = profile;
    }
    for (const StrategyProfile& profile : analysis.minima) {
        EpsCost cost = social_cost(game, profile);
        if (report.best_minimum.paths.empty() && cost == analysis.minima_min_cost)
            report.best_minimum = profile;
        if (report.worst_minimum.paths.empty() && cost == analysis.minima_max_cost)
            report.worst_minimum = profile;
    }
    return report;
}

RatioReport inefficiency_ratios(const Game& game, const EnumLimits& limits) {
    GameAnalysis analysis = analyze_game(game, limits);
    return inefficiency_ratios(game, analysis);
}

Game permute_players(const Game& game, const std::vector<int>& order) {
    Game out = game;
    for (int i = 0; i < game.player_count(); ++i) out.players[i] = game.players[order[i]];
    return out;
}

StrategyProfile permute_players(const StrategyProfile& profile, const std::vector<int>& order) {
    StrategyProfile out;
    out.paths.reserve(profile.paths.size());
    for (int i = 0; i < static_cast<int>(profile.paths.size()); ++i)
        out.paths.push_back(profile.paths[order[i]]);
    return out;
}

}  // namespace sndg
