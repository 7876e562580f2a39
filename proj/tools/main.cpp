// Command-line front end for the Shapley network design game analyzer.
// Talks to the shared library exclusively through the C API in sndg.h.

#include <sndg.h>

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitLimit = 3;
constexpr int kExitInternal = 4;

int exit_code_for(int status) {
    switch (status) {
        case SNDG_OK: return kExitOk;
        case SNDG_ERR_LIMIT: return kExitLimit;
        case SNDG_ERR_INTERNAL: return kExitInternal;
        default: return kExitInput;
    }
}

std::string take(char* s) {
    std::string out = s ? s : "";
    sndg_string_free(s);
    return out;
}

int fail(int status, char* error) {
    std::cerr << "sndg: error (" << sndg_status_name(status) << "): " << take(error) << "\n";
    return exit_code_for(status);
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    out = buffer.str();
    return true;
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return out.good();
}

struct GameHandle {
    sndg_game* game = nullptr;
    ~GameHandle() { sndg_game_free(game); }
};

// Loads and validates the instance; returns an exit code or -1 on success.
int load_instance(const std::string& path, GameHandle& handle) {
    std::string text;
    if (!read_file(path, text)) {
        std::cerr << "sndg: error: cannot read '" << path << "'\n";
        return kExitInput;
    }
    char* error = nullptr;
    int status = sndg_game_parse(text.c_str(), &handle.game, &error);
    if (status != SNDG_OK) return fail(status, error);

    char* violations_json = nullptr;
    status = sndg_game_validate(handle.game, &violations_json, &error);
    if (status != SNDG_OK) return fail(status, error);
    std::string violations = take(violations_json);
    if (violations != "[]") {
        std::cerr << "sndg: error (validate): instance violates invariants: " << violations
                  << "\n";
        return kExitInput;
    }
    return -1;
}

class Stopwatch {
public:
    explicit Stopwatch(std::string label) : label_(std::move(label)) {}
    ~Stopwatch() {
        auto elapsed = std::chrono::steady_clock::now() - start_;
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
        std::cerr << "sndg: " << label_ << " completed in " << ms << " ms\n";
    }

private:
    std::string label_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analyzer for Shapley network design games"};
    app.require_subcommand(1);

    std::string instance_path, format = "json", out_path, spec_path;
    std::string start = "canonical", schedule = "round-robin", lemma = "theorem", family;
    int k = 3;
    int max_paths = 10000;
    std::uint64_t profile_budget = 100000000, seed = 1, max_steps = 100000;
    std::uint64_t budget = 0, search_budget = 1000000, search_seed = 0;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Report format: json or text")
            ->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* analyze = app.add_subcommand("analyze", "Exhaustive equilibrium analysis");
    analyze->add_option("--instance", instance_path, "Instance file")->required();
    analyze->add_option("--max-paths", max_paths, "Per-player simple path cap");
    analyze->add_option("--budget", profile_budget, "Profile enumeration budget");
    add_format(analyze);

    CLI::App* bounds = app.add_subcommand("bounds", "Closed-form bound table for k players");
    bounds->add_option("--k", k, "Number of players (>= 2)")->required();
    add_format(bounds);

    CLI::App* dynamics = app.add_subcommand("dynamics", "Best-response dynamics");
    dynamics->add_option("--instance", instance_path, "Instance file")->required();
    dynamics->add_option("--start", start, "Start profile: canonical or random")
        ->check(CLI::IsMember({"canonical", "random"}));
    dynamics->add_option("--seed", seed, "Seed for random start/schedule");
    dynamics->add_option("--schedule", schedule, "Player schedule: round-robin or random")
        ->check(CLI::IsMember({"round-robin", "random"}));
    dynamics->add_option("--max-steps", max_steps, "Step budget");
    dynamics->add_option("--max-paths", max_paths, "Per-player simple path cap");
    dynamics->add_option("--budget", profile_budget, "Profile enumeration budget");
    add_format(dynamics);

    CLI::App* check = app.add_subcommand("check", "Inequality checks on an instance");
    check->add_option("--instance", instance_path, "Instance file")->required();
    check->add_option("--lemma", lemma, "Which check: 1, 2, hk1 or theorem")
        ->check(CLI::IsMember({"1", "2", "hk1", "theorem"}));
    check->add_option("--max-paths", max_paths, "Per-player simple path cap");
    check->add_option("--budget", profile_budget, "Profile enumeration budget");
    add_format(check);

    CLI::App* generate = app.add_subcommand("generate", "Emit a bundled instance family");
    generate->add_option("--family", family, "directed-hk, fig-a or fig-b")
        ->required()
        ->check(CLI::IsMember({"directed-hk", "fig-a", "fig-b"}));
    generate->add_option("--k", k, "Players for directed-hk");
    generate->add_option("--seed", seed, "Search seed (fig-b)");
    generate->add_option("--search-budget", search_budget, "Search budget (fig-b)");
    generate->add_option("--out", out_path, "Write the instance text here");
    add_format(generate);

    CLI::App* search = app.add_subcommand("search", "Seeded cost search over a skeleton");
    search->add_option("--spec", spec_path, "Search spec JSON file")->required();
    search->add_option("--seed", search_seed, "Seed override (0 keeps the spec's)");
    search->add_option("--budget", budget, "Budget override (0 keeps the spec's)");
    search->add_option("--out", out_path, "Write the best instance text here");
    add_format(search);

    CLI11_PARSE(app, argc, argv);

    char* report = nullptr;
    char* error = nullptr;
    int status = SNDG_OK;

    if (analyze->parsed()) {
        Stopwatch timer("analyze");
        GameHandle handle;
        if (int rc = load_instance(instance_path, handle); rc >= 0) return rc;
        std::ostringstream options;
        options << "{\"format\":\"" << format << "\",\"max_paths\":" << max_paths
                << ",\"profile_budget\":" << profile_budget << "}";
        status = sndg_cmd_analyze(handle.game, options.str().c_str(), &report, &error);
    } else if (bounds->parsed()) {
        Stopwatch timer("bounds");
        std::ostringstream options;
        options << "{\"format\":\"" << format << "\"}";
        status = sndg_cmd_bounds(k, options.str().c_str(), &report, &error);
    } else if (dynamics->parsed()) {
        Stopwatch timer("dynamics");
        GameHandle handle;
        if (int rc = load_instance(instance_path, handle); rc >= 0) return rc;
        std::ostringstream options;
        options << "{\"format\":\"" << format << "\",\"start\":\"" << start
                << "\",\"schedule\":\"" << schedule << "\",\"seed\":" << seed
                << ",\"max_steps\":" << max_steps << ",\"max_paths\":" << max_paths
                << ",\"profile_budget\":" << profile_budget << "}";
        status = sndg_cmd_dynamics(handle.game, options.str().c_str(), &report, &error);
    } else if (check->parsed()) {
        Stopwatch timer("check");
        GameHandle handle;
        if (int rc = load_instance(instance_path, handle); rc >= 0) return rc;
        std::ostringstream options;
        options << "{\"format\":\"" << format << "\",\"lemma\":\"" << lemma
                << "\",\"max_paths\":" << max_paths << ",\"profile_budget\":" << profile_budget
                << "}";
        status = sndg_cmd_check(handle.game, options.str().c_str(), &report, &error);
    } else if (generate->parsed()) {
        Stopwatch timer("generate");
        std::ostringstream options;
        options << "{\"format\":\"" << format << "\",\"k\":" << k << ",\"seed\":" << seed
                << ",\"budget\":" << search_budget << "}";
        char* instance_text = nullptr;
        status = sndg_cmd_generate(family.c_str(), options.str().c_str(), &instance_text,
                                   &report, &error);
        if (status == SNDG_OK && !out_path.empty()) {
            if (!write_file(out_path, take(instance_text))) {
                std::cerr << "sndg: error: cannot write '" << out_path << "'\n";
                sndg_string_free(report);
                return kExitInput;
            }
        } else {
            sndg_string_free(instance_text);
        }
    } else if (search->parsed()) {
        Stopwatch timer("search");
        std::string spec_text;
        if (!read_file(spec_path, spec_text)) {
            std::cerr << "sndg: error: cannot read '" << spec_path << "'\n";
            return kExitInput;
        }
        std::ostringstream options;
        options << "{\"format\":\"" << format << "\",\"seed\":" << search_seed
                << ",\"budget\":" << budget << "}";
        char* instance_text = nullptr;
        status = sndg_cmd_search(spec_text.c_str(), options.str().c_str(), &instance_text,
                                 &report, &error);
        if (status == SNDG_OK && !out_path.empty()) {
            if (!write_file(out_path, take(instance_text))) {
                std::cerr << "sndg: error: cannot write '" << out_path << "'\n";
                sndg_string_free(report);
                return kExitInput;
            }
        } else {
            sndg_string_free(instance_text);
        }
    }

    if (status != SNDG_OK) return fail(status, error);
    std::cout << take(report);
    return kExitOk;
}
