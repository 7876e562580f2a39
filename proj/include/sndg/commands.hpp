#ifndef SNDG_COMMANDS_HPP
#define SNDG_COMMANDS_HPP

#include "sndg/instance_io.hpp"

#include <string>

namespace sndg {

// Command-level entry points shared by the C API and (through it) the CLI.
// Each takes the command's options as a JSON object text (unknown keys
// rejected, missing keys defaulted), runs the computation, and returns the
// complete rendered report: a JSON document with sorted keys, or the flat
// text rendering when options.format == "text". Reports are byte-identical
// for identical inputs, options and seeds; wall-clock time is never part of
// a report.
//
// Common options: {"format": "json"|"text"}.
// analyze:  {"max_paths": int, "profile_budget": int}
// dynamics: {"max_paths", "profile_budget", "start": "canonical"|"random",
//            "schedule": "round-robin"|"random", "seed": int, "max_steps": int}
// check:    {"max_paths", "profile_budget", "lemma": "1"|"2"|"hk1"|"theorem"}
// generate: {"k": int (directed-hk), "budget": int, "seed": int (fig-b)}
// search:   {} (the spec JSON carries everything)
std::string run_analyze(const Instance& instance, const std::string& options_json);
std::string run_bounds(int k, const std::string& options_json);
std::string run_dynamics(const Instance& instance, const std::string& options_json);
std::string run_check(const Instance& instance, const std::string& options_json);
std::string run_generate(const std::string& family, const std::string& options_json,
                         std::string* instance_text_out);
std::string run_search(const std::string& spec_json, const std::string& options_json,
                       std::string* instance_text_out);

}  // namespace sndg

#endif
