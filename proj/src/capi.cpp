#include "sndg.h"

#include "sndg/commands.hpp"
#include "sndg/errors.hpp"
#include "sndg/generators.hpp"

#include <json.hpp>

#include <cstring>
#include <new>
#include <string>

struct sndg_game {
    sndg::Instance instance;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_error(char** out_error, const std::string& message) {
    if (out_error) *out_error = dup_string(message);
}

int status_of(const sndg::Error& error) {
    switch (error.kind()) {
        case sndg::ErrorKind::argument: return SNDG_ERR_ARGUMENT;
        case sndg::ErrorKind::parse: return SNDG_ERR_PARSE;
        case sndg::ErrorKind::validation: return SNDG_ERR_VALIDATE;
        case sndg::ErrorKind::explosion:
        case sndg::ErrorKind::budget: return SNDG_ERR_LIMIT;
        case sndg::ErrorKind::no_path: return SNDG_ERR_NO_PATH;
        case sndg::ErrorKind::structure:
        case sndg::ErrorKind::precondition:
        case sndg::ErrorKind::reconstruction: return SNDG_ERR_STRUCTURE;
        case sndg::ErrorKind::degenerate: return SNDG_ERR_DEGENERATE;
        case sndg::ErrorKind::internal: return SNDG_ERR_INTERNAL;
    }
    return SNDG_ERR_INTERNAL;
}

template <typename Fn>
int guarded(char** out_error, Fn&& fn) {
    try {
        return fn();
    } catch (const sndg::Error& e) {
        set_error(out_error, e.what());
        return status_of(e);
    } catch (const std::exception& e) {
        set_error(out_error, std::string("internal error: ") + e.what());
        return SNDG_ERR_INTERNAL;
    } catch (...) {
        set_error(out_error, "internal error");
        return SNDG_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* sndg_version(void) { return "0.1.0"; }

const char* sndg_status_name(int status) {
    switch (status) {
        case SNDG_OK: return "ok";
        case SNDG_ERR_ARGUMENT: return "argument";
        case SNDG_ERR_PARSE: return "parse";
        case SNDG_ERR_VALIDATE: return "validate";
        case SNDG_ERR_LIMIT: return "limit";
        case SNDG_ERR_NO_PATH: return "no-path";
        case SNDG_ERR_STRUCTURE: return "structure";
        case SNDG_ERR_DEGENERATE: return "degenerate";
        case SNDG_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void sndg_string_free(char* s) { delete[] s; }

int sndg_game_parse(const char* text, sndg_game** out_game, char** out_error) {
    if (!text || !out_game) {
        set_error(out_error, "text and out_game must be non-null");
        return SNDG_ERR_ARGUMENT;
    }
    return guarded(out_error, [&] {
        auto* handle = new sndg_game{sndg::parse_instance(text)};
        *out_game = handle;
        return SNDG_OK;
    });
}

int sndg_game_generate(const char* family, const char* options_json, sndg_game** out_game,
                       char** out_error) {
    if (!family || !out_game) {
        set_error(out_error, "family and out_game must be non-null");
        return SNDG_ERR_ARGUMENT;
    }
    return guarded(out_error, [&] {
        std::string text;
        sndg::run_generate(family, options_json ? options_json : "", &text);
        auto* handle = new sndg_game{sndg::parse_instance(text)};
        *out_game = handle;
        return SNDG_OK;
    });
}

char* sndg_game_serialize(const sndg_game* game) {
    if (!game) return nullptr;
    return dup_string(sndg::serialize_instance(game->instance));
}

char* sndg_game_digest(const sndg_game* game) {
    if (!game) return nullptr;
    return dup_string(sndg::instance_digest(game->instance));
}

int sndg_game_validate(const sndg_game* game, char** out_violations, char** out_error) {
    if (!game || !out_violations) {
        set_error(out_error, "game and out_violations must be non-null");
        return SNDG_ERR_ARGUMENT;
    }
    return guarded(out_error, [&] {
        nlohmann::json list = sndg::validate_game(game->instance.game);
        *out_violations = dup_string(list.dump());
        return SNDG_OK;
    });
}

void sndg_game_free(sndg_game* game) { delete game; }

int sndg_cmd_analyze(const sndg_game* game, const char* options_json, char** out_report,
                     char** out_error) {
    if (!game || !out_report) {
        set_error(out_error, "game and out_report must be non-null");
        return SNDG_ERR_ARGUMENT;
    }
    return guarded(out_error, [&] {
        *out_report = dup_string(
            sndg::run_analyze(game->instance, options_json ? options_json : ""));
        return SNDG_OK;
    });
}

int sndg_cmd_bounds(int k, const char* options_json, char** out_report, char** out_error) {
    if (!out_report) {
        set_error(out_error, "out_report must be non-null");
        return SNDG_ERR_ARGUMENT;
    }
    return guarded(out_error, [&] {
        *out_report = dup_string(sndg::run_bounds(k, options_json ? options_json : ""));
        return SNDG_OK;
    });
}

int sndg_cmd_dynamics(const sndg_game* game, const char* options_json, char** out_report,
                      char** out_error) {
    if (!game || !out_report) {
        set_error(out_error, "game and out_report must be non-null");
        return SNDG_ERR_ARGUMENT;
    }
    return guarded(out_error, [&] {
        *out_report = dup_string(
            sndg::run_dynamics(game->instance, options_json ? options_json : ""));
        return SNDG_OK;
    });
}

int sndg_cmd_check(const sndg_game* game, const char* options_json, char** out_report,
                   char** out_error) {
    if (!game || !out_report) {
        set_error(out_error, "game and out_report must be non-null");
        return SNDG_ERR_ARGUMENT;
    }
    return guarded(out_error, [&] {
        *out_report = dup_string(
            sndg::run_check(game->instance, options_json ? options_json : ""));
        return SNDG_OK;
    });
}

int sndg_cmd_generate(const char* family, const char* options_json, char** out_instance_text,
                      char** out_report, char** out_error) {
    if (!family || !out_report) {
        set_error(out_error, "family and out_report must be non-null");
        return SNDG_ERR_ARGUMENT;
    }
    return guarded(out_error, [&] {
        std::string text;
        std::string report =
            sndg::run_generate(family, options_json ? options_json : "", &text);
        if (out_instance_text) *out_instance_text = dup_string(text);
        *out_report = dup_string(report);
        return SNDG_OK;
    });
}

int sndg_cmd_search(const char* spec_json, const char* options_json, char** out_instance_text,
                    char** out_report, char** out_error) {
    if (!spec_json || !out_report) {
        set_error(out_error, "spec_json and out_report must be non-null");
        return SNDG_ERR_ARGUMENT;
    }
    return guarded(out_error, [&] {
        std::string text;
        std::string report =
            sndg::run_search(spec_json, options_json ? options_json : "", &text);
        if (out_instance_text) *out_instance_text = dup_string(text);
        *out_report = dup_string(report);
        return SNDG_OK;
    });
}

}  // extern "C"
