/* C API for the Shapley network design game analyzer.
 *
 * All analysis runs behind opaque handles and returns heap-allocated strings
 * owned by the caller; release them with sndg_string_free. Every entry point
 * returns a status code; on failure *out_error (when provided) carries a
 * message. Reports are deterministic: identical inputs, options and seeds
 * produce byte-identical report strings.
 */
#ifndef SNDG_H
#define SNDG_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sndg_game sndg_game;

#define SNDG_OK 0
#define SNDG_ERR_ARGUMENT 1   /* bad parameter or malformed options */
#define SNDG_ERR_PARSE 2      /* malformed instance or spec text */
#define SNDG_ERR_VALIDATE 3   /* instance violates game invariants */
#define SNDG_ERR_LIMIT 4      /* path/profile cap or budget exhausted */
#define SNDG_ERR_NO_PATH 5    /* a player's terminals are disconnected */
#define SNDG_ERR_STRUCTURE 6  /* structural or semantic precondition failed */
#define SNDG_ERR_DEGENERATE 7 /* ratio undefined for this instance */
#define SNDG_ERR_INTERNAL 8   /* internal invariant violated */

const char* sndg_version(void);
const char* sndg_status_name(int status);
void sndg_string_free(char* s);

/* Instance handling. The line-oriented instance format:
 *   # comment | name: <s> | note: <s> | directed: true|false |
 *   vertices: <n> | edge <u> <v> <const> [<eps>] | player <s> <t>
 */
int sndg_game_parse(const char* text, sndg_game** out_game, char** out_error);
int sndg_game_generate(const char* family, const char* options_json, sndg_game** out_game,
                       char** out_error);
char* sndg_game_serialize(const sndg_game* game);
char* sndg_game_digest(const sndg_game* game);
/* JSON array of violation strings; empty array iff the game is valid. */
int sndg_game_validate(const sndg_game* game, char** out_violations, char** out_error);
void sndg_game_free(sndg_game* game);

/* Command-level runners; options_json is a JSON object (may be NULL or "").
 * Each returns the full report string (JSON or flat text per the "format"
 * option).
 */
int sndg_cmd_analyze(const sndg_game* game, const char* options_json, char** out_report,
                     char** out_error);
int sndg_cmd_bounds(int k, const char* options_json, char** out_report, char** out_error);
int sndg_cmd_dynamics(const sndg_game* game, const char* options_json, char** out_report,
                      char** out_error);
int sndg_cmd_check(const sndg_game* game, const char* options_json, char** out_report,
                   char** out_error);
int sndg_cmd_generate(const char* family, const char* options_json, char** out_instance_text,
                      char** out_report, char** out_error);
int sndg_cmd_search(const char* spec_json, const char* options_json, char** out_instance_text,
                    char** out_report, char** out_error);

#ifdef __cplusplus
}
#endif

#endif /* SNDG_H */
