#ifndef LPATH_H
#define LPATH_H

/* C interface to the path-model library. Strings returned through char**
   belong to the caller and are released with lpath_string_free. */

#include <stddef.h>

#if defined(__GNUC__)
#define LPATH_API __attribute__((visibility("default")))
#else
#define LPATH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
  LPATH_OK = 0,
  LPATH_ERR_INTERNAL = 1,
  LPATH_ERR_CONFIG = 2,
  LPATH_ERR_VERIFY = 3,
  LPATH_ERR_BUDGET = 4
};

typedef struct lpath_crystal lpath_crystal;

LPATH_API const char* lpath_version(void);

/* Message of the last failing call on this thread; empty when none. */
LPATH_API const char* lpath_last_error(void);

LPATH_API void lpath_string_free(char* s);

/* Runs a batch command. *result receives
   {"status", "error", "report", "config", "artifacts": {name: contents}}
   even when the command fails; the return value is the status. */
LPATH_API int lpath_run(const char* command, const char* config_json, char** result);

/* Newline-separated command names. */
LPATH_API int lpath_commands(char** out);

/* Crystal generated from a dominant highest path given as a path literal
   ([[time, [coords]], ...] in fundamental-weight coordinates). */
LPATH_API int lpath_crystal_new(const char* cartan, const char* path_literal, lpath_crystal** out);
LPATH_API void lpath_crystal_free(lpath_crystal* c);
LPATH_API int lpath_crystal_size(const lpath_crystal* c, size_t* out);
LPATH_API int lpath_crystal_rank(const lpath_crystal* c, size_t* out);
/* Fundamental-weight coordinates of node k; weight must hold rank entries. */
LPATH_API int lpath_crystal_weight(const lpath_crystal* c, size_t k, long long* weight);
/* f~_i of node k (i is 0-based); *target is (size_t)-1 when the result is null. */
LPATH_API int lpath_crystal_f(const lpath_crystal* c, size_t k, size_t i, size_t* target);
LPATH_API int lpath_crystal_e(const lpath_crystal* c, size_t k, size_t i, size_t* target);
LPATH_API int lpath_crystal_dot(const lpath_crystal* c, char** out);
LPATH_API int lpath_crystal_json(const lpath_crystal* c, char** out);
/* Normalized character as canonical polynomial text. */
LPATH_API int lpath_crystal_character(const lpath_crystal* c, char** out);

/* psi(mu) at tau as an exact "p/q" string; tau entries are rational strings. */
LPATH_API int lpath_psi(const char* cartan, const long long* mu, const char* const* tau, size_t rank, char** out);

#ifdef __cplusplus
}
#endif

#endif
