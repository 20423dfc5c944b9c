/**
 * @file  opalg.h
 * @brief C interface to the operator-order distance library.
 *
 * All functions return an opalg_status; on failure the thread-local message
 * from opalg_last_error() describes what went wrong.  Matrices are opaque
 * handles created and destroyed through this interface.  Strings returned
 * through char** out-parameters are owned by the caller and must be released
 * with opalg_string_free().
 */
#ifndef OPALG_H
#define OPALG_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum opalg_status {
  OPALG_OK = 0,
  OPALG_ERR_INVALID = 1, /* malformed arguments, unknown names, bad config */
  OPALG_ERR_DOMAIN = 2,  /* arguments outside the mathematical domain */
  OPALG_ERR_IO = 3,      /* file system failures */
  OPALG_ERR_NOCONV = 4,  /* an iterative solve failed to converge */
  OPALG_ERR_UNKNOWN = 5  /* anything else */
} opalg_status;

/* Opaque complex square matrix (dimension 2..64). */
typedef struct opalg_matrix opalg_matrix;

/* Human-readable message for the most recent failure on this thread.
 * Never NULL; empty string when no failure has occurred. */
const char* opalg_last_error(void);

/* Library version string, e.g. "1.0.0". */
const char* opalg_version(void);

/* Releases a string returned by this interface. NULL is ignored. */
void opalg_string_free(char* s);

/* ---------------------------------------------------------------------- */
/* Matrices                                                               */
/* ---------------------------------------------------------------------- */

/* Creates a dim x dim matrix from row-major parts; im may be NULL for a
 * real matrix.  The handle must be released with opalg_matrix_free(). */
opalg_status opalg_matrix_create(int dim, const double* re, const double* im,
                                 opalg_matrix** out);

/* JSON round trip: {"dim":n,"re":[[...]],"im":[[...]]} with per-row arrays. */
opalg_status opalg_matrix_from_json(const char* json, opalg_matrix** out);
opalg_status opalg_matrix_to_json(const opalg_matrix* m, char** out_json);

opalg_status opalg_matrix_dim(const opalg_matrix* m, int* out_dim);
opalg_status opalg_matrix_get(const opalg_matrix* m, int i, int j,
                              double* out_re, double* out_im);
void opalg_matrix_free(opalg_matrix* m);

/* ---------------------------------------------------------------------- */
/* Distances and order-constrained optima                                 */
/* ---------------------------------------------------------------------- */

/* name is one of "e", "d", "h", "f":
 *   e: |a - b|        d: |a - ab|        h: |(a - b)+|      f: |a odot b'|
 * d/e/h accept arbitrary matrices; f requires a positive contraction in the
 * first slot. */
opalg_status opalg_dist(const char* name, const opalg_matrix* a,
                        const opalg_matrix* b, double* out);

/* Distance from a to the dominated set {c : 0 <= c <= b}.  a must be
 * Hermitian and b positive semi-definite.  out_witness (optional: pass
 * NULL) receives the best dominated element found. */
opalg_status opalg_solve_p(const opalg_matrix* a, const opalg_matrix* b,
                           double* out_value, opalg_matrix** out_witness);

/* Distance from b to the dominating set {c : a <= c <= 1}; both arguments
 * must be positive contractions. */
opalg_status opalg_solve_n(const opalg_matrix* a, const opalg_matrix* b,
                           double* out_value, opalg_matrix** out_witness);

/* Certified almost-dominated (resp. almost-dominating) approximant of a
 * relative to b; both arguments must be positive contractions.  The result
 * c satisfies c <= b + tiny (resp. c >= a - tiny) with
 * |a - c| <= 2 sqrt(|(a-b)+|) + tiny (resp. |c - b| <= same bound). */
opalg_status opalg_dominated_approximant(const opalg_matrix* a,
                                         const opalg_matrix* b,
                                         opalg_matrix** out_c);
opalg_status opalg_dominating_approximant(const opalg_matrix* a,
                                          const opalg_matrix* b,
                                          opalg_matrix** out_c);

/* ---------------------------------------------------------------------- */
/* Campaigns                                                              */
/* ---------------------------------------------------------------------- */

/* Comma-separated registries, for discovery. */
opalg_status opalg_known_suites(char** out_csv);
opalg_status opalg_known_demos(char** out_csv);

/* Runs verification suites.  config_kv is flat key=value text, one pair per
 * line ('#' starts a comment):
 *   suites=<comma list>   dims=<comma list>   trials=N   samples=N
 *   seed=N   out=DIR   sweep_seeds=N   threads=N   tol.<id>=X
 * out_json receives a JSON array of per-suite reports; out_all_pass is 1
 * when every suite passed. */
opalg_status opalg_verify(const char* config_kv, char** out_json,
                          int* out_all_pass);

/* Runs one named demo.  args_kv uses the same key=value text; recognized
 * keys depend on the demo (eps, grid, theta, modes, funcs, n, plot, out).
 * When out=DIR is present the demo's data files are written there.
 * out_text receives the human-readable report. */
opalg_status opalg_demo(const char* name, const char* args_kv,
                        char** out_text);

/* Seed x dimension sweep over the dimension-parametric suites; same config
 * text as opalg_verify. */
opalg_status opalg_sweep(const char* config_kv, char** out_json,
                         int* out_all_pass);

#ifdef __cplusplus
}
#endif

#endif /* OPALG_H */
