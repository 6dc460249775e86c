/*
 * C interface to the fracpow solver library.
 *
 * Objects are opaque handles created by fracpow_*_create / run / load calls
 * and released with the matching *_destroy function (which accepts NULL).
 * Every fallible call returns a fracpow_status; on failure a message for the
 * calling thread is available from fracpow_last_error() until the next failing
 * call on that thread.
 *
 * Calls that produce text take (buf, cap, len): *len receives the text length
 * without the terminating NUL. Passing buf == NULL queries the length; a
 * non-NULL buffer with cap <= *len yields FRACPOW_ERR_BUFFER.
 */
#ifndef FRACPOW_H
#define FRACPOW_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(FRACPOW_BUILDING)
#    define FRACPOW_API __declspec(dllexport)
#  else
#    define FRACPOW_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) && __GNUC__ >= 4
#  define FRACPOW_API __attribute__((visibility("default")))
#else
#  define FRACPOW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fracpow_status {
  FRACPOW_OK = 0,
  FRACPOW_ERR_DOMAIN = 1,    /* argument outside its valid range */
  FRACPOW_ERR_DIMENSION = 2, /* mismatched sizes or grids */
  FRACPOW_ERR_CAPACITY = 3,  /* problem too large */
  FRACPOW_ERR_NUMERIC = 4,   /* eigensolver failure, overflow */
  FRACPOW_ERR_IO = 5,        /* file or parse failure */
  FRACPOW_ERR_NULL = 6,      /* required pointer was NULL */
  FRACPOW_ERR_BUFFER = 7,    /* output buffer too small */
  FRACPOW_ERR_INTERNAL = 8
} fracpow_status;

typedef enum fracpow_rhs {
  FRACPOW_RHS_F1 = 0,  /* x1^2 (1-x1) x2^2 (1-x2) */
  FRACPOW_RHS_F2 = 1,  /* 1 + sgn(x1 x2 - 1/4) */
  FRACPOW_RHS_ZERO = 2
} fracpow_rhs;

typedef enum fracpow_field {
  FRACPOW_FIELD_APPROX = 0,
  FRACPOW_FIELD_EXACT = 1,
  FRACPOW_FIELD_NORMALIZED = 2, /* approx / max(approx) */
  FRACPOW_FIELD_RHS = 3
} fracpow_field;

FRACPOW_API const char *fracpow_version(void);
FRACPOW_API const char *fracpow_last_error(void);
FRACPOW_API const char *fracpow_status_name(fracpow_status status);
FRACPOW_API const char *fracpow_default_reference_dir(void);

/* ---- Gauss-Laguerre quadrature for the weight xi^(beta-1) e^(-xi) ---- */

typedef struct fracpow_rule fracpow_rule;

FRACPOW_API fracpow_status fracpow_rule_create(int m, double beta, fracpow_rule **out);
FRACPOW_API void fracpow_rule_destroy(fracpow_rule *rule);
FRACPOW_API fracpow_status fracpow_rule_size(const fracpow_rule *rule, int *m);
/* Copies nodes (ascending) and weights; either array may be NULL. */
FRACPOW_API fracpow_status fracpow_rule_get(const fracpow_rule *rule, double *nodes,
                                            double *weights, size_t capacity);
FRACPOW_API fracpow_status fracpow_rule_s_quad(const fracpow_rule *rule, double kappa,
                                               double *out);
FRACPOW_API fracpow_status fracpow_s_exact(double beta, double kappa, double *out);

typedef struct fracpow_kappa_sampling {
  double kappa_min; /* 0 adds kappa = 0 plus a log sweep from 1e-3 */
  double kappa_max;
  int samples;
} fracpow_kappa_sampling;

FRACPOW_API void fracpow_kappa_sampling_default(fracpow_kappa_sampling *s);
/* sampling may be NULL for the default sweep */
FRACPOW_API fracpow_status fracpow_quad_error(int m, double alpha, int p,
                                              const fracpow_kappa_sampling *sampling,
                                              double *epsilon);

/* ---- Problems and solves ---- */

/* Grid plus the spectral basis of -div(a0 grad) + c0 with Dirichlet data. */
typedef struct fracpow_problem fracpow_problem;

typedef struct fracpow_problem_desc {
  int n1, n2;     /* intervals per axis, >= 2 */
  double l1, l2;  /* side lengths */
  double a0, c0;  /* a0 > 0, c0 >= 0 */
} fracpow_problem_desc;

FRACPOW_API void fracpow_problem_desc_default(fracpow_problem_desc *d, int n);
FRACPOW_API fracpow_status fracpow_problem_create(const fracpow_problem_desc *desc,
                                                  fracpow_problem **out);
FRACPOW_API void fracpow_problem_destroy(fracpow_problem *problem);
/* Number of interior nodes K = (n1-1)(n2-1). */
FRACPOW_API fracpow_status fracpow_problem_size(const fracpow_problem *problem, size_t *k);
FRACPOW_API fracpow_status fracpow_problem_mu_min(const fracpow_problem *problem, double *mu);
/* Writes the right-hand side as CSV (i1,i2,x1,x2,value). */
FRACPOW_API fracpow_status fracpow_problem_write_rhs_csv(const fracpow_problem *problem,
                                                         fracpow_rhs rhs, const char *path);

typedef struct fracpow_solve_params {
  double alpha;  /* in (0, 1) */
  int p;         /* >= 0 */
  int m;         /* >= 1 */
  double delta;  /* <= 0 selects the smallest eigenvalue */
} fracpow_solve_params;

typedef struct fracpow_report fracpow_report;

typedef struct fracpow_report_summary {
  double alpha;
  int p;
  int m;
  int n1, n2;
  double delta;
  double eps2;    /* squared relative L2 error */
  double rel_l2;  /* relative L2 error */
  double epsinf;  /* relative max-norm error */
  double max_u;
  double runtime_ms;
} fracpow_report_summary;

FRACPOW_API fracpow_status fracpow_solve(const fracpow_problem *problem, fracpow_rhs rhs,
                                         const fracpow_solve_params *params,
                                         fracpow_report **out);
/* Right-hand side given as K values in row-major (i1, i2) order, i2 fastest. */
FRACPOW_API fracpow_status fracpow_solve_values(const fracpow_problem *problem,
                                                const double *b, size_t k,
                                                const fracpow_solve_params *params,
                                                fracpow_report **out);
FRACPOW_API void fracpow_report_destroy(fracpow_report *report);
FRACPOW_API fracpow_status fracpow_report_summary_get(const fracpow_report *report,
                                                      fracpow_report_summary *out);
FRACPOW_API fracpow_status fracpow_report_field(const fracpow_report *report,
                                                fracpow_field which, double *out, size_t k);
FRACPOW_API fracpow_status fracpow_report_json(const fracpow_report *report, char *buf,
                                               size_t cap, size_t *len);
FRACPOW_API fracpow_status fracpow_report_write_field_csv(const fracpow_report *report,
                                                          fracpow_field which,
                                                          const char *path);

/* ---- Error tables ---- */

typedef struct fracpow_table fracpow_table;

/* Array members left NULL (or with zero length) take the table defaults. */
typedef struct fracpow_sweep {
  int table; /* 1..5 */
  const double *alphas;
  size_t n_alphas;
  const int *ms;
  size_t n_ms;
  const int *ps;
  size_t n_ps;
  const int *ns;
  size_t n_ns;
  int rhs;          /* fracpow_rhs value, or -1 for the table default */
  unsigned threads; /* 0: all cores */
  fracpow_kappa_sampling kappa; /* table 1 only; samples == 0 takes the default */
} fracpow_sweep;

FRACPOW_API void fracpow_sweep_default(int table, fracpow_sweep *sweep);
FRACPOW_API fracpow_status fracpow_table_run(const fracpow_sweep *sweep, fracpow_table **out);
/* dir may be NULL for the shipped reference data. */
FRACPOW_API fracpow_status fracpow_table_load_reference(const char *dir, int table,
                                                        fracpow_table **out);
FRACPOW_API fracpow_status fracpow_table_parse_csv(const char *text, int table,
                                                   fracpow_table **out);
FRACPOW_API void fracpow_table_destroy(fracpow_table *table);
FRACPOW_API fracpow_status fracpow_table_csv(const fracpow_table *table, char *buf, size_t cap,
                                             size_t *len);
FRACPOW_API fracpow_status fracpow_table_write_csv(const fracpow_table *table, const char *path);
/* Cell-wise relative comparison. *pass is 1 when every cell is within tol.
 * The JSON diff report follows the text-output convention; json may be NULL
 * with len NULL to skip it. */
FRACPOW_API fracpow_status fracpow_table_diff(const fracpow_table *produced,
                                              const fracpow_table *reference, double tol,
                                              int *pass, double *max_deviation, char *json,
                                              size_t cap, size_t *len);

#ifdef __cplusplus
}
#endif

#endif /* FRACPOW_H */
