/* Divisor sums over n^2 + N m^2 for class-number-one N: a C interface.
 *
 * Every function returns a qfdiv_status. On failure the message is available
 * from qfdiv_last_error() on the calling thread until the next failing call.
 * Handles are opaque; each *_create or result-producing call transfers
 * ownership to the caller, who releases it with the matching *_destroy.
 * Strings returned through handles stay valid until the handle is destroyed.
 */
#ifndef QFDIV_QFDIV_H
#define QFDIV_QFDIV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define QFDIV_API __attribute__((visibility("default")))
#else
#define QFDIV_API
#endif

typedef enum qfdiv_status {
  QFDIV_OK = 0,
  QFDIV_ERR_DOMAIN = 1,       /* precondition violated: bad N, modulus, range */
  QFDIV_ERR_RANGE = 2,        /* request exceeds a table or exact range */
  QFDIV_ERR_NULL = 3,         /* required pointer argument was NULL */
  QFDIV_ERR_WRONG_KIND = 4,   /* result handle holds another record type */
  QFDIV_ERR_INDEX = 5,        /* row index out of bounds */
  QFDIV_ERR_BUFFER = 6,       /* caller buffer too small; required size reported */
  QFDIV_ERR_INTERNAL = 7
} qfdiv_status;

QFDIV_API const char* qfdiv_last_error(void);
QFDIV_API const char* qfdiv_version(void);

/* Default worker count for calls given threads = 0; 0 restores the
 * QFDIV_THREADS environment value or the hardware concurrency. */
QFDIV_API qfdiv_status qfdiv_set_threads(unsigned threads);
/* Seed of the randomized factor splitter. */
QFDIV_API qfdiv_status qfdiv_set_seed(uint64_t seed);

/* ---- forms ---- */

typedef struct qfdiv_form qfdiv_form;

typedef struct qfdiv_form_info {
  int n;
  int64_t fundamental_discriminant;
  int units;
  int half_integral;          /* norm form (r^2 + N s^2) / 4 */
  int trivial_units;          /* units are +-1 only */
  int supports_approximation; /* N in {1, 2, 67, 163} */
  int supports_theorem;       /* N in {2, 67, 163} */
} qfdiv_form_info;

QFDIV_API qfdiv_status qfdiv_form_create(int n, qfdiv_form** out);
QFDIV_API void qfdiv_form_destroy(qfdiv_form* form);
QFDIV_API qfdiv_status qfdiv_form_info_get(const qfdiv_form* form, qfdiv_form_info* out);
QFDIV_API qfdiv_status qfdiv_chi(const qfdiv_form* form, int64_t n, int* out);

/* ---- result tables ----
 * Row-oriented record lists produced by the scans below. */

typedef struct qfdiv_result qfdiv_result;

typedef enum qfdiv_result_kind {
  QFDIV_RESULT_ROOTS = 1,
  QFDIV_RESULT_APPROX = 2,
  QFDIV_RESULT_SIEVE = 3,
  QFDIV_RESULT_RESIDUALS = 4,
  QFDIV_RESULT_CHECKS = 5
} qfdiv_result_kind;

QFDIV_API void qfdiv_result_destroy(qfdiv_result* result);
QFDIV_API qfdiv_status qfdiv_result_kind_get(const qfdiv_result* result, qfdiv_result_kind* out);
QFDIV_API qfdiv_status qfdiv_result_size(const qfdiv_result* result, size_t* out);

/* ---- sums ---- */

typedef struct qfdiv_sum {
  int n;
  uint64_t x;
  uint64_t r, q, t, s; /* S = 2R - Q - T */
  uint64_t bound;      /* floor(sqrt(1+N) x) */
  uint64_t threshold;  /* floor(x / sqrt(1+N)) */
  int has_wide_split;
  uint64_t wide_threshold; /* floor(N x / sqrt(1+N)), Q without the m, n <= x box */
  uint64_t q_wide, t_wide;
  int64_t s_wide;
} qfdiv_sum;

/* Requires 1 <= x <= 2000. */
QFDIV_API qfdiv_status qfdiv_sum_brute(const qfdiv_form* form, uint64_t x, unsigned threads, uint64_t* out);
QFDIV_API qfdiv_status qfdiv_sum_hyperbola(const qfdiv_form* form, uint64_t x, unsigned threads,
                                           int wide_split, qfdiv_sum* out);

/* ---- roots of v^2 + N = 0 (mod d) ---- */

typedef struct qfdiv_root_row {
  uint64_t root;
  int in_lifting;              /* member of the Hensel/CRT root set */
  int in_representations;      /* member of the set built from norm representations */
  int has_representation;
  int64_t r, s;                /* representation paired with the root, if any */
} qfdiv_root_row;

typedef struct qfdiv_roots_summary {
  uint64_t modulus;
  const char* branch; /* owned by the result handle */
  size_t lifting_count;
  size_t representation_count;
  int sets_equal;
} qfdiv_roots_summary;

/* One row per root in the union of both sets, ascending. */
QFDIV_API qfdiv_status qfdiv_roots(const qfdiv_form* form, uint64_t d, qfdiv_result** out);
QFDIV_API qfdiv_status qfdiv_roots_summary_get(const qfdiv_result* result, qfdiv_roots_summary* out);
QFDIV_API qfdiv_status qfdiv_roots_row(const qfdiv_result* result, size_t i, qfdiv_root_row* out);

/* ---- rational approximations a/q to v/d ---- */

typedef struct qfdiv_approx_row {
  uint64_t d, v;
  int64_t a;
  uint64_t q;
  double q_over_sqrt_d;
  const char* branch; /* static string */
} qfdiv_approx_row;

/* Every root v of every modulus 1 <= d <= dmax, ordered by (d, v). */
QFDIV_API qfdiv_status qfdiv_approx_scan(const qfdiv_form* form, uint64_t dmax, qfdiv_result** out);
QFDIV_API qfdiv_status qfdiv_approx_row_get(const qfdiv_result* result, size_t i, qfdiv_approx_row* out);

/* ---- large sieve sum over a dyadic grid ---- */

typedef enum qfdiv_m_rule { QFDIV_M_EQUAL_D = 0, QFDIV_M_SQRT_D = 1, QFDIV_M_SQUARE_D = 2 } qfdiv_m_rule;

typedef struct qfdiv_sieve_row {
  uint64_t D, H, M;
  double value;
  double bound_ratio; /* value / ((D + M) sqrt D) */
} qfdiv_sieve_row;

/* D = dmin, 2 dmin, ... <= dmax. */
QFDIV_API qfdiv_status qfdiv_sieve_study(const qfdiv_form* form, uint64_t dmin, uint64_t dmax, uint64_t h,
                                         qfdiv_m_rule rule, unsigned threads, qfdiv_result** out);
QFDIV_API qfdiv_status qfdiv_sieve_row_get(const qfdiv_result* result, size_t i, qfdiv_sieve_row* out);

/* ---- rho tables ---- */

typedef struct qfdiv_rho_table qfdiv_rho_table;

typedef struct qfdiv_rho_row {
  uint64_t d;
  uint64_t rho0;  /* roots of v^2 + N = 0 (mod d) */
  uint64_t rho;   /* pairs (u, v) mod d with u^2 + N v^2 = 0 */
  double error;   /* sum_{k <= d} rho(k) - A d^2 */
} qfdiv_rho_row;

QFDIV_API qfdiv_status qfdiv_rho_table_create(const qfdiv_form* form, uint64_t limit, qfdiv_rho_table** out);
QFDIV_API void qfdiv_rho_table_destroy(qfdiv_rho_table* table);
/* 1 <= d <= limit. */
QFDIV_API qfdiv_status qfdiv_rho_row_get(const qfdiv_rho_table* table, uint64_t d, qfdiv_rho_row* out);

/* ---- asymptotic constants S(x) ~ C1 x^2 log x + C2 x^2 ---- */

typedef struct qfdiv_interval {
  double value;
  double halfwidth;
} qfdiv_interval;

typedef struct qfdiv_constants {
  int n;
  uint64_t cutoff;
  double l1, l2;       /* L(1, chi), L(2, chi) */
  double g1;           /* G_N(1) */
  qfdiv_interval g2;   /* G_N(2) by truncated Euler product */
  double a;            /* sum_{d <= y} rho(d) ~ A y^2 */
  double a_printed;    /* A with G_N(2) in place of G_N(1) */
  qfdiv_interval e_integral;
  double error_constant;
  double r_main, q_main, t_main;
  double q_wide_main, t_wide_main;
  double q_constant, t_bracket;
  double c1;
  qfdiv_interval c2;
  qfdiv_interval c2_printed;
  int flagged;         /* N = 1: constants reported, outside the theorem's range */
} qfdiv_constants;

/* N in {1, 2, 67, 163}; cutoff >= 3. */
QFDIV_API qfdiv_status qfdiv_constants_compute(const qfdiv_form* form, uint64_t cutoff, qfdiv_constants* out);

/* ---- residuals S(x) - C1 x^2 log x - C2 x^2 on a grid ---- */

typedef struct qfdiv_residual_row {
  uint64_t x;
  uint64_t s;
  double main_term;
  double residual;
  double residual_over_x32;
  double residual_over_x2;
  double r_over_x2_log_x;
  double q_over_x2, t_over_x2;
  double q_wide_over_x2, t_wide_over_x2;
} qfdiv_residual_row;

/* Fills grid[0..*count) with start, start*ratio, ... <= stop (rounded,
 * strictly increasing). With grid NULL only *count is set. */
QFDIV_API qfdiv_status qfdiv_geometric_grid(uint64_t start, uint64_t stop, double ratio, uint64_t* grid,
                                            size_t capacity, size_t* count);
/* Constants computed at the given cutoff, N in {1, 2, 67, 163}. */
QFDIV_API qfdiv_status qfdiv_residual_study(const qfdiv_form* form, const uint64_t* grid, size_t count,
                                            uint64_t cutoff, unsigned threads, qfdiv_result** out);
/* Least-squares slope of log|residual| on log x; *has_slope = 0 below two points. */
QFDIV_API qfdiv_status qfdiv_residual_slope(const qfdiv_result* result, int* has_slope, double* slope);
QFDIV_API qfdiv_status qfdiv_residual_row_get(const qfdiv_result* result, size_t i, qfdiv_residual_row* out);

/* ---- verification suites ---- */

typedef struct qfdiv_check_row {
  const char* id;
  const char* name;
  int passed;
  const char* detail;
  double seconds;
} qfdiv_check_row;

/* Built-in thresholds as a JSON object. Writes at most capacity bytes
 * including the terminator; *needed receives the full size. */
QFDIV_API qfdiv_status qfdiv_thresholds_default(char* buffer, size_t capacity, size_t* needed);
/* suite: bijection, approx, sieve, rho, envelope, constants, sums, theorem,
 * identities, lattice or all. forms may be NULL (count 0) for the defaults;
 * dmax 0 keeps the threshold value; thresholds_json NULL keeps the built-in
 * values, otherwise keys present override them. */
QFDIV_API qfdiv_status qfdiv_verify_suite(const char* suite, const int* forms, size_t form_count, uint64_t dmax,
                                          const char* thresholds_json, unsigned threads, uint64_t seed,
                                          qfdiv_result** out);
/* Acceptance criterion 1..10 with its default forms. */
QFDIV_API qfdiv_status qfdiv_verify_criterion(int criterion, const char* thresholds_json, unsigned threads,
                                              uint64_t seed, qfdiv_result** out);
QFDIV_API qfdiv_status qfdiv_check_row_get(const qfdiv_result* result, size_t i, qfdiv_check_row* out);

#ifdef __cplusplus
}
#endif

#endif /* QFDIV_QFDIV_H */
