/* Exercises the C interface from C. */
#include <qfdiv/qfdiv.h>

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);   \
      ++failures;                                                  \
    }                                                              \
  } while (0)

int main(void) {
  qfdiv_form* two = NULL;
  qfdiv_form* bad = NULL;
  EXPECT(qfdiv_form_create(5, &bad) == QFDIV_ERR_DOMAIN);
  EXPECT(bad == NULL);
  EXPECT(strlen(qfdiv_last_error()) > 0);
  EXPECT(qfdiv_form_create(2, NULL) == QFDIV_ERR_NULL);
  EXPECT(qfdiv_form_create(2, &two) == QFDIV_OK);
  EXPECT(qfdiv_set_seed(7) == QFDIV_OK);
  EXPECT(qfdiv_set_threads(2) == QFDIV_OK);

  qfdiv_form_info info;
  EXPECT(qfdiv_form_info_get(two, &info) == QFDIV_OK);
  EXPECT(info.n == 2 && info.fundamental_discriminant == -8 && info.supports_theorem == 1);
  int chi = 0;
  EXPECT(qfdiv_chi(two, 3, &chi) == QFDIV_OK && chi == 1);
  EXPECT(qfdiv_chi(two, 5, &chi) == QFDIV_OK && chi == -1);

  qfdiv_sum sum;
  EXPECT(qfdiv_sum_hyperbola(two, 2, 1, 1, &sum) == QFDIV_OK);
  EXPECT(sum.r == 10 && sum.q == 1 && sum.t == 4 && sum.s == 15);
  uint64_t brute = 0;
  EXPECT(qfdiv_sum_brute(two, 2, 1, &brute) == QFDIV_OK && brute == 15);
  EXPECT(qfdiv_sum_brute(two, 5000, 1, &brute) == QFDIV_ERR_DOMAIN);
  EXPECT(qfdiv_sum_hyperbola(two, 0, 1, 0, &sum) == QFDIV_ERR_DOMAIN);

  qfdiv_form* seven = NULL;
  EXPECT(qfdiv_form_create(7, &seven) == QFDIV_OK);
  qfdiv_result* roots = NULL;
  EXPECT(qfdiv_roots(seven, 16, &roots) == QFDIV_OK);
  qfdiv_roots_summary rs;
  EXPECT(qfdiv_roots_summary_get(roots, &rs) == QFDIV_OK);
  EXPECT(rs.sets_equal == 1 && rs.lifting_count == 4 && strcmp(rs.branch, "seven-even") == 0);
  size_t n = 0;
  EXPECT(qfdiv_result_size(roots, &n) == QFDIV_OK && n == 4);
  qfdiv_root_row row;
  EXPECT(qfdiv_roots_row(roots, 0, &row) == QFDIV_OK && row.root == 3);
  EXPECT((row.r * row.r + 7 * row.s * row.s) % 16 == 0 || row.has_representation);
  EXPECT(qfdiv_roots_row(roots, 4, &row) == QFDIV_ERR_INDEX);
  qfdiv_approx_row arow;
  EXPECT(qfdiv_approx_row_get(roots, 0, &arow) == QFDIV_ERR_WRONG_KIND);
  qfdiv_result_destroy(roots);

  qfdiv_result* ap = NULL;
  EXPECT(qfdiv_approx_scan(seven, 10, &ap) == QFDIV_ERR_DOMAIN);
  EXPECT(qfdiv_approx_scan(two, 200, &ap) == QFDIV_OK);
  EXPECT(qfdiv_result_size(ap, &n) == QFDIV_OK && n > 0);
  for (size_t i = 0; i < n; ++i) {
    EXPECT(qfdiv_approx_row_get(ap, i, &arow) == QFDIV_OK);
    /* |v/d - a/q| <= 1/q^2 by cross-multiplication. */
    const int64_t lhs = llabs((int64_t)arow.v * (int64_t)arow.q - arow.a * (int64_t)arow.d);
    EXPECT((uint64_t)lhs * arow.q <= arow.d);
  }
  qfdiv_result_destroy(ap);

  qfdiv_result* sv = NULL;
  EXPECT(qfdiv_sieve_study(two, 64, 256, 16, QFDIV_M_EQUAL_D, 1, &sv) == QFDIV_OK);
  EXPECT(qfdiv_result_size(sv, &n) == QFDIV_OK && n == 3);
  qfdiv_sieve_row srow;
  EXPECT(qfdiv_sieve_row_get(sv, 2, &srow) == QFDIV_OK && srow.D == 256 && srow.M == 256);
  qfdiv_result_destroy(sv);

  qfdiv_rho_table* table = NULL;
  EXPECT(qfdiv_rho_table_create(two, 100, &table) == QFDIV_OK);
  qfdiv_rho_row rr;
  EXPECT(qfdiv_rho_row_get(table, 3, &rr) == QFDIV_OK && rr.rho0 == 2 && rr.rho == 5);
  EXPECT(qfdiv_rho_row_get(table, 101, &rr) == QFDIV_ERR_RANGE);
  qfdiv_rho_table_destroy(table);

  qfdiv_constants k;
  EXPECT(qfdiv_constants_compute(seven, 1000, &k) == QFDIV_ERR_DOMAIN);
  EXPECT(qfdiv_constants_compute(two, 20000, &k) == QFDIV_OK);
  EXPECT(fabs(k.l1 - 3.14159265358979323846 / (2.0 * sqrt(2.0))) < 1e-10);
  EXPECT(fabs(k.c1 - 4.0 * k.a) < 1e-15);
  EXPECT(k.c2.halfwidth > 0.0);

  size_t count = 0;
  EXPECT(qfdiv_geometric_grid(16, 64, 2.0, NULL, 0, &count) == QFDIV_OK && count == 3);
  uint64_t grid[3];
  EXPECT(qfdiv_geometric_grid(16, 64, 2.0, grid, 2, &count) == QFDIV_ERR_BUFFER);
  EXPECT(qfdiv_geometric_grid(16, 64, 2.0, grid, 3, &count) == QFDIV_OK && grid[2] == 64);
  qfdiv_result* res = NULL;
  EXPECT(qfdiv_residual_study(two, grid, 3, 20000, 1, &res) == QFDIV_OK);
  int has = 0;
  double slope = 0.0;
  EXPECT(qfdiv_residual_slope(res, &has, &slope) == QFDIV_OK && has == 1);
  qfdiv_residual_row rrow;
  EXPECT(qfdiv_residual_row_get(res, 0, &rrow) == QFDIV_OK && rrow.x == 16);
  EXPECT(fabs(rrow.residual - ((double)rrow.s - rrow.main_term)) < 1e-6);
  qfdiv_result_destroy(res);

  size_t needed = 0;
  EXPECT(qfdiv_thresholds_default(NULL, 0, &needed) == QFDIV_OK && needed > 10);
  char small[4];
  EXPECT(qfdiv_thresholds_default(small, sizeof small, &needed) == QFDIV_ERR_BUFFER);

  qfdiv_result* checks = NULL;
  const int forms[] = {7};
  EXPECT(qfdiv_verify_suite("bijection", forms, 1, 512, NULL, 1, 1, &checks) == QFDIV_OK);
  qfdiv_check_row c;
  EXPECT(qfdiv_check_row_get(checks, 0, &c) == QFDIV_OK && c.passed == 1 && strcmp(c.id, "3") == 0);
  qfdiv_result_destroy(checks);
  EXPECT(qfdiv_verify_suite("nope", NULL, 0, 0, NULL, 1, 1, &checks) == QFDIV_ERR_DOMAIN);
  EXPECT(qfdiv_verify_suite("sums", NULL, 0, 0, "{\"engineMaxX\": 20, \"engineSpotX\": []}", 1, 1, &checks) == QFDIV_OK);
  EXPECT(qfdiv_result_size(checks, &n) == QFDIV_OK && n == 2);
  EXPECT(qfdiv_check_row_get(checks, 0, &c) == QFDIV_OK && c.passed == 1);
  qfdiv_result_destroy(checks);
  EXPECT(qfdiv_verify_criterion(2, "{\"bogus\": 1}", 1, 1, &checks) == QFDIV_ERR_DOMAIN);
  EXPECT(qfdiv_verify_criterion(2, NULL, 1, 1, &checks) == QFDIV_OK);
  EXPECT(qfdiv_check_row_get(checks, 0, &c) == QFDIV_OK && c.passed == 1);
  qfdiv_result_destroy(checks);

  qfdiv_form_destroy(seven);
  qfdiv_form_destroy(two);
  if (failures) fprintf(stderr, "%d failures\n", failures);
  return failures ? 1 : 0;
}
