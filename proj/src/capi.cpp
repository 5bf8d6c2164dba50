#include "qfdiv/qfdiv.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "approx.hpp"
#include "arith.hpp"
#include "constants.hpp"
#include "error.hpp"
#include "expsums.hpp"
#include "parallel.hpp"
#include "rho.hpp"
#include "roots.hpp"
#include "sums.hpp"
#include "verify.hpp"

using namespace qfdiv;

struct qfdiv_form {
  FormParameter form;
};

struct qfdiv_rho_table {
  rho::RhoTable table;
  double a;
};

namespace {

struct RootsData {
  std::string branch;
  qfdiv_roots_summary summary{};
  std::vector<qfdiv_root_row> rows;
};

struct ResidualData {
  std::vector<qfdiv_residual_row> rows;
  std::optional<double> slope;
};

struct ChecksData {
  std::vector<verify::CheckResult> checks;
};

}  // namespace

struct qfdiv_result {
  qfdiv_result_kind kind;
  std::variant<RootsData, std::vector<qfdiv_approx_row>, std::vector<qfdiv_sieve_row>, ResidualData, ChecksData>
      data;
};

namespace {

thread_local std::string lastError;

qfdiv_status fail(qfdiv_status status, std::string message) {
  lastError = std::move(message);
  return status;
}

// Runs fn, mapping exceptions to status codes and the thread's error message.
template <typename Fn>
qfdiv_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    return fail(QFDIV_ERR_DOMAIN, e.what());
  } catch (const RangeError& e) {
    return fail(QFDIV_ERR_RANGE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QFDIV_ERR_RANGE, "out of memory");
  } catch (const std::exception& e) {
    return fail(QFDIV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QFDIV_ERR_INTERNAL, "unknown error");
  }
}

#define QFDIV_REQUIRE(ptr) \
  if ((ptr) == nullptr) return fail(QFDIV_ERR_NULL, #ptr " is NULL")

template <typename Row>
qfdiv_status rowOf(const qfdiv_result* result, qfdiv_result_kind kind, const std::vector<Row>& rows, size_t i,
                   Row* out) {
  if (result->kind != kind) return fail(QFDIV_ERR_WRONG_KIND, "result holds another record type");
  if (i >= rows.size()) return fail(QFDIV_ERR_INDEX, "row " + std::to_string(i) + " out of range");
  *out = rows[i];
  return QFDIV_OK;
}

verify::Thresholds thresholdsOf(const char* json) {
  return json == nullptr ? verify::Thresholds{} : verify::thresholdsFromJson(json);
}

}  // namespace

extern "C" {

const char* qfdiv_last_error(void) { return lastError.c_str(); }

const char* qfdiv_version(void) { return "1.0.0"; }

qfdiv_status qfdiv_set_threads(unsigned threads) {
  setDefaultThreads(threads);
  return QFDIV_OK;
}

qfdiv_status qfdiv_set_seed(uint64_t seed) {
  arith::setFactorSeed(seed);
  return QFDIV_OK;
}

qfdiv_status qfdiv_form_create(int n, qfdiv_form** out) {
  QFDIV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new qfdiv_form{FormParameter(n)};
    return QFDIV_OK;
  });
}

void qfdiv_form_destroy(qfdiv_form* form) { delete form; }

qfdiv_status qfdiv_form_info_get(const qfdiv_form* form, qfdiv_form_info* out) {
  QFDIV_REQUIRE(form);
  QFDIV_REQUIRE(out);
  const FormParameter& f = form->form;
  *out = {f.n(),
          f.fundamentalDiscriminant(),
          f.unitsCount(),
          f.halfIntegral() ? 1 : 0,
          f.hasOnlyTrivialUnits() ? 1 : 0,
          f.supportsApproximation() ? 1 : 0,
          f.supportsTheorem() ? 1 : 0};
  return QFDIV_OK;
}

qfdiv_status qfdiv_chi(const qfdiv_form* form, int64_t n, int* out) {
  QFDIV_REQUIRE(form);
  QFDIV_REQUIRE(out);
  *out = form->form.chi(n);
  return QFDIV_OK;
}

void qfdiv_result_destroy(qfdiv_result* result) { delete result; }

qfdiv_status qfdiv_result_kind_get(const qfdiv_result* result, qfdiv_result_kind* out) {
  QFDIV_REQUIRE(result);
  QFDIV_REQUIRE(out);
  *out = result->kind;
  return QFDIV_OK;
}

qfdiv_status qfdiv_result_size(const qfdiv_result* result, size_t* out) {
  QFDIV_REQUIRE(result);
  QFDIV_REQUIRE(out);
  *out = std::visit(
      [](const auto& d) -> size_t {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, RootsData> || std::is_same_v<T, ResidualData>) {
          return d.rows.size();
        } else if constexpr (std::is_same_v<T, ChecksData>) {
          return d.checks.size();
        } else {
          return d.size();
        }
      },
      result->data);
  return QFDIV_OK;
}

qfdiv_status qfdiv_sum_brute(const qfdiv_form* form, uint64_t x, unsigned threads, uint64_t* out) {
  QFDIV_REQUIRE(form);
  QFDIV_REQUIRE(out);
  return guarded([&] {
    *out = sums::bruteForceS(form->form, x, threads);
    return QFDIV_OK;
  });
}

qfdiv_status qfdiv_sum_hyperbola(const qfdiv_form* form, uint64_t x, unsigned threads, int wide_split,
                                 qfdiv_sum* out) {
  QFDIV_REQUIRE(form);
  QFDIV_REQUIRE(out);
  return guarded([&] {
    const auto d = sums::hyperbolaS(form->form, x, threads, wide_split != 0);
    *out = {d.n,          d.x,     d.r,         d.q,
            d.t,          d.s,     d.bound,     d.threshold,
            d.hasWideVariant ? 1 : 0, d.wideThreshold, d.qWide, d.tWide,
            d.sWide};
    return QFDIV_OK;
  });
}

qfdiv_status qfdiv_roots(const qfdiv_form* form, uint64_t d, qfdiv_result** out) {
  QFDIV_REQUIRE(form);
  QFDIV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    if (d == 0) throw DomainError("modulus must be positive");
    const FormParameter& f = form->form;
    const auto fd = arith::factor(d);
    const auto lifted = roots::rootsByLifting(f, fd);
    const auto paired = roots::pairedRoots(f, fd);
    const auto fromReps = roots::rootsFromRepresentations(f, fd);
    RootsData data;
    data.branch = roots::branchName(roots::classify(f, d));
    std::vector<u64> all = lifted.roots;
    all.insert(all.end(), fromReps.roots.begin(), fromReps.roots.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (u64 v : all) {
      qfdiv_root_row row{};
      row.root = v;
      row.in_lifting = std::binary_search(lifted.roots.begin(), lifted.roots.end(), v);
      row.in_representations = std::binary_search(fromReps.roots.begin(), fromReps.roots.end(), v);
      const auto it = std::find_if(paired.begin(), paired.end(), [v](const auto& p) { return p.root == v; });
      if (it != paired.end()) {
        row.has_representation = 1;
        row.r = it->r;
        row.s = it->s;
      }
      data.rows.push_back(row);
    }
    data.summary.modulus = d;
    data.summary.lifting_count = lifted.size();
    data.summary.representation_count = fromReps.size();
    data.summary.sets_equal = lifted.roots == fromReps.roots;
    auto* res = new qfdiv_result{QFDIV_RESULT_ROOTS, std::move(data)};
    auto& stored = std::get<RootsData>(res->data);
    stored.summary.branch = stored.branch.c_str();
    *out = res;
    return QFDIV_OK;
  });
}

qfdiv_status qfdiv_roots_summary_get(const qfdiv_result* result, qfdiv_roots_summary* out) {
  QFDIV_REQUIRE(result);
  QFDIV_REQUIRE(out);
  if (result->kind != QFDIV_RESULT_ROOTS) return fail(QFDIV_ERR_WRONG_KIND, "result holds another record type");
  *out = std::get<RootsData>(result->data).summary;
  return QFDIV_OK;
}

qfdiv_status qfdiv_roots_row(const qfdiv_result* result, size_t i, qfdiv_root_row* out) {
  QFDIV_REQUIRE(result);
  QFDIV_REQUIRE(out);
  if (result->kind != QFDIV_RESULT_ROOTS) return fail(QFDIV_ERR_WRONG_KIND, "result holds another record type");
  return rowOf(result, QFDIV_RESULT_ROOTS, std::get<RootsData>(result->data).rows, i, out);
}

qfdiv_status qfdiv_approx_scan(const qfdiv_form* form, uint64_t dmax, qfdiv_result** out) {
  QFDIV_REQUIRE(form);
  QFDIV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const FormParameter& f = form->form;
    if (!f.supportsApproximation()) throw DomainError("approximation needs N in {1, 2, 67, 163}; " + f.describe());
    std::vector<qfdiv_approx_row> rows;
    for (u64 d = 1; d <= dmax; ++d) {
      const double sd = std::sqrt(static_cast<double>(d));
      for (u64 v : roots::rootsByLifting(f, d).roots) {
        const auto ap = approx::approximate(f, d, v);
        static const std::string names[] = {approx::branchName(approx::ApproxBranch::kSDenominator),
                                            approx::branchName(approx::ApproxBranch::kRDenominator),
                                            approx::branchName(approx::ApproxBranch::kNDividesD),
                                            approx::branchName(approx::ApproxBranch::kEvenD)};
        rows.push_back({d, v, ap.a, ap.q, static_cast<double>(ap.q) / sd,
                        names[static_cast<int>(ap.branch)].c_str()});
      }
    }
    *out = new qfdiv_result{QFDIV_RESULT_APPROX, std::move(rows)};
    return QFDIV_OK;
  });
}

qfdiv_status qfdiv_approx_row_get(const qfdiv_result* result, size_t i, qfdiv_approx_row* out) {
  QFDIV_REQUIRE(result);
  QFDIV_REQUIRE(out);
  if (result->kind != QFDIV_RESULT_APPROX) return fail(QFDIV_ERR_WRONG_KIND, "result holds another record type");
  return rowOf(result, QFDIV_RESULT_APPROX, std::get<std::vector<qfdiv_approx_row>>(result->data), i, out);
}

qfdiv_status qfdiv_sieve_study(const qfdiv_form* form, uint64_t dmin, uint64_t dmax, uint64_t h, qfdiv_m_rule rule,
                               unsigned threads, qfdiv_result** out) {
  QFDIV_REQUIRE(form);
  QFDIV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    if (dmin < 1 || dmax < dmin) throw DomainError("sieve grid needs 1 <= dmin <= dmax");
    if (h < 1) throw DomainError("H must be positive");
    expsums::MRule r;
    switch (rule) {
      case QFDIV_M_EQUAL_D: r = expsums::MRule::kEqualD; break;
      case QFDIV_M_SQRT_D: r = expsums::MRule::kSqrtD; break;
      case QFDIV_M_SQUARE_D: r = expsums::MRule::kSquareD; break;
      default: throw DomainError("unknown M rule");
    }
    std::vector<u64> grid;
    for (u64 D = dmin; D <= dmax; D *= 2) {
      grid.push_back(D);
      if (D > dmax / 2) break;
    }
    const auto study = expsums::sieveBoundStudy(form->form, grid, h, r, threads);
    std::vector<qfdiv_sieve_row> rows;
    for (const auto& s : study.samples) rows.push_back({s.D, s.H, s.M, s.value, s.boundRatio});
    *out = new qfdiv_result{QFDIV_RESULT_SIEVE, std::move(rows)};
    return QFDIV_OK;
  });
}

qfdiv_status qfdiv_sieve_row_get(const qfdiv_result* result, size_t i, qfdiv_sieve_row* out) {
  QFDIV_REQUIRE(result);
  QFDIV_REQUIRE(out);
  if (result->kind != QFDIV_RESULT_SIEVE) return fail(QFDIV_ERR_WRONG_KIND, "result holds another record type");
  return rowOf(result, QFDIV_RESULT_SIEVE, std::get<std::vector<qfdiv_sieve_row>>(result->data), i, out);
}

qfdiv_status qfdiv_rho_table_create(const qfdiv_form* form, uint64_t limit, qfdiv_rho_table** out) {
  QFDIV_REQUIRE(form);
  QFDIV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    if (limit < 1) throw DomainError("limit must be positive");
    const FormParameter& f = form->form;
    // A = L(1) G(1) / 2 holds for every class-number-one N.
    const double a = constants::lValue(f, 1) * constants::gResidue(f) / 2.0;
    *out = new qfdiv_rho_table{rho::RhoTable(f, limit), a};
    return QFDIV_OK;
  });
}

void qfdiv_rho_table_destroy(qfdiv_rho_table* table) { delete table; }

qfdiv_status qfdiv_rho_row_get(const qfdiv_rho_table* table, uint64_t d, qfdiv_rho_row* out) {
  QFDIV_REQUIRE(table);
  QFDIV_REQUIRE(out);
  return guarded([&] {
    if (d < 1 || d > table->table.limit()) throw RangeError("d outside [1, limit]");
    const double dd = static_cast<double>(d);
    *out = {d, table->table.rho0(d), table->table.rho(d),
            static_cast<double>(table->table.partialRho(d)) - table->a * dd * dd};
    return QFDIV_OK;
  });
}

qfdiv_status qfdiv_constants_compute(const qfdiv_form* form, uint64_t cutoff, qfdiv_constants* out) {
  QFDIV_REQUIRE(form);
  QFDIV_REQUIRE(out);
  return guarded([&] {
    if (cutoff < 3) throw DomainError("cutoff must be at least 3");
    const auto k = constants::theoremConstants(form->form, cutoff);
    *out = qfdiv_constants{};
    out->n = k.n;
    out->cutoff = k.cutoff;
    out->l1 = k.l1;
    out->l2 = k.l2;
    out->g1 = k.g1;
    out->g2 = {k.g2.value, k.g2.halfwidth};
    out->a = k.a;
    out->a_printed = k.aPrinted;
    out->e_integral = {k.eIntegral.value, k.eIntegral.halfwidth};
    out->error_constant = k.errorConstant;
    out->r_main = k.rMain;
    out->q_main = k.qMain;
    out->t_main = k.tMain;
    out->q_wide_main = k.qWideMain;
    out->t_wide_main = k.tWideMain;
    out->q_constant = k.qConstant;
    out->t_bracket = k.tBracket;
    out->c1 = k.c1;
    out->c2 = {k.c2.value, k.c2.halfwidth};
    out->c2_printed = {k.c2Printed.value, k.c2Printed.halfwidth};
    out->flagged = k.flagged ? 1 : 0;
    return QFDIV_OK;
  });
}

qfdiv_status qfdiv_geometric_grid(uint64_t start, uint64_t stop, double ratio, uint64_t* grid, size_t capacity,
                                  size_t* count) {
  QFDIV_REQUIRE(count);
  return guarded([&] {
    const auto g = sums::geometricGrid(start, stop, ratio);
    *count = g.size();
    if (grid == nullptr) return QFDIV_OK;
    if (capacity < g.size()) return fail(QFDIV_ERR_BUFFER, "grid buffer holds fewer than " + std::to_string(g.size()));
    std::copy(g.begin(), g.end(), grid);
    return QFDIV_OK;
  });
}

qfdiv_status qfdiv_residual_study(const qfdiv_form* form, const uint64_t* grid, size_t count, uint64_t cutoff,
                                  unsigned threads, qfdiv_result** out) {
  QFDIV_REQUIRE(form);
  QFDIV_REQUIRE(out);
  if (count > 0) QFDIV_REQUIRE(grid);
  *out = nullptr;
  return guarded([&] {
    if (cutoff < 3) throw DomainError("cutoff must be at least 3");
    const auto k = constants::theoremConstants(form->form, cutoff);
    const auto study = sums::residualStudy(form->form, std::vector<u64>(grid, grid + count), k, threads);
    ResidualData data;
    data.slope = study.slope;
    for (const auto& r : study.records) {
      data.rows.push_back({r.x, r.s, r.mainTerm, r.residual, r.residualOverX32, r.residualOverX2, r.rOverX2LogX,
                           r.qOverX2, r.tOverX2, r.qWideOverX2, r.tWideOverX2});
    }
    *out = new qfdiv_result{QFDIV_RESULT_RESIDUALS, std::move(data)};
    return QFDIV_OK;
  });
}

qfdiv_status qfdiv_residual_slope(const qfdiv_result* result, int* has_slope, double* slope) {
  QFDIV_REQUIRE(result);
  QFDIV_REQUIRE(has_slope);
  QFDIV_REQUIRE(slope);
  if (result->kind != QFDIV_RESULT_RESIDUALS) return fail(QFDIV_ERR_WRONG_KIND, "result holds another record type");
  const auto& s = std::get<ResidualData>(result->data).slope;
  *has_slope = s.has_value() ? 1 : 0;
  *slope = s.value_or(0.0);
  return QFDIV_OK;
}

qfdiv_status qfdiv_residual_row_get(const qfdiv_result* result, size_t i, qfdiv_residual_row* out) {
  QFDIV_REQUIRE(result);
  QFDIV_REQUIRE(out);
  if (result->kind != QFDIV_RESULT_RESIDUALS) return fail(QFDIV_ERR_WRONG_KIND, "result holds another record type");
  return rowOf(result, QFDIV_RESULT_RESIDUALS, std::get<ResidualData>(result->data).rows, i, out);
}

qfdiv_status qfdiv_thresholds_default(char* buffer, size_t capacity, size_t* needed) {
  QFDIV_REQUIRE(needed);
  return guarded([&] {
    const std::string text = verify::thresholdsToJson(verify::Thresholds{});
    *needed = text.size() + 1;
    if (buffer == nullptr) return QFDIV_OK;
    if (capacity < text.size() + 1) return fail(QFDIV_ERR_BUFFER, "buffer holds fewer than " + std::to_string(*needed) + " bytes");
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    return QFDIV_OK;
  });
}

qfdiv_status qfdiv_verify_suite(const char* suite, const int* forms, size_t form_count, uint64_t dmax,
                                const char* thresholds_json, unsigned threads, uint64_t seed, qfdiv_result** out) {
  QFDIV_REQUIRE(suite);
  QFDIV_REQUIRE(out);
  if (form_count > 0) QFDIV_REQUIRE(forms);
  *out = nullptr;
  return guarded([&] {
    const auto t = thresholdsOf(thresholds_json);
    std::vector<int> list(forms, forms + form_count);
    for (int n : list) FormParameter check(n);
    ChecksData data{verify::runSuite(suite, list, dmax, t, threads, seed)};
    *out = new qfdiv_result{QFDIV_RESULT_CHECKS, std::move(data)};
    return QFDIV_OK;
  });
}

qfdiv_status qfdiv_verify_criterion(int criterion, const char* thresholds_json, unsigned threads, uint64_t seed,
                                    qfdiv_result** out) {
  QFDIV_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto t = thresholdsOf(thresholds_json);
    ChecksData data{{verify::criterion(criterion, t, threads, seed)}};
    *out = new qfdiv_result{QFDIV_RESULT_CHECKS, std::move(data)};
    return QFDIV_OK;
  });
}

qfdiv_status qfdiv_check_row_get(const qfdiv_result* result, size_t i, qfdiv_check_row* out) {
  QFDIV_REQUIRE(result);
  QFDIV_REQUIRE(out);
  if (result->kind != QFDIV_RESULT_CHECKS) return fail(QFDIV_ERR_WRONG_KIND, "result holds another record type");
  const auto& checks = std::get<ChecksData>(result->data).checks;
  if (i >= checks.size()) return fail(QFDIV_ERR_INDEX, "row " + std::to_string(i) + " out of range");
  const auto& c = checks[i];
  *out = {c.id.c_str(), c.name.c_str(), c.passed ? 1 : 0, c.detail.c_str(), c.seconds};
  return QFDIV_OK;
}

}  // extern "C"
