#include "fracpow/fracpow.h"

#include "fracpow/bench.hpp"
#include "fracpow/errors.hpp"
#include "fracpow/fracsolve.hpp"
#include "fracpow/quadrature.hpp"
#include "fracpow/spectral.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#ifndef FRACPOW_VERSION
#define FRACPOW_VERSION "0.0.0"
#endif

struct fracpow_rule {
  fracpow::LaguerreRule rule;
};

struct fracpow_problem {
  fracpow::Grid2D grid;
  fracpow::SpectralBasis basis;
};

struct fracpow_report {
  fracpow::SolveReport report;
  fracpow::GridFunction rhs;
};

struct fracpow_table {
  fracpow::Table table;
};

namespace {

thread_local std::string last_error;

fracpow_status fail(fracpow_status s, const char *what) {
  last_error = what;
  return s;
}

// Runs body and converts exceptions into status codes.
template <class Body> fracpow_status guarded(Body &&body) {
  try {
    body();
    return FRACPOW_OK;
  } catch (const fracpow::DomainError &e) {
    return fail(FRACPOW_ERR_DOMAIN, e.what());
  } catch (const fracpow::DimensionError &e) {
    return fail(FRACPOW_ERR_DIMENSION, e.what());
  } catch (const fracpow::CapacityError &e) {
    return fail(FRACPOW_ERR_CAPACITY, e.what());
  } catch (const fracpow::NumericError &e) {
    return fail(FRACPOW_ERR_NUMERIC, e.what());
  } catch (const fracpow::IoError &e) {
    return fail(FRACPOW_ERR_IO, e.what());
  } catch (const std::bad_alloc &) {
    return fail(FRACPOW_ERR_CAPACITY, "out of memory");
  } catch (const std::exception &e) {
    return fail(FRACPOW_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FRACPOW_ERR_INTERNAL, "unknown error");
  }
}

#define FRACPOW_REQUIRE(ptr)                                                                   \
  do {                                                                                         \
    if (!(ptr))                                                                                \
      return fail(FRACPOW_ERR_NULL, #ptr " must not be NULL");                                 \
  } while (0)

fracpow_status copy_text(const std::string &text, char *buf, size_t cap, size_t *len) {
  if (len)
    *len = text.size();
  if (!buf)
    return FRACPOW_OK;
  if (cap <= text.size())
    return fail(FRACPOW_ERR_BUFFER, "output buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return FRACPOW_OK;
}

fracpow::Rhs to_rhs(int rhs) {
  switch (rhs) {
  case FRACPOW_RHS_F1:
    return fracpow::Rhs::f1;
  case FRACPOW_RHS_F2:
    return fracpow::Rhs::f2;
  case FRACPOW_RHS_ZERO:
    return fracpow::Rhs::zero;
  default:
    throw fracpow::DomainError("unknown right-hand side selector " + std::to_string(rhs));
  }
}

fracpow::SolverConfig to_config(const fracpow_solve_params &p) {
  fracpow::SolverConfig c{p.alpha, p.p, p.m, std::nullopt};
  if (p.delta > 0.0)
    c.delta = p.delta;
  return c;
}

fracpow::KappaSampling to_sampling(const fracpow_kappa_sampling *s) {
  fracpow::KappaSampling k;
  if (s)
    k = {s->kappa_min, s->kappa_max, s->samples};
  return k;
}

const fracpow::GridFunction &field_of(const fracpow_report &r, fracpow_field which,
                                      std::optional<fracpow::GridFunction> &scratch) {
  switch (which) {
  case FRACPOW_FIELD_APPROX:
    return r.report.approx;
  case FRACPOW_FIELD_EXACT:
    return r.report.exact;
  case FRACPOW_FIELD_NORMALIZED:
    scratch = r.report.normalized();
    return *scratch;
  case FRACPOW_FIELD_RHS:
    return r.rhs;
  }
  throw fracpow::DomainError("unknown field selector " + std::to_string(static_cast<int>(which)));
}

} // namespace

extern "C" {

const char *fracpow_version(void) { return FRACPOW_VERSION; }

const char *fracpow_last_error(void) { return last_error.c_str(); }

const char *fracpow_status_name(fracpow_status status) {
  switch (status) {
  case FRACPOW_OK:
    return "ok";
  case FRACPOW_ERR_DOMAIN:
    return "domain error";
  case FRACPOW_ERR_DIMENSION:
    return "dimension error";
  case FRACPOW_ERR_CAPACITY:
    return "capacity error";
  case FRACPOW_ERR_NUMERIC:
    return "numeric error";
  case FRACPOW_ERR_IO:
    return "i/o error";
  case FRACPOW_ERR_NULL:
    return "null argument";
  case FRACPOW_ERR_BUFFER:
    return "buffer too small";
  case FRACPOW_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

const char *fracpow_default_reference_dir(void) {
  static const std::string dir = fracpow::default_reference_dir();
  return dir.c_str();
}

fracpow_status fracpow_rule_create(int m, double beta, fracpow_rule **out) {
  FRACPOW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new fracpow_rule{fracpow::build_rule(m, beta)}; });
}

void fracpow_rule_destroy(fracpow_rule *rule) { delete rule; }

fracpow_status fracpow_rule_size(const fracpow_rule *rule, int *m) {
  FRACPOW_REQUIRE(rule);
  FRACPOW_REQUIRE(m);
  *m = rule->rule.size();
  return FRACPOW_OK;
}

fracpow_status fracpow_rule_get(const fracpow_rule *rule, double *nodes, double *weights,
                                size_t capacity) {
  FRACPOW_REQUIRE(rule);
  const auto x = rule->rule.nodes();
  const auto w = rule->rule.weights();
  if (capacity < x.size())
    return fail(FRACPOW_ERR_BUFFER, "capacity smaller than the number of nodes");
  for (size_t i = 0; i < x.size(); ++i) {
    if (nodes)
      nodes[i] = x[i];
    if (weights)
      weights[i] = w[i];
  }
  return FRACPOW_OK;
}

fracpow_status fracpow_rule_s_quad(const fracpow_rule *rule, double kappa, double *out) {
  FRACPOW_REQUIRE(rule);
  FRACPOW_REQUIRE(out);
  return guarded([&] { *out = fracpow::s_quad(rule->rule, kappa); });
}

fracpow_status fracpow_s_exact(double beta, double kappa, double *out) {
  FRACPOW_REQUIRE(out);
  return guarded([&] { *out = fracpow::s_exact(beta, kappa); });
}

void fracpow_kappa_sampling_default(fracpow_kappa_sampling *s) {
  if (!s)
    return;
  const fracpow::KappaSampling k;
  *s = {k.min, k.max, k.count};
}

fracpow_status fracpow_quad_error(int m, double alpha, int p,
                                  const fracpow_kappa_sampling *sampling, double *epsilon) {
  FRACPOW_REQUIRE(epsilon);
  return guarded(
      [&] { *epsilon = fracpow::quad_error_study(m, alpha, p, to_sampling(sampling)).epsilon; });
}

void fracpow_problem_desc_default(fracpow_problem_desc *d, int n) {
  if (d)
    *d = {n, n, 1.0, 1.0, 1.0, 0.0};
}

fracpow_status fracpow_problem_create(const fracpow_problem_desc *desc, fracpow_problem **out) {
  FRACPOW_REQUIRE(desc);
  FRACPOW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const fracpow::Grid2D grid(desc->n1, desc->n2, desc->l1, desc->l2);
    *out = new fracpow_problem{grid, fracpow::SpectralBasis::analytic(grid, desc->a0, desc->c0)};
  });
}

void fracpow_problem_destroy(fracpow_problem *problem) { delete problem; }

fracpow_status fracpow_problem_size(const fracpow_problem *problem, size_t *k) {
  FRACPOW_REQUIRE(problem);
  FRACPOW_REQUIRE(k);
  *k = problem->grid.size();
  return FRACPOW_OK;
}

fracpow_status fracpow_problem_mu_min(const fracpow_problem *problem, double *mu) {
  FRACPOW_REQUIRE(problem);
  FRACPOW_REQUIRE(mu);
  *mu = problem->basis.mu_min();
  return FRACPOW_OK;
}

fracpow_status fracpow_problem_write_rhs_csv(const fracpow_problem *problem, fracpow_rhs rhs,
                                             const char *path) {
  FRACPOW_REQUIRE(problem);
  FRACPOW_REQUIRE(path);
  return guarded(
      [&] { fracpow::write_field_csv(path, fracpow::make_rhs(problem->grid, to_rhs(rhs))); });
}

static fracpow_status solve_impl(const fracpow_problem *problem, fracpow::GridFunction b,
                                 const fracpow_solve_params *params, fracpow_report **out) {
  return guarded([&] {
    auto report = fracpow::solution_report(to_config(*params), problem->basis, b);
    *out = new fracpow_report{std::move(report), std::move(b)};
  });
}

fracpow_status fracpow_solve(const fracpow_problem *problem, fracpow_rhs rhs,
                             const fracpow_solve_params *params, fracpow_report **out) {
  FRACPOW_REQUIRE(problem);
  FRACPOW_REQUIRE(params);
  FRACPOW_REQUIRE(out);
  *out = nullptr;
  std::optional<fracpow::GridFunction> b;
  const fracpow_status s = guarded([&] { b = fracpow::make_rhs(problem->grid, to_rhs(rhs)); });
  if (s != FRACPOW_OK)
    return s;
  return solve_impl(problem, std::move(*b), params, out);
}

fracpow_status fracpow_solve_values(const fracpow_problem *problem, const double *values,
                                    size_t k, const fracpow_solve_params *params,
                                    fracpow_report **out) {
  FRACPOW_REQUIRE(problem);
  FRACPOW_REQUIRE(values);
  FRACPOW_REQUIRE(params);
  FRACPOW_REQUIRE(out);
  *out = nullptr;
  if (k != problem->grid.size())
    return fail(FRACPOW_ERR_DIMENSION, "right-hand side length does not match the grid");
  fracpow::GridFunction b(problem->grid, std::vector<double>(values, values + k));
  return solve_impl(problem, std::move(b), params, out);
}

void fracpow_report_destroy(fracpow_report *report) { delete report; }

fracpow_status fracpow_report_summary_get(const fracpow_report *report,
                                          fracpow_report_summary *out) {
  FRACPOW_REQUIRE(report);
  FRACPOW_REQUIRE(out);
  const auto &r = report->report;
  *out = {r.config.alpha, r.config.p, r.config.m, r.grid.n1(), r.grid.n2(), r.delta,
          r.eps2,         r.rel_l2,   r.epsinf,   r.max_u,     r.runtime_ms};
  return FRACPOW_OK;
}

fracpow_status fracpow_report_field(const fracpow_report *report, fracpow_field which,
                                    double *out, size_t k) {
  FRACPOW_REQUIRE(report);
  FRACPOW_REQUIRE(out);
  return guarded([&] {
    std::optional<fracpow::GridFunction> scratch;
    const auto &f = field_of(*report, which, scratch);
    if (k != f.size())
      throw fracpow::DimensionError("output length does not match the grid");
    std::copy(f.values().begin(), f.values().end(), out);
  });
}

fracpow_status fracpow_report_json(const fracpow_report *report, char *buf, size_t cap,
                                   size_t *len) {
  FRACPOW_REQUIRE(report);
  FRACPOW_REQUIRE(len);
  std::string text;
  const fracpow_status s = guarded([&] { text = report->report.to_json(); });
  if (s != FRACPOW_OK)
    return s;
  return copy_text(text, buf, cap, len);
}

fracpow_status fracpow_report_write_field_csv(const fracpow_report *report, fracpow_field which,
                                              const char *path) {
  FRACPOW_REQUIRE(report);
  FRACPOW_REQUIRE(path);
  return guarded([&] {
    std::optional<fracpow::GridFunction> scratch;
    fracpow::write_field_csv(path, field_of(*report, which, scratch));
  });
}

void fracpow_sweep_default(int table, fracpow_sweep *sweep) {
  if (!sweep)
    return;
  *sweep = fracpow_sweep{};
  sweep->table = table;
  sweep->rhs = -1;
  fracpow_kappa_sampling_default(&sweep->kappa);
}

fracpow_status fracpow_table_run(const fracpow_sweep *sweep, fracpow_table **out) {
  FRACPOW_REQUIRE(sweep);
  FRACPOW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    fracpow::SweepSpec spec = fracpow::SweepSpec::defaults(sweep->table);
    if (sweep->alphas && sweep->n_alphas)
      spec.alphas.assign(sweep->alphas, sweep->alphas + sweep->n_alphas);
    if (sweep->ms && sweep->n_ms)
      spec.ms.assign(sweep->ms, sweep->ms + sweep->n_ms);
    if (sweep->ps && sweep->n_ps)
      spec.ps.assign(sweep->ps, sweep->ps + sweep->n_ps);
    if (sweep->ns && sweep->n_ns)
      spec.ns.assign(sweep->ns, sweep->ns + sweep->n_ns);
    if (sweep->rhs >= 0)
      spec.rhs = to_rhs(sweep->rhs);
    spec.threads = sweep->threads;
    if (sweep->kappa.samples != 0)
      spec.kappa = to_sampling(&sweep->kappa);
    *out = new fracpow_table{fracpow::run_table(spec)};
  });
}

fracpow_status fracpow_table_load_reference(const char *dir, int table, fracpow_table **out) {
  FRACPOW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const std::string d = dir ? dir : fracpow::default_reference_dir();
    *out = new fracpow_table{fracpow::load_reference(d, table)};
  });
}

fracpow_status fracpow_table_parse_csv(const char *text, int table, fracpow_table **out) {
  FRACPOW_REQUIRE(text);
  FRACPOW_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new fracpow_table{fracpow::Table::from_csv(text, table)}; });
}

void fracpow_table_destroy(fracpow_table *table) { delete table; }

fracpow_status fracpow_table_csv(const fracpow_table *table, char *buf, size_t cap,
                                 size_t *len) {
  FRACPOW_REQUIRE(table);
  FRACPOW_REQUIRE(len);
  return copy_text(table->table.to_csv(), buf, cap, len);
}

fracpow_status fracpow_table_write_csv(const fracpow_table *table, const char *path) {
  FRACPOW_REQUIRE(table);
  FRACPOW_REQUIRE(path);
  return guarded([&] {
    std::FILE *f = std::fopen(path, "wb");
    if (!f)
      throw fracpow::IoError(std::string("cannot open '") + path + "' for writing");
    const std::string csv = table->table.to_csv();
    const bool ok = std::fwrite(csv.data(), 1, csv.size(), f) == csv.size();
    if (std::fclose(f) != 0 || !ok)
      throw fracpow::IoError(std::string("write to '") + path + "' failed");
  });
}

fracpow_status fracpow_table_diff(const fracpow_table *produced, const fracpow_table *reference,
                                  double tol, int *pass, double *max_deviation, char *json,
                                  size_t cap, size_t *len) {
  FRACPOW_REQUIRE(produced);
  FRACPOW_REQUIRE(reference);
  FRACPOW_REQUIRE(pass);
  std::optional<fracpow::DiffReport> d;
  const fracpow_status s = guarded(
      [&] { d = fracpow::diff_against_reference(produced->table, reference->table, tol); });
  if (s != FRACPOW_OK)
    return s;
  *pass = d->pass() ? 1 : 0;
  if (max_deviation)
    *max_deviation = d->max_deviation;
  if (!json && !len)
    return FRACPOW_OK;
  return copy_text(d->to_json(), json, cap, len);
}

} // extern "C"
