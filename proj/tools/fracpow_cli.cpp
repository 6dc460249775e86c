// fracpow: command-line front end over the C interface.
//
//   fracpow solve --alpha 0.5 --m 25 [--p 0] [--N 256] [--rhs f1] [--delta auto]
//   fracpow quad-error --m 25,50 --p 0,1 --alpha 0.5
//   fracpow table --table 2 [--check] [--tol 0.01]
//   fracpow dump-field --N 64 --rhs f2 --out f2.csv
//
// Exit codes: 0 success, 1 --check failure, 2 usage error, 3 capacity or
// resource error.

#include "fracpow/fracpow.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

struct CliError {
  int code;
  std::string message;
};

int exit_code(fracpow_status s) {
  switch (s) {
  case FRACPOW_OK:
    return kOk;
  case FRACPOW_ERR_DOMAIN:
  case FRACPOW_ERR_DIMENSION:
  case FRACPOW_ERR_NULL:
    return kUsage;
  default:
    return kResource;
  }
}

void check(fracpow_status s, const std::string &what) {
  if (s != FRACPOW_OK)
    throw CliError{exit_code(s), what + ": " + fracpow_last_error()};
}

template <class T, void (*Destroy)(T *)> struct Deleter {
  void operator()(T *p) const { Destroy(p); }
};
using ProblemPtr = std::unique_ptr<fracpow_problem, Deleter<fracpow_problem, fracpow_problem_destroy>>;
using ReportPtr = std::unique_ptr<fracpow_report, Deleter<fracpow_report, fracpow_report_destroy>>;
using TablePtr = std::unique_ptr<fracpow_table, Deleter<fracpow_table, fracpow_table_destroy>>;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

fracpow_rhs parse_rhs(const std::string &s) {
  if (s == "f1")
    return FRACPOW_RHS_F1;
  if (s == "f2")
    return FRACPOW_RHS_F2;
  if (s == "zero")
    return FRACPOW_RHS_ZERO;
  throw CliError{kUsage, "--rhs must be f1, f2 or zero (got '" + s + "')"};
}

void require_alpha(double a) {
  if (!(a > 0.0 && a < 1.0))
    throw CliError{kUsage, "--alpha must lie in the open interval (0, 1), got " + num(a)};
}

void require_at_least(const char *flag, long v, long lo) {
  if (v < lo)
    throw CliError{kUsage, std::string(flag) + " must be at least " + std::to_string(lo) +
                               ", got " + std::to_string(v)};
}

double parse_delta(const std::string &s) {
  if (s == "auto")
    return 0.0;
  try {
    std::size_t used = 0;
    const double d = std::stod(s, &used);
    if (used == s.size() && d > 0.0 && std::isfinite(d))
      return d;
  } catch (const std::exception &) {
  }
  throw CliError{kUsage, "--delta must be 'auto' or a positive number, got '" + s + "'"};
}

std::string text_of(fracpow_status (*get)(const void *, char *, size_t, size_t *), const void *h) {
  size_t len = 0;
  check(get(h, nullptr, 0, &len), "query length");
  std::string s(len + 1, '\0');
  check(get(h, s.data(), s.size(), &len), "copy text");
  s.resize(len);
  return s;
}

std::string report_json(const fracpow_report *r) {
  return text_of(
      [](const void *h, char *b, size_t c, size_t *l) {
        return fracpow_report_json(static_cast<const fracpow_report *>(h), b, c, l);
      },
      r);
}

std::string table_csv(const fracpow_table *t) {
  return text_of(
      [](const void *h, char *b, size_t c, size_t *l) {
        return fracpow_table_csv(static_cast<const fracpow_table *>(h), b, c, l);
      },
      t);
}

void write_text(const std::string &path, const std::string &text) {
  std::ofstream os(path, std::ios::binary);
  if (!os || !(os << text))
    throw CliError{kResource, "cannot write '" + path + "'"};
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
  double alpha = 0.0;
  int m = 0;
  int p = 0;
  int n = 256;
  std::string rhs = "f1";
  std::string delta = "auto";
  std::string json;
  std::string field_csv;
  std::string exact_csv;
  std::string normalized_csv;
};

int cmd_solve(const SolveArgs &a) {
  require_alpha(a.alpha);
  require_at_least("--m", a.m, 1);
  require_at_least("--p", a.p, 0);
  require_at_least("--N", a.n, 2);
  const fracpow_rhs rhs = parse_rhs(a.rhs);
  const double delta = parse_delta(a.delta);

  fracpow_problem_desc desc;
  fracpow_problem_desc_default(&desc, a.n);
  fracpow_problem *raw = nullptr;
  check(fracpow_problem_create(&desc, &raw), "build problem");
  ProblemPtr problem(raw);

  const fracpow_solve_params params{a.alpha, a.p, a.m, delta};
  fracpow_report *rep = nullptr;
  check(fracpow_solve(problem.get(), rhs, &params, &rep), "solve");
  ReportPtr report(rep);

  fracpow_report_summary s;
  check(fracpow_report_summary_get(report.get(), &s), "summary");
  std::cout << "eps2 = " << num(s.eps2) << '\n'
            << "rel_l2 = " << num(s.rel_l2) << '\n'
            << "epsinf = " << num(s.epsinf) << '\n'
            << "max_u = " << num(s.max_u) << '\n';

  if (!a.json.empty())
    write_text(a.json, report_json(report.get()) + "\n");
  if (!a.field_csv.empty())
    check(fracpow_report_write_field_csv(report.get(), FRACPOW_FIELD_APPROX, a.field_csv.c_str()),
          "write field");
  if (!a.exact_csv.empty())
    check(fracpow_report_write_field_csv(report.get(), FRACPOW_FIELD_EXACT, a.exact_csv.c_str()),
          "write exact field");
  if (!a.normalized_csv.empty())
    check(fracpow_report_write_field_csv(report.get(), FRACPOW_FIELD_NORMALIZED,
                                         a.normalized_csv.c_str()),
          "write normalized field");
  return kOk;
}

// ---- quad-error ----------------------------------------------------------

struct QuadArgs {
  std::vector<int> m;
  std::vector<int> p{0};
  std::vector<double> alpha;
  double kappa_min = 1.0;
  double kappa_max = 1.0e5;
  int samples = 2000;
  std::string out;
};

int cmd_quad_error(const QuadArgs &a) {
  for (double al : a.alpha)
    require_alpha(al);
  for (int m : a.m)
    require_at_least("--m", m, 1);
  for (int p : a.p)
    require_at_least("--p", p, 0);
  const fracpow_kappa_sampling sampling{a.kappa_min, a.kappa_max, a.samples};

  std::ostringstream os;
  os << "m,p,alpha,epsilon\n";
  for (int m : a.m)
    for (int p : a.p)
      for (double al : a.alpha) {
        double eps = 0.0;
        check(fracpow_quad_error(m, al, p, &sampling, &eps), "quadrature error");
        os << m << ',' << p << ',' << num(al) << ',' << num(eps) << '\n';
      }
  if (a.out.empty())
    std::cout << os.str();
  else
    write_text(a.out, os.str());
  return kOk;
}

// ---- table ---------------------------------------------------------------

struct TableArgs {
  int table = 1;
  bool check = false;
  double tol = -1.0;
  std::string reference;
  std::string out;
  std::string diff;
  std::vector<double> alpha;
  std::vector<int> m;
  std::vector<int> p;
  std::vector<int> n;
};

int cmd_table(const TableArgs &a, unsigned threads) {
  if (a.table < 1 || a.table > 5)
    throw CliError{kUsage, "--table must be 1..5"};
  for (double al : a.alpha)
    require_alpha(al);

  fracpow_sweep sweep;
  fracpow_sweep_default(a.table, &sweep);
  sweep.threads = threads;
  sweep.alphas = a.alpha.data();
  sweep.n_alphas = a.alpha.size();
  sweep.ms = a.m.data();
  sweep.n_ms = a.m.size();
  sweep.ps = a.p.data();
  sweep.n_ps = a.p.size();
  sweep.ns = a.n.data();
  sweep.n_ns = a.n.size();

  // Load the reference before the sweep so a bad path fails fast.
  TablePtr reference;
  if (a.check) {
    fracpow_table *ref = nullptr;
    check(fracpow_table_load_reference(a.reference.empty() ? nullptr : a.reference.c_str(),
                                       a.table, &ref),
          "load reference");
    reference.reset(ref);
  }

  fracpow_table *raw = nullptr;
  check(fracpow_table_run(&sweep, &raw), "run table");
  TablePtr table(raw);

  const std::string out = a.out.empty() ? "table" + std::to_string(a.table) + ".csv" : a.out;
  check(fracpow_table_write_csv(table.get(), out.c_str()), "write table");
  std::cout << table_csv(table.get());

  if (!a.check)
    return kOk;
  const double tol = a.tol >= 0.0 ? a.tol : (a.table == 1 ? 0.10 : 0.01);
  int pass = 0;
  double worst = 0.0;
  size_t len = 0;
  check(fracpow_table_diff(table.get(), reference.get(), tol, &pass, &worst, nullptr, 0, &len),
        "diff");
  std::string json(len + 1, '\0');
  check(fracpow_table_diff(table.get(), reference.get(), tol, &pass, &worst, json.data(),
                           json.size(), &len),
        "diff");
  json.resize(len);
  const std::string diff =
      a.diff.empty() ? "table" + std::to_string(a.table) + "_diff.json" : a.diff;
  write_text(diff, json + "\n");
  std::cout << "check table " << a.table << ": " << (pass ? "PASS" : "FAIL")
            << " (max relative deviation " << num(worst) << ", tolerance " << num(tol) << ")\n";
  return pass ? kOk : kCheckFailed;
}

// ---- dump-field ----------------------------------------------------------

struct DumpArgs {
  int n = 64;
  std::string rhs = "f1";
  std::string field = "rhs";
  std::string out;
  double alpha = 0.5;
  int m = 50;
  int p = 0;
};

int cmd_dump_field(const DumpArgs &a) {
  require_at_least("--N", a.n, 2);
  const fracpow_rhs rhs = parse_rhs(a.rhs);
  fracpow_field which;
  if (a.field == "rhs")
    which = FRACPOW_FIELD_RHS;
  else if (a.field == "approx")
    which = FRACPOW_FIELD_APPROX;
  else if (a.field == "exact")
    which = FRACPOW_FIELD_EXACT;
  else if (a.field == "normalized")
    which = FRACPOW_FIELD_NORMALIZED;
  else
    throw CliError{kUsage, "--field must be rhs, approx, exact or normalized"};
  if (which != FRACPOW_FIELD_RHS) {
    require_alpha(a.alpha);
    require_at_least("--m", a.m, 1);
    require_at_least("--p", a.p, 0);
  }
  const std::string out = a.out.empty() ? "field.csv" : a.out;

  fracpow_problem_desc desc;
  fracpow_problem_desc_default(&desc, a.n);
  fracpow_problem *raw = nullptr;
  check(fracpow_problem_create(&desc, &raw), "build problem");
  ProblemPtr problem(raw);

  if (which == FRACPOW_FIELD_RHS) {
    check(fracpow_problem_write_rhs_csv(problem.get(), rhs, out.c_str()), "write field");
  } else {
    const fracpow_solve_params params{a.alpha, a.p, a.m, 0.0};
    fracpow_report *rep = nullptr;
    check(fracpow_solve(problem.get(), rhs, &params, &rep), "solve");
    ReportPtr report(rep);
    check(fracpow_report_write_field_csv(report.get(), which, out.c_str()), "write field");
  }
  std::cout << "wrote " << out << '\n';
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Fractional powers of the 2D finite-difference Laplacian via Gauss-Laguerre "
               "quadrature of the heat semigroup"};
  app.set_version_flag("--version", std::string(fracpow_version()));
  app.set_config("--config", "", "key=value configuration file; flags override it");
  app.require_subcommand(1);

  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0: all cores)")
      ->envname("FRACPOW_THREADS");

  SolveArgs solve;
  auto *s = app.add_subcommand("solve", "approximate A^-alpha b and report errors");
  s->add_option("--alpha", solve.alpha, "fractional power in (0, 1)")->required();
  s->add_option("--m", solve.m, "quadrature nodes")->required();
  s->add_option("--p", solve.p, "integer shift of the weight exponent")->capture_default_str();
  s->add_option("--N", solve.n, "intervals per axis on the unit square")->capture_default_str();
  s->add_option("--rhs", solve.rhs, "f1, f2 or zero")->capture_default_str();
  s->add_option("--delta", solve.delta, "lower spectral bound, or auto for mu_1")
      ->capture_default_str();
  s->add_option("--json", solve.json, "write the report as JSON");
  s->add_option("--field-csv", solve.field_csv, "write the approximate solution");
  s->add_option("--exact-csv", solve.exact_csv, "write the exact spectral solution");
  s->add_option("--normalized-csv", solve.normalized_csv, "write u / max u");

  QuadArgs quad;
  auto *q = app.add_subcommand("quad-error", "quadrature error for S(alpha+p, kappa)");
  q->add_option("--m", quad.m, "node counts")->required()->delimiter(',');
  q->add_option("--p", quad.p, "shifts")->delimiter(',')->capture_default_str();
  q->add_option("--alpha", quad.alpha, "fractional powers")->required()->delimiter(',');
  q->add_option("--kappa-min", quad.kappa_min)->capture_default_str();
  q->add_option("--kappa-max", quad.kappa_max)->capture_default_str();
  q->add_option("--samples", quad.samples, "log-spaced kappa samples")->capture_default_str();
  q->add_option("--out", quad.out, "CSV path (default: stdout)");

  TableArgs table;
  auto *t = app.add_subcommand("table", "reproduce one of the five error tables");
  t->add_option("--table", table.table, "table id 1..5")->required();
  t->add_flag("--check", table.check, "compare against the shipped reference values");
  t->add_option("--tol", table.tol, "relative tolerance (default 0.10 for table 1, else 0.01)");
  t->add_option("--reference", table.reference, "reference data directory")
      ->default_str(fracpow_default_reference_dir());
  t->add_option("--out", table.out, "CSV path (default: table<id>.csv)");
  t->add_option("--diff", table.diff, "diff report path (default: table<id>_diff.json)");
  t->add_option("--alpha", table.alpha, "override alpha columns")->delimiter(',');
  t->add_option("--m", table.m, "override node counts")->delimiter(',');
  t->add_option("--p", table.p, "override shifts")->delimiter(',');
  t->add_option("--N", table.n, "override grid sizes")->delimiter(',');

  DumpArgs dump;
  auto *d = app.add_subcommand("dump-field", "write a right-hand side or solution as CSV");
  d->add_option("--N", dump.n)->capture_default_str();
  d->add_option("--rhs", dump.rhs, "f1, f2 or zero")->capture_default_str();
  d->add_option("--field", dump.field, "rhs, approx, exact or normalized")->capture_default_str();
  d->add_option("--out", dump.out, "CSV path (default: field.csv)");
  d->add_option("--alpha", dump.alpha)->capture_default_str();
  d->add_option("--m", dump.m)->capture_default_str();
  d->add_option("--p", dump.p)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*s)
      return cmd_solve(solve);
    if (*q)
      return cmd_quad_error(quad);
    if (*t)
      return cmd_table(table, threads);
    if (*d)
      return cmd_dump_field(dump);
  } catch (const CliError &e) {
    std::cerr << "fracpow: " << e.message << '\n';
    return e.code;
  }
  return kUsage;
}
