#pragma once

#include "fracpow/grid.hpp"
#include "fracpow/quadrature.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fracpow {

/// Parameter sweep behind one of the five error tables.
///  table 1: quadrature error, rows m x p
///  tables 2/3: solution error for f1/f2 at one N, rows p x m
///  tables 4/5: solution error for f1/f2 with p fixed, rows N x m
struct SweepSpec {
  int table = 1;
  std::vector<double> alphas;
  std::vector<int> ms;
  std::vector<int> ps;
  std::vector<int> ns;
  Rhs rhs = Rhs::f1;
  KappaSampling kappa;
  unsigned threads = 0; // 0: hardware concurrency

  static SweepSpec defaults(int table);
  void validate() const;
};

/// One computed value with everything needed to reproduce it.
struct TableCell {
  int table = 0;
  Rhs rhs = Rhs::f1;
  int n = 0; // 0 for table 1
  int p = 0;
  int m = 0;
  double alpha = 0.0;
  std::string error; // eps, eps2 or epsinf
  double value = 0.0;
  double max_u = 0.0; // solution tables only
};

struct TableRow {
  int first = 0;
  int second = 0;
  std::string error;
  std::vector<double> values; // one per alpha
};

/// CSV layout `<first>,<second>,error,<alpha_1>,...`, one row per
/// (first, second, error) with one column per alpha.
struct Table {
  int id = 0;
  std::string first_name;
  std::string second_name;
  std::vector<double> alphas;
  std::vector<TableRow> rows;
  std::vector<TableCell> cells; // empty for tables read from disk

  std::string to_csv() const;
  static Table from_csv(const std::string &text, int id);
};

/// Throws CapacityError when a requested grid is too large.
Table run_table(const SweepSpec &spec);

struct CellDiff {
  int first = 0;
  int second = 0;
  std::string error;
  double alpha = 0.0;
  double produced = 0.0;
  double reference = 0.0;
  double deviation = 0.0; // |produced - reference| / |reference|
  bool pass = false;
};

struct DiffReport {
  double tolerance = 0.0;
  double max_deviation = 0.0;
  std::vector<CellDiff> cells;

  bool pass() const;
  std::vector<CellDiff> failures() const;
  std::string to_json() const;
};

/// Cell-wise relative comparison; throws DimensionError on shape mismatch.
DiffReport diff_against_reference(const Table &produced, const Table &reference,
                                  double tolerance);

std::uint64_t fnv1a64(const std::string &bytes);
std::string read_file(const std::string &path);

/// Reads `table<id>.csv` from `dir` and checks it against `checksums.txt`.
Table load_reference(const std::string &dir, int id);

struct FigureAnchor {
  Rhs rhs = Rhs::f1;
  double alpha = 0.0;
  double max_u = 0.0;
};

/// `figures.csv` from `dir`, checksum-verified.
std::vector<FigureAnchor> load_figure_anchors(const std::string &dir);

/// Largest value of the approximate solution for each requested alpha.
std::vector<FigureAnchor> run_figure_anchors(Rhs rhs, const std::vector<double> &alphas,
                                             int n = 256, int m = 100, unsigned threads = 0);

/// Build-time location of the shipped reference data.
std::string default_reference_dir();

} // namespace fracpow
