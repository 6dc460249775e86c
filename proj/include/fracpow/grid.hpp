#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fracpow {

/// Uniform grid on the rectangle (0,l1)x(0,l2) with N1, N2 intervals per axis.
/// Only the (N1-1)(N2-1) interior nodes carry unknowns; the Dirichlet boundary
/// is implicitly zero.
class Grid2D {
public:
  Grid2D(int n1, int n2, double l1 = 1.0, double l2 = 1.0);

  static Grid2D unit_square(int n) { return Grid2D(n, n); }

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  double l1() const { return l1_; }
  double l2() const { return l2_; }
  double h1() const { return l1_ / n1_; }
  double h2() const { return l2_ / n2_; }

  int interior1() const { return n1_ - 1; }
  int interior2() const { return n2_ - 1; }
  std::size_t size() const {
    return static_cast<std::size_t>(n1_ - 1) * static_cast<std::size_t>(n2_ - 1);
  }

  // Row-major over (i1, i2), i2 fastest, 1 <= i_n <= N_n - 1.
  std::size_t index(int i1, int i2) const {
    return static_cast<std::size_t>(i1 - 1) * static_cast<std::size_t>(n2_ - 1) +
           static_cast<std::size_t>(i2 - 1);
  }
  double x1(int i1) const { return i1 * h1(); }
  double x2(int i2) const { return i2 * h2(); }

  friend bool operator==(const Grid2D &, const Grid2D &) = default;

private:
  int n1_;
  int n2_;
  double l1_;
  double l2_;
};

/// Real field on the interior nodes of a grid.
class GridFunction {
public:
  explicit GridFunction(const Grid2D &grid);
  GridFunction(const Grid2D &grid, std::vector<double> values);

  const Grid2D &grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double &operator()(int i1, int i2) { return values_[grid_.index(i1, i2)]; }
  double operator()(int i1, int i2) const { return values_[grid_.index(i1, i2)]; }
  double &operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  template <class F> static GridFunction sample(const Grid2D &grid, F &&f) {
    GridFunction u(grid);
    for (int i1 = 1; i1 <= grid.interior1(); ++i1)
      for (int i2 = 1; i2 <= grid.interior2(); ++i2)
        u(i1, i2) = f(grid.x1(i1), grid.x2(i2));
    return u;
  }

private:
  Grid2D grid_;
  std::vector<double> values_;
};

void require_same_grid(const GridFunction &u, const GridFunction &w);

/// Discrete L2 inner product: sum over interior nodes of u*w*h1*h2.
double inner_product(const GridFunction &u, const GridFunction &w);
double norm_l2(const GridFunction &u);
double norm_inf(const GridFunction &u);

/// x1^2 (1-x1) x2^2 (1-x2)
GridFunction rhs_f1(const Grid2D &grid);
/// 1 + sgn(x1 x2 - 0.25), with sgn(0) = 0.
GridFunction rhs_f2(const Grid2D &grid);

enum class Rhs { f1, f2, zero };
Rhs parse_rhs(const std::string &name);
std::string to_string(Rhs rhs);
GridFunction make_rhs(const Grid2D &grid, Rhs rhs);

/// CSV dump with header `i1,i2,x1,x2,value`, 17 significant digits.
void write_field_csv(std::ostream &os, const GridFunction &u);
void write_field_csv(const std::string &path, const GridFunction &u);

} // namespace fracpow
