#pragma once

#include "fracpow/grid.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <optional>

namespace fracpow {

using CoefficientFn = std::function<double(double, double)>;

/// Diffusion coefficient a(x) > 0 and reaction coefficient c(x) >= 0.
class CoefficientField {
public:
  /// a = a0, c = c0 everywhere.
  static CoefficientField constant(double a0 = 1.0, double c0 = 0.0);
  static CoefficientField variable(CoefficientFn a, CoefficientFn c);

  double a(double x1, double x2) const { return a_(x1, x2); }
  double c(double x1, double x2) const { return c_(x1, x2); }

  // Set only for fields built with constant().
  std::optional<double> constant_a() const { return const_a_; }
  std::optional<double> constant_c() const { return const_c_; }

private:
  CoefficientField(CoefficientFn a, CoefficientFn c, std::optional<double> ca,
                   std::optional<double> cc);

  CoefficientFn a_;
  CoefficientFn c_;
  std::optional<double> const_a_;
  std::optional<double> const_c_;
};

inline constexpr std::size_t kDefaultDenseCap = 4096;

/// 5-point finite-difference operator
///   Au = -d1(a d1 u) - d2(a d2 u) + c u
/// with a sampled at half-offset midpoints and homogeneous Dirichlet data.
/// Construction samples the coefficients once and rejects a <= 0 or c < 0.
class EllipticOperator {
public:
  EllipticOperator(const Grid2D &grid, CoefficientField coeffs);

  const Grid2D &grid() const { return grid_; }
  const CoefficientField &coefficients() const { return coeffs_; }

  // Bounds of a over all stencil evaluation points.
  double a_min() const { return a_min_; }
  double a_max() const { return a_max_; }

  GridFunction apply(const GridFunction &u) const;
  GridFunction apply_power(const GridFunction &u, int p) const;

  /// Dense K x K matrix with M u == apply(u).
  Eigen::MatrixXd assemble_dense(std::size_t cap = kDefaultDenseCap) const;

private:
  Grid2D grid_;
  CoefficientField coeffs_;
  // Stencil weights per interior node (K entries each): west/east couplings
  // along axis 1, south/north along axis 2, and the diagonal.
  std::vector<double> west_, east_, south_, north_, diag_;
  double a_min_ = 0.0;
  double a_max_ = 0.0;
};

} // namespace fracpow
