#include "fracpow/elliptic_operator.hpp"

#include "fracpow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fracpow {

CoefficientField::CoefficientField(CoefficientFn a, CoefficientFn c, std::optional<double> ca,
                                   std::optional<double> cc)
    : a_(std::move(a)), c_(std::move(c)), const_a_(ca), const_c_(cc) {}

CoefficientField CoefficientField::constant(double a0, double c0) {
  if (!(a0 > 0.0) || !std::isfinite(a0))
    throw DomainError("diffusion coefficient must be positive, got " + std::to_string(a0));
  if (!(c0 >= 0.0) || !std::isfinite(c0))
    throw DomainError("reaction coefficient must be nonnegative, got " + std::to_string(c0));
  return CoefficientField([a0](double, double) { return a0; },
                          [c0](double, double) { return c0; }, a0, c0);
}

CoefficientField CoefficientField::variable(CoefficientFn a, CoefficientFn c) {
  if (!a || !c)
    throw DomainError("coefficient functions must be callable");
  return CoefficientField(std::move(a), std::move(c), std::nullopt, std::nullopt);
}

EllipticOperator::EllipticOperator(const Grid2D &grid, CoefficientField coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  const std::size_t k = grid_.size();
  west_.resize(k);
  east_.resize(k);
  south_.resize(k);
  north_.resize(k);
  diag_.resize(k);

  const double h1 = grid_.h1();
  const double h2 = grid_.h2();
  const double s1 = 1.0 / (h1 * h1);
  const double s2 = 1.0 / (h2 * h2);
  a_min_ = std::numeric_limits<double>::infinity();
  a_max_ = 0.0;

  auto sample_a = [&](double x1, double x2) {
    const double v = coeffs_.a(x1, x2);
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("diffusion coefficient a(" + std::to_string(x1) + ", " +
                        std::to_string(x2) + ") = " + std::to_string(v) + " is not positive");
    a_min_ = std::min(a_min_, v);
    a_max_ = std::max(a_max_, v);
    return v;
  };

  for (int i1 = 1; i1 <= grid_.interior1(); ++i1) {
    for (int i2 = 1; i2 <= grid_.interior2(); ++i2) {
      const double x1 = grid_.x1(i1);
      const double x2 = grid_.x2(i2);
      const std::size_t n = grid_.index(i1, i2);
      // (i +- 0.5) * h is exact in the index, so neighbouring nodes see the
      // same midpoint value.
      const double aw = sample_a((i1 - 0.5) * h1, x2);
      const double ae = sample_a((i1 + 0.5) * h1, x2);
      const double as = sample_a(x1, (i2 - 0.5) * h2);
      const double an = sample_a(x1, (i2 + 0.5) * h2);
      const double c = coeffs_.c(x1, x2);
      if (!(c >= 0.0) || !std::isfinite(c))
        throw DomainError("reaction coefficient c(" + std::to_string(x1) + ", " +
                          std::to_string(x2) + ") = " + std::to_string(c) + " is negative");
      west_[n] = aw * s1;
      east_[n] = ae * s1;
      south_[n] = as * s2;
      north_[n] = an * s2;
      diag_[n] = (aw + ae) * s1 + (as + an) * s2 + c;
    }
  }
}

GridFunction EllipticOperator::apply(const GridFunction &u) const {
  if (!(u.grid() == grid_))
    throw DimensionError("operand does not live on the operator grid");
  GridFunction out(grid_);
  const int m1 = grid_.interior1();
  const int m2 = grid_.interior2();
  const auto in = u.values();
  auto res = out.values();
  const std::size_t stride = static_cast<std::size_t>(m2);
  for (int i1 = 1; i1 <= m1; ++i1) {
    for (int i2 = 1; i2 <= m2; ++i2) {
      const std::size_t n = grid_.index(i1, i2);
      double v = diag_[n] * in[n];
      if (i1 > 1)
        v -= west_[n] * in[n - stride];
      if (i1 < m1)
        v -= east_[n] * in[n + stride];
      if (i2 > 1)
        v -= south_[n] * in[n - 1];
      if (i2 < m2)
        v -= north_[n] * in[n + 1];
      res[n] = v;
    }
  }
  return out;
}

GridFunction EllipticOperator::apply_power(const GridFunction &u, int p) const {
  if (p < 0)
    throw DomainError("operator power must be nonnegative, got " + std::to_string(p));
  GridFunction v = u;
  for (int i = 0; i < p; ++i)
    v = apply(v);
  return v;
}

Eigen::MatrixXd EllipticOperator::assemble_dense(std::size_t cap) const {
  const std::size_t k = grid_.size();
  if (k > cap)
    throw CapacityError("dense assembly needs K=" + std::to_string(k) +
                        " unknowns, cap is " + std::to_string(cap));
  const auto kk = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(kk, kk);
  const int m1 = grid_.interior1();
  const int m2 = grid_.interior2();
  const auto stride = static_cast<Eigen::Index>(m2);
  for (int i1 = 1; i1 <= m1; ++i1) {
    for (int i2 = 1; i2 <= m2; ++i2) {
      const auto n = static_cast<Eigen::Index>(grid_.index(i1, i2));
      m(n, n) = diag_[n];
      // Each edge is written once from its lower-index end so that the
      // matrix is symmetric bit for bit.
      if (i1 < m1) {
        m(n, n + stride) = -east_[n];
        m(n + stride, n) = -east_[n];
      }
      if (i2 < m2) {
        m(n, n + 1) = -north_[n];
        m(n + 1, n) = -north_[n];
      }
    }
  }
  return m;
}

} // namespace fracpow
