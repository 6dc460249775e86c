#include "fracpow/spectral.hpp"

#include "fracpow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace fracpow {

namespace detail {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct BasisData {
  Grid2D grid;
  BasisMode mode;
  std::vector<double> mu; // ascending

  // analytic_sine
  Eigen::MatrixXd sine1; // (N1-1)x(N1-1), row k-1: sqrt(2/l1) sin(k pi i/N1)
  Eigen::MatrixXd sine2;
  std::vector<std::size_t> order; // sorted position -> flat (k1,k2) index, k2 fastest

  // dense_eigen
  Eigen::MatrixXd vectors; // columns scaled to unit discrete norm
};

} // namespace detail

namespace {

using detail::BasisData;
using detail::RowMatrix;

// Eigenvalues of the 1D three-point operator -u'' with Dirichlet ends.
std::vector<double> axis_eigenvalues(int n, double h) {
  std::vector<double> lam(static_cast<std::size_t>(n - 1));
  for (int k = 1; k < n; ++k) {
    const double s = std::sin(k * std::numbers::pi / (2.0 * n));
    lam[static_cast<std::size_t>(k - 1)] = 4.0 / (h * h) * s * s;
  }
  return lam;
}

Eigen::MatrixXd sine_matrix(int n, double l) {
  const Eigen::Index m = n - 1;
  Eigen::MatrixXd s(m, m);
  const double scale = std::sqrt(2.0 / l);
  for (Eigen::Index k = 1; k <= m; ++k)
    for (Eigen::Index i = 1; i <= m; ++i)
      s(k - 1, i - 1) = scale * std::sin(std::numbers::pi * static_cast<double>(k * i) / n);
  return s;
}

} // namespace

SpectralBasis SpectralBasis::analytic(const Grid2D &grid, double a0, double c0) {
  if (!(a0 > 0.0) || !(c0 >= 0.0))
    throw DomainError("analytic basis needs a0 > 0 and c0 >= 0");
  if (grid.size() > kMaxAnalyticUnknowns)
    throw CapacityError("grid has " + std::to_string(grid.size()) + " unknowns, limit is " +
                        std::to_string(kMaxAnalyticUnknowns));
  auto d = std::make_shared<BasisData>(BasisData{grid, BasisMode::analytic_sine, {}, {}, {}, {}, {}});
  const auto lam1 = axis_eigenvalues(grid.n1(), grid.h1());
  const auto lam2 = axis_eigenvalues(grid.n2(), grid.h2());
  const std::size_t m2 = lam2.size();
  std::vector<double> flat(grid.size());
  for (std::size_t k1 = 0; k1 < lam1.size(); ++k1)
    for (std::size_t k2 = 0; k2 < m2; ++k2)
      flat[k1 * m2 + k2] = a0 * (lam1[k1] + lam2[k2]) + c0;

  d->order.resize(flat.size());
  std::iota(d->order.begin(), d->order.end(), std::size_t{0});
  std::stable_sort(d->order.begin(), d->order.end(),
                   [&](std::size_t a, std::size_t b) { return flat[a] < flat[b]; });
  d->mu.resize(flat.size());
  for (std::size_t k = 0; k < flat.size(); ++k)
    d->mu[k] = flat[d->order[k]];

  d->sine1 = sine_matrix(grid.n1(), grid.l1());
  d->sine2 = sine_matrix(grid.n2(), grid.l2());
  return SpectralBasis(std::move(d));
}

SpectralBasis SpectralBasis::dense(const EllipticOperator &op, std::size_t cap) {
  const Eigen::MatrixXd m = op.assemble_dense(cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw NumericError("dense symmetric eigensolve did not converge");
  const Grid2D &grid = op.grid();
  auto d = std::make_shared<BasisData>(BasisData{grid, BasisMode::dense_eigen, {}, {}, {}, {}, {}});
  const auto &ev = solver.eigenvalues();
  d->mu.assign(ev.data(), ev.data() + ev.size());
  if (!(d->mu.front() > 0.0))
    throw NumericError("operator is not positive definite (smallest eigenvalue " +
                       std::to_string(d->mu.front()) + ")");
  d->vectors = solver.eigenvectors() / std::sqrt(grid.h1() * grid.h2());
  return SpectralBasis(std::move(d));
}

SpectralBasis SpectralBasis::for_operator(const EllipticOperator &op, std::size_t cap) {
  const auto &cf = op.coefficients();
  if (cf.constant_a() && cf.constant_c())
    return analytic(op.grid(), *cf.constant_a(), *cf.constant_c());
  return dense(op, cap);
}

const Grid2D &SpectralBasis::grid() const { return d_->grid; }
BasisMode SpectralBasis::mode() const { return d_->mode; }
std::size_t SpectralBasis::size() const { return d_->mu.size(); }
std::span<const double> SpectralBasis::eigenvalues() const { return d_->mu; }

std::pair<int, int> SpectralBasis::wave_numbers(std::size_t k) const {
  if (d_->mode != BasisMode::analytic_sine)
    throw DomainError("wave numbers exist only for the analytic sine basis");
  const std::size_t m2 = static_cast<std::size_t>(d_->grid.interior2());
  const std::size_t flat = d_->order.at(k);
  return {static_cast<int>(flat / m2) + 1, static_cast<int>(flat % m2) + 1};
}

GridFunction SpectralBasis::eigenvector(std::size_t k) const {
  if (k >= size())
    throw DimensionError("eigenvector index out of range");
  SpectralCoefficients c = zero_coefficients();
  c[k] = 1.0;
  return inverse(c);
}

void SpectralBasis::check(const GridFunction &u) const {
  if (!(u.grid() == d_->grid))
    throw DimensionError("grid function does not live on the basis grid");
}

void SpectralBasis::check(const SpectralCoefficients &c) const {
  if (c.basis_ != d_)
    throw DimensionError("coefficients belong to a different spectral basis");
}

SpectralCoefficients SpectralBasis::zero_coefficients() const {
  return SpectralCoefficients(d_, std::vector<double>(size(), 0.0));
}

SpectralCoefficients SpectralBasis::forward(const GridFunction &u) const {
  check(u);
  const Grid2D &g = d_->grid;
  const double cell = g.h1() * g.h2();
  std::vector<double> out(size());
  if (d_->mode == BasisMode::analytic_sine) {
    const Eigen::Map<const RowMatrix> values(u.values().data(), g.interior1(), g.interior2());
    const RowMatrix flat = cell * (d_->sine1 * values * d_->sine2.transpose());
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] = flat.data()[d_->order[k]];
  } else {
    const Eigen::Map<const Eigen::VectorXd> values(u.values().data(),
                                                   static_cast<Eigen::Index>(u.size()));
    Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size())) =
        cell * (d_->vectors.transpose() * values);
  }
  return SpectralCoefficients(d_, std::move(out));
}

GridFunction SpectralBasis::inverse(const SpectralCoefficients &coeffs) const {
  check(coeffs);
  const Grid2D &g = d_->grid;
  GridFunction u(g);
  if (d_->mode == BasisMode::analytic_sine) {
    RowMatrix flat(g.interior1(), g.interior2());
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      flat.data()[d_->order[k]] = coeffs[k];
    Eigen::Map<RowMatrix>(u.values().data(), g.interior1(), g.interior2()) =
        d_->sine1.transpose() * flat * d_->sine2;
  } else {
    const Eigen::Map<const Eigen::VectorXd> c(coeffs.values().data(),
                                              static_cast<Eigen::Index>(coeffs.size()));
    Eigen::Map<Eigen::VectorXd>(u.values().data(), static_cast<Eigen::Index>(u.size())) =
        d_->vectors * c;
  }
  return u;
}

GridFunction SpectralBasis::apply_function(const GridFunction &u,
                                           const std::function<double(double)> &f) const {
  SpectralCoefficients c = forward(u);
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] *= f(d_->mu[k]);
  return inverse(c);
}

GridFunction SpectralBasis::apply_semigroup(const GridFunction &u, double t) const {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw DomainError("semigroup time must be nonnegative, got " + std::to_string(t));
  return apply_function(u, [t](double mu) { return std::exp(-mu * t); });
}

GridFunction SpectralBasis::exact_fractional_inverse(const GridFunction &b, double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("fractional power must lie in (0, 1), got " + std::to_string(alpha));
  return apply_function(b, [alpha](double mu) { return std::pow(mu, -alpha); });
}

} // namespace fracpow
