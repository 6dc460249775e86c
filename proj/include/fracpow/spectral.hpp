#pragma once

#include "fracpow/elliptic_operator.hpp"
#include "fracpow/grid.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace fracpow {

inline constexpr std::size_t kMaxAnalyticUnknowns = std::size_t{1} << 24;

enum class BasisMode { analytic_sine, dense_eigen };

namespace detail {
struct BasisData;
}

class SpectralBasis;

/// Expansion coefficients (u, psi_k), ordered like SpectralBasis::eigenvalues().
class SpectralCoefficients {
public:
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double &operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

private:
  friend class SpectralBasis;
  SpectralCoefficients(std::shared_ptr<const detail::BasisData> basis, std::vector<double> v)
      : basis_(std::move(basis)), values_(std::move(v)) {}

  std::shared_ptr<const detail::BasisData> basis_;
  std::vector<double> values_;
};

/// Eigenpairs (mu_k, psi_k) of the discrete operator, eigenvalues ascending and
/// eigenvectors orthonormal in the discrete inner product.
///
/// The analytic mode covers constant coefficients on any rectangle and never
/// stores eigenvectors: transforms are separable sine sums applied per axis.
/// Ties between equal eigenvalues keep (k1, k2) lexicographic order. The dense
/// mode diagonalises the assembled matrix and is limited to small K.
class SpectralBasis {
public:
  static SpectralBasis analytic(const Grid2D &grid, double a0 = 1.0, double c0 = 0.0);
  static SpectralBasis dense(const EllipticOperator &op, std::size_t cap = kDefaultDenseCap);
  /// Analytic when the operator has constant coefficients, dense otherwise.
  static SpectralBasis for_operator(const EllipticOperator &op,
                                    std::size_t cap = kDefaultDenseCap);

  const Grid2D &grid() const;
  BasisMode mode() const;
  std::size_t size() const;
  std::span<const double> eigenvalues() const;
  double mu_min() const { return eigenvalues().front(); }
  double mu_max() const { return eigenvalues().back(); }

  /// psi_k as a grid function, k in [0, size()).
  GridFunction eigenvector(std::size_t k) const;
  /// Wave numbers (k1, k2) of mode k; analytic mode only.
  std::pair<int, int> wave_numbers(std::size_t k) const;

  SpectralCoefficients forward(const GridFunction &u) const;
  GridFunction inverse(const SpectralCoefficients &coeffs) const;
  SpectralCoefficients zero_coefficients() const;

  /// sum_k f(mu_k) (u, psi_k) psi_k
  GridFunction apply_function(const GridFunction &u,
                              const std::function<double(double)> &f) const;

  /// exp(-t A) u, exact through the expansion.
  GridFunction apply_semigroup(const GridFunction &u, double t) const;
  /// A^{-alpha} b for 0 < alpha < 1.
  GridFunction exact_fractional_inverse(const GridFunction &b, double alpha) const;

private:
  explicit SpectralBasis(std::shared_ptr<const detail::BasisData> d) : d_(std::move(d)) {}
  void check(const GridFunction &u) const;
  void check(const SpectralCoefficients &c) const;

  std::shared_ptr<const detail::BasisData> d_;
};

} // namespace fracpow
