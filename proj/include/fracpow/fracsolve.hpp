#pragma once

#include "fracpow/grid.hpp"
#include "fracpow/quadrature.hpp"
#include "fracpow/spectral.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fracpow {

/// Parameters of the quadrature approximation to u = A^{-alpha} b.
struct SolverConfig {
  double alpha = 0.5;
  int p = 0;                        // shift: integrate theta^(alpha+p-1) against A^p b
  int m = 25;                       // quadrature nodes
  std::optional<double> delta;      // lower spectral bound, defaults to mu_1

  /// Throws DomainError unless 0 < alpha < 1, p >= 0, m >= 1 and
  /// 0 < delta <= mu_1 of `basis`.
  void validate(const SpectralBasis &basis) const;
  double resolved_delta(const SpectralBasis &basis) const;
};

/// Semigroup evaluation times theta_i = xi_i / delta and solution weights
/// gamma_i = sigma_i e^{xi_i} / (delta^(alpha+p) Gamma(alpha+p)).
struct QuadratureMapping {
  std::vector<double> theta;
  std::vector<double> gamma;
  std::vector<double> log_gamma;

  static QuadratureMapping from_rule(const LaguerreRule &rule, double delta);
};

/// kappa_k = mu_k / delta - 1.
std::vector<double> kappa_of(const SpectralBasis &basis, double delta);

/// Coefficient-space evaluation: each mode is scaled by
/// mu_k^p S_m(alpha+p, kappa_k) / (delta^(alpha+p) Gamma(alpha+p)).
GridFunction solve_spectral(const SolverConfig &config, const SpectralBasis &basis,
                            const GridFunction &b);

/// The same sum taken snapshot by snapshot: u_m = sum_i gamma_i w(theta_i) with
/// w(t) = exp(-tA) A^p b. The factor e^{xi_i} is folded into each snapshot as
/// e^{-kappa_k xi_i} per mode so it is never formed on its own.
GridFunction solve_snapshot(const SolverConfig &config, const SpectralBasis &basis,
                            const GridFunction &b);

/// w(t) = exp(-tA) c for an externally supplied propagator.
using Propagator = std::function<GridFunction(const GridFunction &c, double t)>;

/// Snapshot form against a black-box propagator. `c` must already be A^p b.
/// gamma_i is formed in log space; throws NumericError if it overflows.
GridFunction solve_with_propagator(const SolverConfig &config, double delta,
                                   const Propagator &propagate, const GridFunction &c);

struct SolveReport {
  SolverConfig config;
  Grid2D grid;
  double delta = 0.0;
  GridFunction approx;
  GridFunction exact;
  double eps2 = 0.0;    // (||u_m - u|| / ||u||)^2, the tabulated L2 measure
  double rel_l2 = 0.0;  // ||u_m - u|| / ||u||
  double epsinf = 0.0;  // ||u_m - u||_inf / ||u||_inf
  double max_u = 0.0;   // max of the approximate solution
  double runtime_ms = 0.0;

  /// y = u_m / max u_m
  GridFunction normalized() const;
  /// {alpha, p, m, N1, N2, delta, eps2, rel_l2, epsinf, max_u, runtime_ms}
  std::string to_json() const;
};

/// Approximate solution, exact spectral reference A^{-alpha} b and the errors
/// between them. Throws DomainError when the exact solution vanishes.
SolveReport solution_report(const SolverConfig &config, const SpectralBasis &basis,
                            const GridFunction &b);

} // namespace fracpow
