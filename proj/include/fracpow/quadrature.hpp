#pragma once

#include <span>
#include <utility>
#include <vector>

namespace fracpow {

/// m-point Gauss rule for the weight xi^(beta-1) e^(-xi) on (0, inf).
class LaguerreRule {
public:
  int size() const { return static_cast<int>(nodes_.size()); }
  double beta() const { return beta_; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

private:
  friend LaguerreRule build_rule(int m, double beta, bool polish);
  LaguerreRule(double beta, std::vector<double> x, std::vector<double> w)
      : beta_(beta), nodes_(std::move(x)), weights_(std::move(w)) {}

  double beta_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Golub-Welsch construction from the Jacobi matrix of the generalized
/// Laguerre recurrence; with `polish` the nodes are refined by Newton steps on
/// L_m^(beta-1) evaluated by its three-term recurrence.
LaguerreRule build_rule(int m, double beta, bool polish = true);

/// L_n^(a)(x) and its derivative, by the three-term recurrence.
std::pair<double, double> laguerre(int n, double a, double x);

/// S(beta, kappa) = int_0^inf xi^(beta-1) e^(-xi) e^(-kappa xi) dxi
///               = Gamma(beta) (1 + kappa)^(-beta)
double s_exact(double beta, double kappa);

/// sum_i sigma_i e^(-kappa xi_i)
double s_quad(const LaguerreRule &rule, double kappa);

/// Sample set for the kappa sweep. With min > 0 it is `count` log-spaced
/// points from min to max inclusive; with min == 0 it is {0} plus `count`
/// log-spaced points from 1e-3 to max.
struct KappaSampling {
  double min = 1.0;
  double max = 1.0e5;
  int count = 2000;

  std::vector<double> points() const;
};

struct QuadErrorResult {
  double epsilon = 0.0;   // max |S - S_m| / q
  double q = 0.0;         // max S over the samples
  double kappa_at_max = 0.0;
};

/// Relative error of the m-point rule for S(alpha + p, kappa) over the
/// sample set, normalised by the largest value of S on the same set.
QuadErrorResult quad_error_study(int m, double alpha, int p, const KappaSampling &kappa = {});

} // namespace fracpow
