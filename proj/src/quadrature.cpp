#include "fracpow/quadrature.hpp"

#include "fracpow/errors.hpp"
#include "fracpow/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracpow {

std::pair<double, double> laguerre(int n, double a, double x) {
  if (n < 0)
    throw DomainError("Laguerre degree must be nonnegative");
  if (n == 0)
    return {1.0, 0.0};
  double prev = 1.0;
  double cur = 1.0 + a - x;
  double dprev = 0.0;
  double dcur = -1.0;
  for (int k = 1; k < n; ++k) {
    // (k+1) L_{k+1} = (2k+1+a-x) L_k - (k+a) L_{k-1}
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    const double dnext = ((2.0 * k + 1.0 + a - x) * dcur - cur - (k + a) * dprev) / (k + 1.0);
    prev = cur;
    cur = next;
    dprev = dcur;
    dcur = dnext;
  }
  return {cur, dcur};
}

namespace {

// Newton refinement kept inside the bracket formed by the neighbouring
// eigenvalue estimates; anything that escapes falls back to the estimate.
void polish_nodes(std::vector<double> &x, int m, double a) {
  const std::vector<double> seed = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lo = i == 0 ? 0.0 : 0.5 * (seed[i - 1] + seed[i]);
    const double hi = i + 1 == x.size() ? 2.0 * seed[i] + 1.0 : 0.5 * (seed[i] + seed[i + 1]);
    double xi = seed[i];
    bool ok = true;
    for (int it = 0; it < 10; ++it) {
      const auto [v, dv] = laguerre(m, a, xi);
      if (dv == 0.0 || !std::isfinite(v) || !std::isfinite(dv)) {
        ok = false;
        break;
      }
      const double step = v / dv;
      xi -= step;
      if (!(xi > lo && xi < hi)) {
        ok = false;
        break;
      }
      if (std::abs(step) <= 1e-13 * xi)
        break;
    }
    if (ok)
      x[i] = xi;
  }
}

} // namespace

LaguerreRule build_rule(int m, double beta, bool polish) {
  if (m < 1)
    throw DomainError("quadrature needs at least one node, got m=" + std::to_string(m));
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw DomainError("weight exponent beta must be positive, got " + std::to_string(beta));

  const auto n = static_cast<std::size_t>(m);
  std::vector<double> diag(n);
  std::vector<double> off(n - 1);
  for (std::size_t j = 0; j < n; ++j)
    diag[j] = 2.0 * static_cast<double>(j) + beta;
  for (std::size_t j = 1; j < n; ++j)
    off[j - 1] = std::sqrt(static_cast<double>(j) * (static_cast<double>(j) + beta - 1.0));

  const TridiagonalEigen eig = symmetric_tridiagonal_eigen(diag, off, true);
  const double mass = std::tgamma(beta);
  std::vector<double> x = eig.values;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v0 = eig.vector(0, i);
    w[i] = mass * v0 * v0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || (i > 0 && !(x[i] > x[i - 1])) || !(w[i] > 0.0))
      throw NumericError("Golub-Welsch produced an invalid rule for m=" + std::to_string(m) +
                         ", beta=" + std::to_string(beta));
  }
  if (polish)
    polish_nodes(x, m, beta - 1.0);
  return LaguerreRule(beta, std::move(x), std::move(w));
}

double s_exact(double beta, double kappa) {
  if (!(beta > 0.0))
    throw DomainError("beta must be positive, got " + std::to_string(beta));
  if (!(kappa >= 0.0))
    throw DomainError("kappa must be nonnegative, got " + std::to_string(kappa));
  return std::tgamma(beta) * std::exp(-beta * std::log1p(kappa));
}

double s_quad(const LaguerreRule &rule, double kappa) {
  if (!(kappa >= 0.0))
    throw DomainError("kappa must be nonnegative, got " + std::to_string(kappa));
  const auto x = rule.nodes();
  const auto w = rule.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    s += w[i] * std::exp(-kappa * x[i]);
  return s;
}

std::vector<double> KappaSampling::points() const {
  if (!(min >= 0.0) || !(max > min) || count < 2)
    throw DomainError("kappa sampling needs 0 <= min < max and at least 2 points");
  std::vector<double> k;
  double lo = min;
  if (min == 0.0) {
    k.push_back(0.0);
    lo = std::min(1e-3, max / 10.0);
  }
  const double a = std::log10(lo);
  const double b = std::log10(max);
  for (int i = 0; i < count; ++i)
    k.push_back(std::pow(10.0, a + (b - a) * i / (count - 1)));
  k.back() = max;
  if (min > 0.0)
    k.front() = min;
  return k;
}

QuadErrorResult quad_error_study(int m, double alpha, int p, const KappaSampling &kappa) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  if (p < 0)
    throw DomainError("p must be nonnegative, got " + std::to_string(p));
  const double beta = alpha + p;
  const LaguerreRule rule = build_rule(m, beta);
  QuadErrorResult r;
  double worst = -1.0;
  for (double k : kappa.points()) {
    const double exact = s_exact(beta, k);
    const double err = std::abs(exact - s_quad(rule, k));
    r.q = std::max(r.q, exact);
    if (err > worst) {
      worst = err;
      r.kappa_at_max = k;
    }
  }
  r.epsilon = worst / r.q;
  return r;
}

} // namespace fracpow
