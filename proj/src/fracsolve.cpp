#include "fracpow/fracsolve.hpp"

#include "fracpow/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace fracpow {

void SolverConfig::validate(const SpectralBasis &basis) const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("alpha must lie in the open interval (0, 1), got " + std::to_string(alpha));
  if (p < 0)
    throw DomainError("p must be a nonnegative integer, got " + std::to_string(p));
  if (m < 1)
    throw DomainError("m must be at least 1, got " + std::to_string(m));
  if (delta) {
    if (!(*delta > 0.0) || !std::isfinite(*delta))
      throw DomainError("delta must be positive, got " + std::to_string(*delta));
    if (*delta > basis.mu_min())
      throw DomainError("delta=" + std::to_string(*delta) +
                        " exceeds the smallest eigenvalue " + std::to_string(basis.mu_min()));
  }
}

double SolverConfig::resolved_delta(const SpectralBasis &basis) const {
  return delta.value_or(basis.mu_min());
}

QuadratureMapping QuadratureMapping::from_rule(const LaguerreRule &rule, double delta) {
  if (!(delta > 0.0))
    throw DomainError("delta must be positive");
  const double beta = rule.beta();
  const double log_scale = beta * std::log(delta) + std::lgamma(beta);
  QuadratureMapping q;
  const auto x = rule.nodes();
  const auto w = rule.weights();
  for (std::size_t i = 0; i < x.size(); ++i) {
    q.theta.push_back(x[i] / delta);
    q.log_gamma.push_back(std::log(w[i]) + x[i] - log_scale);
    q.gamma.push_back(std::exp(q.log_gamma.back()));
  }
  return q;
}

std::vector<double> kappa_of(const SpectralBasis &basis, double delta) {
  if (!(delta > 0.0) || delta > basis.mu_min())
    throw DomainError("delta must satisfy 0 < delta <= mu_1 = " + std::to_string(basis.mu_min()));
  std::vector<double> k;
  k.reserve(basis.size());
  for (double mu : basis.eigenvalues())
    k.push_back(mu / delta - 1.0);
  return k;
}

namespace {

// Per-mode factor mu_k^p / (delta^beta Gamma(beta)).
std::vector<double> shift_scale(const SpectralBasis &basis, int p, double delta, double beta) {
  const double norm = std::pow(delta, beta) * std::tgamma(beta);
  std::vector<double> s;
  s.reserve(basis.size());
  for (double mu : basis.eigenvalues())
    s.push_back(std::pow(mu, p) / norm);
  return s;
}

} // namespace

GridFunction solve_spectral(const SolverConfig &config, const SpectralBasis &basis,
                            const GridFunction &b) {
  config.validate(basis);
  const double delta = config.resolved_delta(basis);
  const double beta = config.alpha + config.p;
  const LaguerreRule rule = build_rule(config.m, beta);
  const auto kappa = kappa_of(basis, delta);
  const auto scale = shift_scale(basis, config.p, delta, beta);

  SpectralCoefficients c = basis.forward(b);
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] *= scale[k] * s_quad(rule, kappa[k]);
  return basis.inverse(c);
}

GridFunction solve_snapshot(const SolverConfig &config, const SpectralBasis &basis,
                            const GridFunction &b) {
  config.validate(basis);
  const double delta = config.resolved_delta(basis);
  const double beta = config.alpha + config.p;
  const LaguerreRule rule = build_rule(config.m, beta);
  const auto kappa = kappa_of(basis, delta);
  const double norm = std::pow(delta, beta) * std::tgamma(beta);

  // Coefficients of c = A^p b.
  SpectralCoefficients c = basis.forward(b);
  const auto mu = basis.eigenvalues();
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] *= std::pow(mu[k], config.p);

  GridFunction u(basis.grid());
  SpectralCoefficients snap = basis.zero_coefficients();
  const auto xi = rule.nodes();
  const auto sigma = rule.weights();
  for (std::size_t i = 0; i < xi.size(); ++i) {
    // e^{xi_i} w(theta_i), mode by mode as e^{-kappa_k xi_i}.
    for (std::size_t k = 0; k < c.size(); ++k)
      snap[k] = c[k] * std::exp(-kappa[k] * xi[i]);
    const GridFunction w = basis.inverse(snap);
    const double g = sigma[i] / norm;
    auto acc = u.values();
    const auto wv = w.values();
    for (std::size_t n = 0; n < acc.size(); ++n)
      acc[n] += g * wv[n];
  }
  return u;
}

GridFunction solve_with_propagator(const SolverConfig &config, double delta,
                                   const Propagator &propagate, const GridFunction &c) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0) || config.p < 0 || config.m < 1)
    throw DomainError("invalid solver configuration");
  const LaguerreRule rule = build_rule(config.m, config.alpha + config.p);
  const QuadratureMapping map = QuadratureMapping::from_rule(rule, delta);
  GridFunction u(c.grid());
  for (std::size_t i = 0; i < map.theta.size(); ++i) {
    if (!std::isfinite(map.gamma[i]))
      throw NumericError("quadrature weight e^{xi} overflows at node " + std::to_string(i) +
                         " (log gamma = " + std::to_string(map.log_gamma[i]) + ")");
    const GridFunction w = propagate(c, map.theta[i]);
    require_same_grid(u, w);
    auto acc = u.values();
    const auto wv = w.values();
    for (std::size_t n = 0; n < acc.size(); ++n)
      acc[n] += map.gamma[i] * wv[n];
  }
  return u;
}

GridFunction SolveReport::normalized() const {
  if (!(max_u > 0.0))
    throw DomainError("cannot normalise a solution whose maximum is not positive");
  GridFunction y = approx;
  for (double &v : y.values())
    v /= max_u;
  return y;
}

std::string SolveReport::to_json() const {
  nlohmann::ordered_json j;
  j["alpha"] = config.alpha;
  j["p"] = config.p;
  j["m"] = config.m;
  j["N1"] = grid.n1();
  j["N2"] = grid.n2();
  j["delta"] = delta;
  j["eps2"] = eps2;
  j["rel_l2"] = rel_l2;
  j["epsinf"] = epsinf;
  j["max_u"] = max_u;
  j["runtime_ms"] = runtime_ms;
  return j.dump(2);
}

SolveReport solution_report(const SolverConfig &config, const SpectralBasis &basis,
                            const GridFunction &b) {
  const auto start = std::chrono::steady_clock::now();
  GridFunction approx = solve_spectral(config, basis, b);
  GridFunction exact = basis.exact_fractional_inverse(b, config.alpha);
  const auto stop = std::chrono::steady_clock::now();

  const double exact_l2 = norm_l2(exact);
  const double exact_inf = norm_inf(exact);
  if (!(exact_l2 > 0.0) || !(exact_inf > 0.0))
    throw DomainError("exact solution is identically zero; relative errors are undefined");

  GridFunction diff = approx;
  {
    auto d = diff.values();
    const auto e = exact.values();
    for (std::size_t n = 0; n < d.size(); ++n)
      d[n] -= e[n];
  }
  const double rel = norm_l2(diff) / exact_l2;
  const auto av = approx.values();
  const double max_u = *std::max_element(av.begin(), av.end());

  SolveReport r{
      .config = config,
      .grid = basis.grid(),
      .delta = config.resolved_delta(basis),
      .approx = std::move(approx),
      .exact = std::move(exact),
      .eps2 = rel * rel,
      .rel_l2 = rel,
      .epsinf = norm_inf(diff) / exact_inf,
      .max_u = max_u,
      .runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count(),
  };
  return r;
}

} // namespace fracpow
