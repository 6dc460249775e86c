#include "fracpow/elliptic_operator.hpp"
#include "fracpow/errors.hpp"
#include "fracpow/fracsolve.hpp"
#include "oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>

using namespace fracpow;

namespace {

GridFunction first_mode(const SpectralBasis &b) { return b.eigenvector(0); }

double rel_diff(const GridFunction &u, const GridFunction &w) {
  return oracle::max_abs_diff(u, w) / oracle::max_abs(w);
}

} // namespace

TEST_CASE("kappa values") {
  const auto basis = SpectralBasis::analytic(Grid2D::unit_square(2));
  const double mu = basis.mu_min();
  CHECK(kappa_of(basis, mu)[0] == 0.0);
  CHECK(kappa_of(basis, mu / 2)[0] == doctest::Approx(1.0).epsilon(1e-15));
  const auto b8 = SpectralBasis::analytic(Grid2D::unit_square(8));
  const auto k = kappa_of(b8, b8.mu_min());
  CHECK(k.front() == 0.0);
  CHECK(k.back() == doctest::Approx(b8.mu_max() / b8.mu_min() - 1.0));
}

TEST_CASE("lowest eigenmode is reproduced exactly for every m") {
  const auto basis = SpectralBasis::analytic(Grid2D::unit_square(16));
  const auto psi = first_mode(basis);
  for (int m : {1, 2, 7, 25, 100})
    for (double a : {0.1, 0.5, 0.9})
      for (int p : {0, 1, 3}) {
        const SolverConfig cfg{a, p, m, {}};
        const auto u = solve_spectral(cfg, basis, psi);
        GridFunction expect = psi;
        for (auto &v : expect.values())
          v *= std::pow(basis.mu_min(), -a);
        CHECK(rel_diff(u, expect) < 1e-13);
        const auto rep = solution_report(cfg, basis, psi);
        CHECK(rep.eps2 < 1e-26);
        CHECK(rep.epsinf < 1e-13);
      }
}

TEST_CASE("one-node rule with delta = mu_1 / 2") {
  const auto basis = SpectralBasis::analytic(Grid2D::unit_square(8));
  const double mu = basis.mu_min();
  const double delta = mu / 2;
  const auto psi = first_mode(basis);
  for (int p : {0, 2}) {
    const double a = 0.3, beta = a + p;
    const auto u = solve_spectral(SolverConfig{a, p, 1, delta}, basis, psi);
    // kappa = 1, single node at beta: S_1 = Gamma(beta) e^{-beta}
    const double scale = std::pow(mu, p) * std::exp(-beta) / std::pow(delta, beta);
    GridFunction expect = psi;
    for (auto &v : expect.values())
      v *= scale;
    CHECK(rel_diff(u, expect) < 1e-13);
  }
}

TEST_CASE("snapshot, spectral and propagator forms agree") {
  const auto basis = SpectralBasis::analytic(Grid2D::unit_square(16));
  const auto b = rhs_f2(basis.grid());
  for (int p : {0, 1, 2}) {
    const SolverConfig cfg{0.5, p, 25, {}};
    const auto us = solve_spectral(cfg, basis, b);
    const auto un = solve_snapshot(cfg, basis, b);
    CHECK(rel_diff(un, us) < 1e-10);

    const auto c = basis.apply_function(b, [p](double mu) { return std::pow(mu, p); });
    const Propagator prop = [&](const GridFunction &v, double t) {
      return basis.apply_semigroup(v, t);
    };
    const auto up = solve_with_propagator(cfg, basis.mu_min(), prop, c);
    CHECK(rel_diff(up, us) < 1e-10);
  }
}

TEST_CASE("propagator path with a dense basis and variable coefficients") {
  const Grid2D g = Grid2D::unit_square(8);
  const EllipticOperator op(g, CoefficientField::variable(
                                   [](double x, double y) { return 1.0 + x * y; },
                                   [](double x, double) { return x; }));
  const auto basis = SpectralBasis::dense(op);
  const auto b = rhs_f1(g);
  const SolverConfig cfg{0.25, 1, 60, {}};
  const auto us = solve_spectral(cfg, basis, b);
  const Propagator prop = [&](const GridFunction &v, double t) {
    return basis.apply_semigroup(v, t);
  };
  const auto up = solve_with_propagator(cfg, basis.mu_min(), prop, op.apply(b));
  CHECK(rel_diff(up, us) < 1e-10);
  const auto exact = basis.exact_fractional_inverse(b, 0.25);
  CHECK(rel_diff(us, exact) < 1e-2);
}

TEST_CASE("quadrature mapping") {
  const auto rule = build_rule(10, 1.5);
  const auto q = QuadratureMapping::from_rule(rule, 4.0);
  REQUIRE(q.theta.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(q.theta[i] == doctest::Approx(rule.nodes()[i] / 4.0));
    const double g = rule.weights()[i] * std::exp(rule.nodes()[i]) /
                     (std::pow(4.0, 1.5) * std::tgamma(1.5));
    CHECK(q.gamma[i] == doctest::Approx(g).epsilon(1e-12));
    CHECK(q.log_gamma[i] == doctest::Approx(std::log(g)).epsilon(1e-12));
  }
}

TEST_CASE("error decreases with m and is insensitive to p") {
  const auto basis = SpectralBasis::analytic(Grid2D::unit_square(32));
  const auto b = rhs_f1(basis.grid());
  for (double a : {0.1, 0.5, 0.9}) {
    double prev = 1.0;
    for (int m : {25, 50, 100}) {
      const auto rep = solution_report(SolverConfig{a, 0, m, {}}, basis, b);
      CHECK(rep.eps2 < prev);
      CHECK(rep.rel_l2 == doctest::Approx(std::sqrt(rep.eps2)));
      prev = rep.eps2;
    }
    for (int p : {0, 1, 2})
      CHECK(solution_report(SolverConfig{a, p, 100, {}}, basis, b).eps2 < 1e-4);
  }
}

TEST_CASE("error is insensitive to the grid") {
  const auto coarse = SpectralBasis::analytic(Grid2D::unit_square(32));
  const auto fine = SpectralBasis::analytic(Grid2D::unit_square(64));
  const SolverConfig cfg{0.5, 0, 25, {}};
  const double ec = solution_report(cfg, coarse, rhs_f1(coarse.grid())).epsinf;
  const double ef = solution_report(cfg, fine, rhs_f1(fine.grid())).epsinf;
  CHECK(ef / ec < 1.5);
  CHECK(ec / ef < 1.5);
}

TEST_CASE("report contents") {
  const auto basis = SpectralBasis::analytic(Grid2D::unit_square(16));
  const auto rep = solution_report(SolverConfig{0.5, 1, 25, {}}, basis, rhs_f2(basis.grid()));
  CHECK(rep.max_u > 0.0);
  CHECK(rep.max_u == doctest::Approx(oracle::max_abs(rep.approx)));
  CHECK(rep.delta == basis.mu_min());
  const auto y = rep.normalized();
  CHECK(oracle::max_abs(y) == doctest::Approx(1.0));
  const auto j = nlohmann::json::parse(rep.to_json());
  for (const char *key : {"alpha", "p", "m", "N1", "N2", "delta", "eps2", "rel_l2", "epsinf",
                          "max_u", "runtime_ms"})
    CHECK(j.contains(key));
  CHECK(j["m"] == 25);
  CHECK(j["N1"] == 16);
}

TEST_CASE("invalid solves") {
  const auto basis = SpectralBasis::analytic(Grid2D::unit_square(8));
  const auto b = rhs_f1(basis.grid());
  CHECK_THROWS_AS(solution_report(SolverConfig{0.5, 0, 10, {}}, basis,
                                  make_rhs(basis.grid(), Rhs::zero)),
                  DomainError);
  CHECK_THROWS_AS(solve_spectral(SolverConfig{0.5, 0, 10, basis.mu_min() * 1.01}, basis, b),
                  DomainError);
  CHECK_THROWS_AS(solve_spectral(SolverConfig{0.5, 0, 10, -1.0}, basis, b), DomainError);
  CHECK_THROWS_AS(solve_spectral(SolverConfig{1.0, 0, 10, {}}, basis, b), DomainError);
  CHECK_THROWS_AS(solve_spectral(SolverConfig{0.0, 0, 10, {}}, basis, b), DomainError);
  CHECK_THROWS_AS(solve_spectral(SolverConfig{0.5, -1, 10, {}}, basis, b), DomainError);
  CHECK_THROWS_AS(solve_spectral(SolverConfig{0.5, 0, 0, {}}, basis, b), DomainError);
  const auto other = rhs_f1(Grid2D::unit_square(9));
  CHECK_THROWS_AS(solve_spectral(SolverConfig{}, basis, other), DimensionError);
  // Tiny delta with many nodes pushes gamma past the double range.
  const Propagator prop = [&](const GridFunction &v, double t) {
    return basis.apply_semigroup(v, t);
  };
  CHECK_THROWS_AS(solve_with_propagator(SolverConfig{0.5, 0, 400, {}}, 1e-300, prop, b),
                  NumericError);
}
