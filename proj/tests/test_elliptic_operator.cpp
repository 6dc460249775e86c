#include "fracpow/elliptic_operator.hpp"
#include "fracpow/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace fracpow;

TEST_CASE("single interior node") {
  const Grid2D g = Grid2D::unit_square(2);
  const EllipticOperator op(g, CoefficientField::constant());
  const GridFunction u(g, {1.0});
  CHECK(op.apply(u)[0] == 16.0);
  CHECK(op.apply_power(u, 0)[0] == 1.0);
  CHECK(op.apply_power(u, 1)[0] == 16.0);
  CHECK(op.apply_power(u, 2)[0] == 256.0);
  CHECK(op.assemble_dense()(0, 0) == 16.0);
  CHECK_THROWS_AS(op.apply_power(u, -1), DomainError);
}

TEST_CASE("sine modes are eigenvectors of the constant-coefficient operator") {
  const Grid2D g = Grid2D::unit_square(8);
  const EllipticOperator op(g, CoefficientField::constant());
  for (int k1 = 1; k1 < 8; ++k1)
    for (int k2 = 1; k2 < 8; ++k2) {
      const auto psi = oracle::sine_mode(g, k1, k2);
      const double mu = oracle::sine_eigenvalue(g, k1, k2);
      const auto a = op.apply(psi);
      for (std::size_t n = 0; n < a.size(); ++n)
        CHECK(std::abs(a[n] - mu * psi[n]) <= 1e-9 * mu * oracle::max_abs(psi));
    }
}

TEST_CASE("constant reaction term shifts by gamma u") {
  const Grid2D g(7, 5, 1.0, 0.8);
  const EllipticOperator base(g, CoefficientField::constant(1.0, 0.0));
  const EllipticOperator shifted(g, CoefficientField::constant(1.0, 2.5));
  const auto u = oracle::random_field(g, 3);
  const auto a = base.apply(u);
  const auto b = shifted.apply(u);
  for (std::size_t n = 0; n < u.size(); ++n)
    CHECK(b[n] == doctest::Approx(a[n] + 2.5 * u[n]).epsilon(1e-15));
}

namespace {

CoefficientField bumpy() {
  return CoefficientField::variable(
      [](double x1, double x2) { return 1.0 + 0.5 * std::sin(3.0 * x1) * std::cos(2.0 * x2); },
      [](double x1, double x2) { return x1 * x2; });
}

} // namespace

TEST_CASE("operator is symmetric for variable coefficients") {
  for (int n : {4, 8, 16}) {
    const Grid2D g(n, n, 1.0, 1.0);
    const EllipticOperator op(g, bumpy());
    for (unsigned s = 0; s < 100; ++s) {
      const auto u = oracle::random_field(g, s);
      const auto w = oracle::random_field(g, 1000 + s);
      const auto au = op.apply(u);
      const auto aw = op.apply(w);
      const double lhs = oracle::dot(au, w);
      const double rhs = oracle::dot(u, aw);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::sqrt(oracle::dot(au, au)) *
                                       std::sqrt(oracle::dot(w, w)));
      CHECK(oracle::dot(au, u) > 0.0);
    }
  }
}

TEST_CASE("dense assembly matches apply and is SPD") {
  const Grid2D g(8, 8);
  const EllipticOperator op(g, bumpy());
  const Eigen::MatrixXd m = op.assemble_dense();
  CHECK(m == m.transpose());
  const auto u = oracle::random_field(g, 9);
  const Eigen::VectorXd mu =
      m * Eigen::Map<const Eigen::VectorXd>(u.values().data(), static_cast<Eigen::Index>(u.size()));
  const auto au = op.apply(u);
  for (std::size_t n = 0; n < u.size(); ++n)
    CHECK(mu[static_cast<Eigen::Index>(n)] == doctest::Approx(au[n]).epsilon(1e-13));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  CHECK_THROWS_AS(op.assemble_dense(10), CapacityError);
}

TEST_CASE("dense eigenvalues at N=8 match the sine formula") {
  const Grid2D g = Grid2D::unit_square(8);
  const EllipticOperator op(g, CoefficientField::constant());
  const Eigen::MatrixXd m = op.assemble_dense();
  // Structural: interior rows of the Laplacian sum to zero, corner rows keep
  // two boundary couplings.
  CHECK(m.row(static_cast<Eigen::Index>(g.index(4, 4))).sum() == doctest::Approx(0.0));
  CHECK(m.row(0).sum() == doctest::Approx(2.0 * 64.0));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> expect;
  for (int k1 = 1; k1 < 8; ++k1)
    for (int k2 = 1; k2 < 8; ++k2)
      expect.push_back(oracle::sine_eigenvalue(g, k1, k2));
  std::sort(expect.begin(), expect.end());
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(es.eigenvalues()[static_cast<Eigen::Index>(i)] ==
          doctest::Approx(expect[i]).epsilon(1e-9));
}

TEST_CASE("second-order truncation error") {
  // u = sin(pi x1) sin(pi x2) has -Laplace u = 2 pi^2 u.
  std::vector<double> errs;
  for (int n : {16, 32, 64}) {
    const Grid2D g = Grid2D::unit_square(n);
    const EllipticOperator op(g, CoefficientField::constant());
    const auto u = GridFunction::sample(g, [](double x1, double x2) {
      return std::sin(std::numbers::pi * x1) * std::sin(std::numbers::pi * x2);
    });
    const auto au = op.apply(u);
    double e = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k)
      e = std::max(e, std::abs(au[k] - 2.0 * std::numbers::pi * std::numbers::pi * u[k]));
    errs.push_back(e);
  }
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double order = std::log2(errs[i - 1] / errs[i]);
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
  }
}

TEST_CASE("coefficient validation") {
  const Grid2D g(4, 4);
  CHECK_THROWS_AS(CoefficientField::constant(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(CoefficientField::constant(1.0, -1.0), DomainError);
  auto neg_a = CoefficientField::variable([](double x1, double) { return x1 - 0.5; },
                                          [](double, double) { return 0.0; });
  CHECK_THROWS_AS(EllipticOperator(g, neg_a), DomainError);
  auto neg_c = CoefficientField::variable([](double, double) { return 1.0; },
                                          [](double, double x2) { return x2 - 0.5; });
  CHECK_THROWS_AS(EllipticOperator(g, neg_c), DomainError);
  const EllipticOperator op(g, CoefficientField::constant());
  CHECK_THROWS_AS(op.apply(GridFunction(Grid2D(5, 4))), DimensionError);
}
