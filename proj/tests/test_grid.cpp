#include "fracpow/errors.hpp"
#include "fracpow/grid.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace fracpow;

TEST_CASE("grid geometry and indexing") {
  const Grid2D g(4, 3, 2.0, 1.5);
  CHECK(g.h1() == doctest::Approx(0.5));
  CHECK(g.h2() == doctest::Approx(0.5));
  CHECK(g.h1() * g.n1() == 2.0);
  CHECK(g.size() == 6);
  CHECK(g.index(1, 1) == 0);
  CHECK(g.index(1, 2) == 1);
  CHECK(g.index(2, 1) == 2);
  CHECK_THROWS_AS(Grid2D(1, 4), DomainError);
  CHECK_THROWS_AS(Grid2D(4, 4, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(GridFunction(g, std::vector<double>(5)), DimensionError);
}

TEST_CASE("inner product of the constant field") {
  for (int n : {2, 5, 16}) {
    const Grid2D g(n, n + 1, 1.0, 1.0);
    const auto one = GridFunction::sample(g, [](double, double) { return 1.0; });
    const double expect = double((n - 1) * n) / double(n * (n + 1));
    CHECK(inner_product(one, one) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("discrete sine modes are orthonormal") {
  const Grid2D g(8, 6, 1.0, 2.0);
  for (int a1 = 1; a1 < 8; a1 += 3)
    for (int a2 = 1; a2 < 6; a2 += 2)
      for (int b1 = 1; b1 < 8; b1 += 2)
        for (int b2 = 1; b2 < 6; ++b2) {
          const auto u = oracle::sine_mode(g, a1, a2);
          const auto w = oracle::sine_mode(g, b1, b2);
          const double expect = (a1 == b1 && a2 == b2) ? 1.0 : 0.0;
          CHECK(std::abs(inner_product(u, w) - expect) < 1e-12);
          if (expect == 1.0)
            CHECK(std::abs(norm_l2(u) - 1.0) < 1e-12);
        }
}

TEST_CASE("norms") {
  const Grid2D g(6, 6);
  GridFunction z(g);
  CHECK(norm_l2(z) == 0.0);
  CHECK(norm_inf(z) == 0.0);
  z(3, 2) = -2.5;
  CHECK(norm_inf(z) == 2.5);

  CHECK_THROWS_AS(inner_product(GridFunction(g), GridFunction(Grid2D(5, 6))), DimensionError);
}

TEST_CASE("inner product is symmetric, bilinear, and bounded by the max norm") {
  for (int n : {4, 9, 17}) {
    const Grid2D g(n, n + 2, 1.3, 0.7);
    for (unsigned seed = 0; seed < 20; ++seed) {
      const auto u = oracle::random_field(g, seed);
      const auto w = oracle::random_field(g, seed + 100);
      const auto v = oracle::random_field(g, seed + 200);
      CHECK(inner_product(u, w) == inner_product(w, u));
      GridFunction combo(g);
      for (std::size_t k = 0; k < combo.size(); ++k)
        combo[k] = 2.0 * u[k] - 0.5 * v[k];
      CHECK(inner_product(combo, w) ==
            doctest::Approx(2.0 * inner_product(u, w) - 0.5 * inner_product(v, w)).epsilon(1e-12));
      CHECK(norm_l2(u) * norm_l2(u) == doctest::Approx(inner_product(u, u)).epsilon(1e-14));
      CHECK(norm_l2(u) <= std::sqrt(g.l1() * g.l2()) * norm_inf(u));
    }
  }
}

TEST_CASE("right-hand sides") {
  const Grid2D g = Grid2D::unit_square(4);
  const auto f1 = rhs_f1(g);
  CHECK(f1(2, 2) == 0.015625);
  for (int i1 = 1; i1 < 4; ++i1)
    for (int i2 = 1; i2 < 4; ++i2)
      CHECK(f1(i1, i2) == f1(i2, i1));

  const auto f2 = rhs_f2(g);
  CHECK(f2(2, 2) == 1.0);  // x1 x2 = 0.25 exactly
  CHECK(f2(1, 1) == 0.0);
  CHECK(f2(3, 3) == 2.0);
  CHECK(f2(1, 3) == 0.0);  // 0.1875

  const Grid2D big = Grid2D::unit_square(32);
  const auto f1b = rhs_f1(big);
  for (int i1 = 1; i1 < 32; ++i1)
    for (int i2 = 1; i2 < 32; ++i2)
      CHECK(f1b(i1, i2) == f1b(i2, i1));

  CHECK(parse_rhs("f2") == Rhs::f2);
  CHECK_THROWS_AS(parse_rhs("f3"), DomainError);
  CHECK(norm_inf(make_rhs(big, Rhs::zero)) == 0.0);
}

TEST_CASE("field csv dump") {
  const Grid2D g(3, 2);
  GridFunction u(g);
  u(1, 1) = 0.1;
  u(2, 1) = 1.0 / 3.0;
  std::ostringstream os;
  write_field_csv(os, u);
  CHECK(os.str() == "i1,i2,x1,x2,value\n"
                    "1,1,0.33333333333333331,0.5,0.10000000000000001\n"
                    "2,1,0.66666666666666663,0.5,0.33333333333333331\n");
  CHECK_THROWS_AS(write_field_csv("/nonexistent/dir/x.csv", u), IoError);
}
