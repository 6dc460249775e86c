#include "fracpow/grid.hpp"

#include "fracpow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace fracpow {

Grid2D::Grid2D(int n1, int n2, double l1, double l2)
    : n1_(n1), n2_(n2), l1_(l1), l2_(l2) {
  if (n1 < 2 || n2 < 2)
    throw DomainError("grid needs at least 2 intervals per axis (got N1=" +
                      std::to_string(n1) + ", N2=" + std::to_string(n2) + ")");
  if (!(l1 > 0.0) || !(l2 > 0.0) || !std::isfinite(l1) || !std::isfinite(l2))
    throw DomainError("grid side lengths must be positive and finite");
}

GridFunction::GridFunction(const Grid2D &grid) : grid_(grid), values_(grid.size(), 0.0) {}

GridFunction::GridFunction(const Grid2D &grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw DimensionError("grid function has " + std::to_string(values_.size()) +
                         " values, grid has " + std::to_string(grid_.size()) +
                         " interior nodes");
}

void require_same_grid(const GridFunction &u, const GridFunction &w) {
  if (!(u.grid() == w.grid()))
    throw DimensionError("grid functions live on different grids");
}

double inner_product(const GridFunction &u, const GridFunction &w) {
  require_same_grid(u, w);
  const auto a = u.values();
  const auto b = w.values();
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    s += a[k] * b[k];
  return s * u.grid().h1() * u.grid().h2();
}

double norm_l2(const GridFunction &u) { return std::sqrt(inner_product(u, u)); }

double norm_inf(const GridFunction &u) {
  double m = 0.0;
  for (double v : u.values())
    m = std::max(m, std::abs(v));
  return m;
}

GridFunction rhs_f1(const Grid2D &grid) {
  return GridFunction::sample(grid, [](double x1, double x2) {
    return x1 * x1 * (1.0 - x1) * x2 * x2 * (1.0 - x2);
  });
}

GridFunction rhs_f2(const Grid2D &grid) {
  return GridFunction::sample(grid, [](double x1, double x2) {
    const double s = x1 * x2 - 0.25;
    return 1.0 + static_cast<double>((s > 0.0) - (s < 0.0));
  });
}

Rhs parse_rhs(const std::string &name) {
  if (name == "f1")
    return Rhs::f1;
  if (name == "f2")
    return Rhs::f2;
  if (name == "zero")
    return Rhs::zero;
  throw DomainError("unknown right-hand side '" + name + "' (expected f1, f2 or zero)");
}

std::string to_string(Rhs rhs) {
  switch (rhs) {
  case Rhs::f1:
    return "f1";
  case Rhs::f2:
    return "f2";
  case Rhs::zero:
    return "zero";
  }
  return "?";
}

GridFunction make_rhs(const Grid2D &grid, Rhs rhs) {
  switch (rhs) {
  case Rhs::f1:
    return rhs_f1(grid);
  case Rhs::f2:
    return rhs_f2(grid);
  case Rhs::zero:
    break;
  }
  return GridFunction(grid);
}

void write_field_csv(std::ostream &os, const GridFunction &u) {
  const Grid2D &g = u.grid();
  os << "i1,i2,x1,x2,value\n" << std::setprecision(17);
  for (int i1 = 1; i1 <= g.interior1(); ++i1)
    for (int i2 = 1; i2 <= g.interior2(); ++i2)
      os << i1 << ',' << i2 << ',' << g.x1(i1) << ',' << g.x2(i2) << ',' << u(i1, i2) << '\n';
}

void write_field_csv(const std::string &path, const GridFunction &u) {
  std::ofstream os(path);
  if (!os)
    throw IoError("cannot open '" + path + "' for writing");
  write_field_csv(os, u);
  if (!os)
    throw IoError("write to '" + path + "' failed");
}

} // namespace fracpow
