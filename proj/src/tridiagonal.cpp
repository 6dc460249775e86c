#include "fracpow/tridiagonal.hpp"

#include "fracpow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace fracpow {

TridiagonalEigen symmetric_tridiagonal_eigen(std::span<const double> diag,
                                             std::span<const double> offdiag,
                                             bool first_components_only) {
  const std::size_t n = diag.size();
  if (n == 0)
    throw DomainError("empty tridiagonal matrix");
  if (offdiag.size() + 1 != n)
    throw DimensionError("off-diagonal must have n-1 entries");

  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());

  const std::size_t rows = first_components_only ? 1 : n;
  std::vector<double> z(rows * n, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    z[r * n + r] = 1.0;

  const double eps = std::numeric_limits<double>::epsilon();
  const int max_iter = 30 * static_cast<int>(n) + 30;
  double f = 0.0;
  double tst1 = 0.0;

  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1)
      ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_iter)
          throw NumericError("tridiagonal QL iteration did not converge for eigenvalue " +
                             std::to_string(l));
        // Shift from the leading 2x2 block.
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0)
          r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i)
          d[i] -= h;
        f += h;

        // Implicit QL sweep from m back to l.
        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t k = 0; k < rows; ++k) {
            double *zr = &z[k * n];
            const double t = zr[ii + 1];
            zr[ii + 1] = s * zr[ii] + c * t;
            zr[ii] = c * zr[ii] - s * t;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  TridiagonalEigen out;
  out.rows = rows;
  out.values.resize(n);
  out.vectors.resize(rows * n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[perm[j]];
    for (std::size_t k = 0; k < rows; ++k)
      out.vectors[k * n + j] = z[k * n + perm[j]];
  }
  return out;
}

} // namespace fracpow
