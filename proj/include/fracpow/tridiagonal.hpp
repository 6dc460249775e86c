#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracpow {

struct TridiagonalEigen {
  std::vector<double> values; // ascending
  // Row-major rows x n block of the eigenvector matrix: rows == 1 holds only
  // the first component of every eigenvector, rows == n the full matrix with
  // eigenvector j in column j.
  std::size_t rows = 0;
  std::vector<double> vectors;

  double vector(std::size_t row, std::size_t j) const { return vectors[row * values.size() + j]; }
};

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal
/// `diag` (n entries) and off-diagonal `offdiag` (n-1 entries, offdiag[i]
/// couples i and i+1), by implicit QL iteration with Wilkinson-type shifts.
/// Throws NumericError if an eigenvalue fails to converge.
TridiagonalEigen symmetric_tridiagonal_eigen(std::span<const double> diag,
                                             std::span<const double> offdiag,
                                             bool first_components_only);

} // namespace fracpow
