#pragma once

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "djcm/qops.hpp"

namespace djcm::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline Matrix ginibre(Index rows, Index cols) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng()), normal(rng()));
  return m;
}

inline Matrix random_hermitian(Index n) {
  const Matrix g = ginibre(n, n);
  return 0.5 * (g + g.adjoint());
}

// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R removed.
inline Matrix random_unitary(Index n) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(n, n));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
  return q;
}

// Random density matrix of the given rank.
inline Matrix random_density(Index n, Index rank) {
  const Matrix w = ginibre(n, rank);
  Matrix rho = w * w.adjoint();
  return rho / rho.trace().real();
}

inline double min_eigenvalue(const Matrix& rho) { return herm_eigenvalues(0.5 * (rho + rho.adjoint())).minCoeff(); }

}  // namespace djcm::test
