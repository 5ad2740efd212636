#include "spinlab/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SparseCholesky>

namespace spinlab {

namespace {

// Orthogonalizes w against the first m columns of basis (two passes of
// classical Gram-Schmidt) and returns its remaining norm.
double orthogonalize(const Eigen::MatrixXcd& basis, Eigen::Index m, Eigen::Ref<Eigen::VectorXcd> w) {
  for (int pass = 0; pass < 2; ++pass) {
    if (m == 0) break;
    const Eigen::VectorXcd coeffs = basis.leftCols(m).adjoint() * w;
    w.noalias() -= basis.leftCols(m) * coeffs;
  }
  return w.norm();
}

Eigen::VectorXcd random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

}  // namespace

EigenPairs lowest_eigenpairs(const SparseMatrixC& a, int count, const LanczosOptions& options) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("lowest_eigenpairs: operator must be square");
  if (count < 1 || count > n) throw std::invalid_argument("lowest_eigenpairs: bad eigenvalue count");

  SparseMatrixC shifted = a;
  for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) -= options.shift;
  Eigen::SimplicialLDLT<SparseMatrixC, Eigen::Lower, Eigen::AMDOrdering<int>> factor(shifted);
  if (factor.info() != Eigen::Success)
    throw EigensolverError("lowest_eigenpairs: factorization of the shifted operator failed", 0, 0.0);

  const Eigen::Index block = std::min<Eigen::Index>(n, options.block_size > 0 ? options.block_size : count + 2);
  const Eigen::Index capacity = std::min<Eigen::Index>(n, block * options.max_blocks);

  std::mt19937_64 rng(options.seed);
  Eigen::MatrixXcd basis(n, capacity);        // orthonormal Krylov basis V
  Eigen::MatrixXcd image(n, capacity);        // (A - shift)^{-1} V
  Eigen::MatrixXcd projected(capacity, capacity);  // V^H (A - shift)^{-1} V
  Eigen::Index m = 0;

  auto append = [&](Eigen::VectorXcd w) {
    double norm = orthogonalize(basis, m, w);
    const double original = w.norm();
    // Krylov space exhausted in this direction: restart with a fresh random vector.
    while (norm <= 1e-10 * std::max(original, 1e-300)) {
      w = random_vector(n, rng);
      norm = orthogonalize(basis, m, w);
    }
    basis.col(m) = w / norm;
    ++m;
  };

  for (Eigen::Index j = 0; j < block; ++j) append(random_vector(n, rng));

  EigenPairs out;
  Eigen::Index block_start = 0;
  double worst = 0.0;
  for (int iteration = 1;; ++iteration) {
    for (Eigen::Index j = block_start; j < m; ++j) image.col(j) = factor.solve(basis.col(j));
    const Eigen::Index fresh = m - block_start;
    const Eigen::MatrixXcd cross = basis.leftCols(m).adjoint() * image.middleCols(block_start, fresh);
    projected.block(0, block_start, m, fresh) = cross;
    projected.block(block_start, 0, fresh, m) = cross.adjoint();

    Eigen::MatrixXcd h = projected.topLeftCorner(m, m);
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ritz(h);
    // Largest Ritz values of the inverse are the lowest eigenvalues of A.
    out.values.resize(count);
    out.vectors.resize(n, count);
    worst = 0.0;
    for (int k = 0; k < count; ++k) {
      const Eigen::Index idx = m - 1 - k;
      const double theta = ritz.eigenvalues()(idx);
      const double lambda = options.shift + 1.0 / theta;
      Eigen::VectorXcd x = basis.leftCols(m) * ritz.eigenvectors().col(idx);
      x.normalize();
      const double residual = (a * x - lambda * x).norm();
      worst = std::max(worst, residual / std::max(1.0, std::abs(lambda)));
      out.values(k) = lambda;
      out.vectors.col(k) = x;
    }
    out.iterations = iteration;
    out.max_residual = worst;
    if (worst <= options.tolerance) return out;
    if (m == n) {
      // The basis spans the whole space; Ritz pairs are exact up to rounding.
      return out;
    }
    if (iteration >= options.max_blocks || m + block > capacity) break;

    const Eigen::Index prev_start = block_start;
    block_start = m;
    for (Eigen::Index j = prev_start; j < block_start && m < capacity; ++j) append(image.col(j));
  }
  throw EigensolverError("lowest_eigenpairs: no convergence after " + std::to_string(out.iterations) +
                             " blocks (residual " + std::to_string(worst) + ")",
                         out.iterations, worst);
}

}  // namespace spinlab
