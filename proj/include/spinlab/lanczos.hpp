#pragma once

// Shift-invert block Lanczos for the lowest eigenpairs of a sparse Hermitian
// operator, with full reorthogonalization.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "spinlab/scalar.hpp"

namespace spinlab {

using SparseMatrixC = Eigen::SparseMatrix<Complex>;

struct LanczosOptions {
  /// Lanczos runs on (A - shift)^{-1}; A - shift must be positive definite.
  double shift = -1.0;
  /// Converged when ||A x - lambda x|| <= tolerance * max(1, |lambda|) for every requested pair.
  double tolerance = 1e-8;
  int max_blocks = 60;
  /// 0 picks count + 2.
  int block_size = 0;
  std::uint64_t seed = 0x5eed;
};

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // columns, unit norm
  int iterations = 0;       // Lanczos blocks used
  double max_residual = 0.0;
};

/// Thrown when the solver cannot reach the requested tolerance or the shifted
/// operator cannot be factorized.
class EigensolverError : public std::runtime_error {
 public:
  EigensolverError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

EigenPairs lowest_eigenpairs(const SparseMatrixC& a, int count, const LanczosOptions& options = {});

}  // namespace spinlab
