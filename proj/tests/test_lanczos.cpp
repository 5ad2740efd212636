#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "spinlab/lanczos.hpp"

using namespace spinlab;

namespace {

/// Random sparse Hermitian positive semidefinite matrix with a known dense spectrum.
SparseMatrixC random_hermitian(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Eigen::Triplet<Complex>> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, 4.0 + g(rng) * 0.1);
    const int j = (i + 1) % n, k = (i + 7) % n;
    const Complex z(g(rng), g(rng));
    t.emplace_back(i, j, z);
    t.emplace_back(j, i, std::conj(z));
    const Complex w(g(rng) * 0.5, g(rng) * 0.5);
    t.emplace_back(i, k, w);
    t.emplace_back(k, i, std::conj(w));
  }
  SparseMatrixC a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

}  // namespace

TEST_CASE("lowest eigenpairs agree with a dense solver") {
  const SparseMatrixC a = random_hermitian(200, 3);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> dense{Eigen::MatrixXcd(a)};
  LanczosOptions opt;
  opt.shift = dense.eigenvalues()(0) - 1.0;
  const EigenPairs p = lowest_eigenpairs(a, 5, opt);
  REQUIRE(p.values.size() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(p.values(k) == doctest::Approx(dense.eigenvalues()(k)).epsilon(1e-9));
    const Eigen::VectorXcd r = a * p.vectors.col(k) - p.values(k) * p.vectors.col(k);
    CHECK(r.norm() <= 1e-8 * std::max(1.0, std::abs(p.values(k))));
  }
  CHECK(p.max_residual <= 1e-8 * std::max(1.0, std::abs(p.values(4))));
}

TEST_CASE("degenerate eigenvalues are all returned") {
  // Block diagonal copy of one matrix: every eigenvalue doubles.
  const SparseMatrixC b = random_hermitian(60, 9);
  SparseMatrixC a(120, 120);
  std::vector<Eigen::Triplet<Complex>> t;
  for (int off : {0, 60})
    for (int k = 0; k < b.outerSize(); ++k)
      for (SparseMatrixC::InnerIterator it(b, k); it; ++it) t.emplace_back(it.row() + off, it.col() + off, it.value());
  a.setFromTriplets(t.begin(), t.end());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> dense{Eigen::MatrixXcd(b)};
  LanczosOptions opt;
  opt.shift = dense.eigenvalues()(0) - 1.0;
  const EigenPairs p = lowest_eigenpairs(a, 4, opt);
  CHECK(p.values(0) == doctest::Approx(dense.eigenvalues()(0)).epsilon(1e-9));
  CHECK(p.values(1) == doctest::Approx(dense.eigenvalues()(0)).epsilon(1e-9));
  CHECK(p.values(2) == doctest::Approx(dense.eigenvalues()(1)).epsilon(1e-9));
  CHECK(p.values(3) == doctest::Approx(dense.eigenvalues()(1)).epsilon(1e-9));
}

TEST_CASE("small matrices are solved in full") {
  const SparseMatrixC a = random_hermitian(8, 5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> dense{Eigen::MatrixXcd(a)};
  LanczosOptions opt;
  opt.shift = dense.eigenvalues()(0) - 1.0;
  const EigenPairs p = lowest_eigenpairs(a, 8, opt);
  for (int k = 0; k < 8; ++k) CHECK(p.values(k) == doctest::Approx(dense.eigenvalues()(k)).epsilon(1e-10));
}

TEST_CASE("non-convergence raises with diagnostics") {
  const SparseMatrixC a = random_hermitian(400, 13);
  LanczosOptions opt;
  opt.shift = -100.0;
  opt.max_blocks = 1;
  opt.tolerance = 1e-14;
  try {
    lowest_eigenpairs(a, 3, opt);
    FAIL("expected EigensolverError");
  } catch (const EigensolverError& e) {
    CHECK(e.iterations() >= 1);
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("bad requests are rejected") {
  const SparseMatrixC a = random_hermitian(20, 1);
  CHECK_THROWS(lowest_eigenpairs(a, 0));
  CHECK_THROWS(lowest_eigenpairs(a, 21));
}
