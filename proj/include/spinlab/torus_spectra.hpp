#pragma once

// Lattice harness for a degree-d U(1) line bundle with constant curvature
// over a flat square torus of area V (complex dimension 1).
//
// Sites (x, y), 0 <= x, y < N, are flattened as x * N + y. A link u_mu(x, y)
// transports from site n + mu back to n, so the forward covariant difference is
//   (D_mu psi)(n) = (u_mu(n) psi(n + mu) - psi(n)) / h,   h = sqrt(V) / N,
// and every plaquette u_x(n) u_y(n+x) conj(u_x(n+y)) conj(u_y(n)) equals
// exp(-2 pi i d / N^2).
//
// The lattice dbar maps a section to two samples of its (0,1) part, one from
// the forward stencil and one from the backward stencil, each weighted so
// that in the unitary coframe
//   dbar*dbar = 1/2 (average of the two stencils' (D_x + i D_y)^* (D_x + i D_y)).
// The forward/backward cross terms cancel the doubler modes a single square
// stencil would carry, and dbar*dbar reduces to half the 5-point Laplacian
// exactly when d = 0.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "spinlab/lanczos.hpp"
#include "spinlab/scalar.hpp"

namespace spinlab {

struct LatticeConfig {
  int n = 32;             // lattice points per side
  double volume = 1.0;    // area V of the torus
  int degree = 0;         // deg E
  int eig_count = 3;      // requested low eigenvalues

  /// Throws std::invalid_argument unless n >= 4, volume > 0 and eig_count >= 1.
  void validate() const;
  double spacing() const;
  int sites() const { return n * n; }
};

struct LinkField {
  int n = 0;
  Eigen::MatrixXcd ux;  // ux(x, y)
  Eigen::MatrixXcd uy;

  Complex plaquette(int x, int y) const;
};

LinkField build_links(const LatticeConfig& config);

/// psi -> g psi on sites, with u_mu(n) -> g(n) u_mu(n) conj(g(n + mu)).
LinkField gauge_transform(const LinkField& links, const Eigen::MatrixXcd& site_phases);
LinkField random_gauge_transform(const LinkField& links, std::uint64_t seed);

/// Forward covariant difference in direction 0 (x) or 1 (y), N^2 x N^2.
SparseMatrixC forward_difference(const LinkField& links, int direction, double h);

/// Lattice dbar, 2N^2 x N^2 (forward-stencil rows, then backward-stencil rows).
SparseMatrixC assemble_dbar(const LinkField& links, const LatticeConfig& config);

/// dbar^H dbar, N^2 x N^2.
SparseMatrixC assemble_dolbeault_laplacian(const LinkField& links, const LatticeConfig& config);

/// Magnetic 5-point Laplacian grad^* grad, assembled directly from the links.
SparseMatrixC assemble_connection_laplacian(const LinkField& links, const LatticeConfig& config);

/// [[0, sqrt2 dbar^H], [sqrt2 dbar, 0]] on sections (+) (0,1)-samples, 3N^2 x 3N^2.
SparseMatrixC assemble_dirac(const LinkField& links, const LatticeConfig& config);

/// Lambda F = -2 pi i d / V, the Hermitian-Einstein constant for n = 1, rk = 1.
Complex lambda_curvature(const LatticeConfig& config);

/// max over random smooth sections psi of
///   || dbar*dbar psi - 1/2 grad*grad psi + (i/2) Lambda F psi || / ||psi||.
/// Sections are complex Gaussian combinations of the four lowest
/// connection-Laplacian eigenmodes.
double kahler_identity_residual(const LinkField& links, const LatticeConfig& config, int samples,
                                std::uint64_t seed = 1);

/// max |(D^2)_{00} - 2 dbar*dbar| / max |2 dbar*dbar|.
double dirac_identity_residual(const LinkField& links, const LatticeConfig& config);

/// Largest deviation of assemble_dirac from the block form [[0, sqrt2 dbar^H], [sqrt2 dbar, 0]],
/// compared entry by entry with no tolerance. Zero means (D^2)_{00} = 2 dbar*dbar holds as an
/// identity of the assembled operators. Dense, so meant for N <= 32.
double dirac_structure_residual(const LinkField& links, const LatticeConfig& config);

struct BoundValues {
  double coarse = 0.0;  // -pi d / V
  double sharp = 0.0;   // -2 pi d / V
};

BoundValues bound_values(const LatticeConfig& config);

/// Lanczos options scaled to the spectrum of a config (shift below zero by 2 pi / V).
LanczosOptions default_lanczos_options(const LatticeConfig& config, std::uint64_t seed = 1);

/// Lowest config.eig_count eigenpairs of dbar*dbar.
EigenPairs dolbeault_eigenpairs(const LinkField& links, const LatticeConfig& config,
                                std::uint64_t seed = 1);

struct SpectrumReport {
  LatticeConfig config;
  std::uint64_t seed = 1;
  std::vector<double> eigenvalues;  // ascending
  double coarse_bound = 0.0;
  double sharp_bound = 0.0;
  double identity_residual = 0.0;
  double dirac_identity_residual = 0.0;
  int solver_iterations = 0;
  double solver_residual = 0.0;
};

SpectrumReport run_experiment(const LatticeConfig& config, std::uint64_t seed = 1);

/// Number of eigenvalues within rel_tol (relative to max(1, |lowest|)) of the lowest.
int lowest_multiplicity(const std::vector<double>& ascending, double rel_tol = 1e-3);

struct IdentityStudy {
  std::vector<int> resolutions;
  std::vector<double> residuals;
  std::vector<double> orders;  // log2 residual(N) / residual(2N) between consecutive entries
  double min_order = 0.0;
};

/// Kahler-identity residual at each resolution (ascending, each double the previous).
IdentityStudy identity_study(const LatticeConfig& base, const std::vector<int>& resolutions,
                             int samples = 8, std::uint64_t seed = 1);

struct BoundStudy {
  std::vector<int> resolutions;
  std::vector<double> spacings;
  std::vector<std::vector<double>> eigenvalues;
  std::vector<double> relative_errors;  // (lowest - 2 pi |d| / V) / (2 pi |d| / V), d != 0
  std::vector<int> multiplicities;
  double slack_constant = 0.0;  // max(0, sharp - lowest) / h at the coarsest resolution
  BoundValues bounds;
};

BoundStudy bound_study(const LatticeConfig& base, const std::vector<int>& resolutions,
                       std::uint64_t seed = 1);

struct CheckResult {
  bool passed = false;
  std::string detail;
};

/// Identity check at N against N/2: exact (<= 1e-10) for d = 0, otherwise
/// decreasing with observed order >= 0.9.
CheckResult check_identity(const LatticeConfig& config, std::uint64_t seed = 1);

/// Bound check: lowest >= sharp - C h with C measured at N/2, and for d < 0 the
/// lowest eigenvalue within 5% of the sharp bound.
CheckResult check_bounds(const LatticeConfig& config, std::uint64_t seed = 1);

}  // namespace spinlab
