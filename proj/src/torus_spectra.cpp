#include "spinlab/torus_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace spinlab {

namespace {

using Triplet = Eigen::Triplet<Complex>;
constexpr double kPi = std::numbers::pi;

int wrap(int k, int n) { return ((k % n) + n) % n; }

SparseMatrixC from_triplets(Eigen::Index rows, Eigen::Index cols, const std::vector<Triplet>& t) {
  SparseMatrixC m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

// Link leaving site (x, y) in direction mu, and the shifted site index.
struct Hop {
  Complex link;
  int target;
};

Hop forward_hop(const LinkField& links, int x, int y, int mu) {
  const int n = links.n;
  if (mu == 0) return {links.ux(x, y), wrap(x + 1, n) * n + y};
  return {links.uy(x, y), x * n + wrap(y + 1, n)};
}

Hop backward_hop(const LinkField& links, int x, int y, int mu) {
  const int n = links.n;
  if (mu == 0) {
    const int xm = wrap(x - 1, n);
    return {std::conj(links.ux(xm, y)), xm * n + y};
  }
  const int ym = wrap(y - 1, n);
  return {std::conj(links.uy(x, ym)), x * n + ym};
}

}  // namespace

void LatticeConfig::validate() const {
  if (n < 4) throw std::invalid_argument("lattice size N must be >= 4");
  if (!(volume > 0.0) || !std::isfinite(volume)) throw std::invalid_argument("volume must be > 0");
  if (eig_count < 1) throw std::invalid_argument("eig_count must be >= 1");
  if (eig_count > n * n) throw std::invalid_argument("eig_count exceeds the number of sites");
}

double LatticeConfig::spacing() const { return std::sqrt(volume) / n; }

Complex LinkField::plaquette(int x, int y) const {
  const int xp = wrap(x + 1, n), yp = wrap(y + 1, n);
  return ux(x, y) * uy(xp, y) * std::conj(ux(x, yp)) * std::conj(uy(x, y));
}

LinkField build_links(const LatticeConfig& config) {
  config.validate();
  const int n = config.n;
  const double theta = -2.0 * kPi * config.degree / (static_cast<double>(n) * n);
  LinkField links;
  links.n = n;
  links.ux.resize(n, n);
  links.uy.setOnes(n, n);
  // Landau gauge: ux winds with the row index; the boundary column of uy
  // carries the twist that closes the flux on the torus.
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) links.ux(x, y) = std::polar(1.0, -theta * y);
    links.uy(x, n - 1) = std::polar(1.0, theta * n * x);
  }
  return links;
}

LinkField gauge_transform(const LinkField& links, const Eigen::MatrixXcd& g) {
  const int n = links.n;
  LinkField out = links;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      out.ux(x, y) = g(x, y) * links.ux(x, y) * std::conj(g(wrap(x + 1, n), y));
      out.uy(x, y) = g(x, y) * links.uy(x, y) * std::conj(g(x, wrap(y + 1, n)));
    }
  }
  return out;
}

LinkField random_gauge_transform(const LinkField& links, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  Eigen::MatrixXcd g(links.n, links.n);
  for (int x = 0; x < links.n; ++x)
    for (int y = 0; y < links.n; ++y) g(x, y) = std::polar(1.0, angle(rng));
  return gauge_transform(links, g);
}

SparseMatrixC forward_difference(const LinkField& links, int direction, double h) {
  const int n = links.n;
  std::vector<Triplet> t;
  t.reserve(2 * n * n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const int site = x * n + y;
      const Hop hop = forward_hop(links, x, y, direction);
      t.emplace_back(site, hop.target, hop.link / h);
      t.emplace_back(site, site, Complex(-1.0 / h));
    }
  }
  return from_triplets(n * n, n * n, t);
}

SparseMatrixC assemble_dbar(const LinkField& links, const LatticeConfig& config) {
  const int n = links.n;
  const int sites = n * n;
  const double h = config.spacing();
  const Complex i(0.0, 1.0);
  // Each stencil is (D_x + i D_y) / sqrt2, and the two samples carry another 1/sqrt2.
  const double w = 0.5 / h;
  std::vector<Triplet> t;
  t.reserve(6 * sites);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const int site = x * n + y;
      const Hop fx = forward_hop(links, x, y, 0), fy = forward_hop(links, x, y, 1);
      t.emplace_back(site, fx.target, w * fx.link);
      t.emplace_back(site, fy.target, i * w * fy.link);
      t.emplace_back(site, site, -w * (1.0 + i));
      // Backward: (psi(n) - conj(u(n - mu)) psi(n - mu)) / h.
      const Hop bx = backward_hop(links, x, y, 0), by = backward_hop(links, x, y, 1);
      t.emplace_back(sites + site, bx.target, -w * bx.link);
      t.emplace_back(sites + site, by.target, -i * w * by.link);
      t.emplace_back(sites + site, site, w * (1.0 + i));
    }
  }
  return from_triplets(2 * sites, sites, t);
}

SparseMatrixC assemble_dolbeault_laplacian(const LinkField& links, const LatticeConfig& config) {
  const SparseMatrixC dbar = assemble_dbar(links, config);
  SparseMatrixC a = SparseMatrixC(dbar.adjoint()) * dbar;
  a.makeCompressed();
  return a;
}

SparseMatrixC assemble_connection_laplacian(const LinkField& links, const LatticeConfig& config) {
  const int n = links.n;
  const double inv_h2 = 1.0 / (config.spacing() * config.spacing());
  std::vector<Triplet> t;
  t.reserve(5 * n * n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const int site = x * n + y;
      t.emplace_back(site, site, Complex(4.0 * inv_h2));
      for (int mu = 0; mu < 2; ++mu) {
        const Hop f = forward_hop(links, x, y, mu);
        const Hop b = backward_hop(links, x, y, mu);
        t.emplace_back(site, f.target, -inv_h2 * f.link);
        t.emplace_back(site, b.target, -inv_h2 * b.link);
      }
    }
  }
  return from_triplets(n * n, n * n, t);
}

SparseMatrixC assemble_dirac(const LinkField& links, const LatticeConfig& config) {
  const SparseMatrixC dbar = assemble_dbar(links, config);
  const Eigen::Index sites = dbar.cols();
  const double r2 = std::sqrt(2.0);
  std::vector<Triplet> t;
  t.reserve(2 * dbar.nonZeros());
  for (int k = 0; k < dbar.outerSize(); ++k) {
    for (SparseMatrixC::InnerIterator it(dbar, k); it; ++it) {
      // Lower-left block sqrt2 dbar, upper-right block its adjoint.
      t.emplace_back(sites + it.row(), it.col(), r2 * it.value());
      t.emplace_back(it.col(), sites + it.row(), r2 * std::conj(it.value()));
    }
  }
  return from_triplets(3 * sites, 3 * sites, t);
}

Complex lambda_curvature(const LatticeConfig& config) {
  return Complex(0.0, -2.0 * kPi * config.degree / config.volume);
}

LanczosOptions default_lanczos_options(const LatticeConfig& config, std::uint64_t seed) {
  LanczosOptions options;
  options.shift = -2.0 * kPi / config.volume;
  options.seed = seed;
  return options;
}

double kahler_identity_residual(const LinkField& links, const LatticeConfig& config, int samples,
                                std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("kahler_identity_residual: samples must be >= 1");
  const SparseMatrixC dolbeault = assemble_dolbeault_laplacian(links, config);
  const SparseMatrixC laplacian = assemble_connection_laplacian(links, config);
  const Complex curvature_term = Complex(0.0, 0.5) * lambda_curvature(config);

  constexpr int kModes = 4;
  const EigenPairs modes = lowest_eigenpairs(laplacian, kModes, default_lanczos_options(config, seed));

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXcd c(kModes);
    for (int k = 0; k < kModes; ++k) c(k) = Complex(normal(rng), normal(rng));
    const Eigen::VectorXcd psi = modes.vectors * c;
    const Eigen::VectorXcd r = dolbeault * psi - 0.5 * (laplacian * psi) + curvature_term * psi;
    worst = std::max(worst, r.norm() / psi.norm());
  }
  return worst;
}

double dirac_identity_residual(const LinkField& links, const LatticeConfig& config) {
  const SparseMatrixC dirac = assemble_dirac(links, config);
  const Eigen::Index sites = static_cast<Eigen::Index>(links.n) * links.n;
  const SparseMatrixC square = dirac * dirac;
  const SparseMatrixC top_left = square.topLeftCorner(sites, sites);
  const SparseMatrixC twice = 2.0 * assemble_dolbeault_laplacian(links, config);
  const SparseMatrixC diff = top_left - twice;
  double num = 0.0, den = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(diff, k); it; ++it) num = std::max(num, std::abs(it.value()));
  for (int k = 0; k < twice.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(twice, k); it; ++it) den = std::max(den, std::abs(it.value()));
  return den > 0.0 ? num / den : num;
}

double dirac_structure_residual(const LinkField& links, const LatticeConfig& config) {
  const SparseMatrixC dirac = assemble_dirac(links, config);
  const SparseMatrixC dbar = assemble_dbar(links, config);
  const Eigen::Index sites = dbar.cols();
  const Eigen::MatrixXcd d(dirac);
  const Eigen::MatrixXcd lower = std::sqrt(2.0) * Eigen::MatrixXcd(dbar);
  double r = 0.0;
  r = std::max(r, d.topLeftCorner(sites, sites).cwiseAbs().maxCoeff());
  r = std::max(r, d.bottomRightCorner(2 * sites, 2 * sites).cwiseAbs().maxCoeff());
  r = std::max(r, (d.bottomLeftCorner(2 * sites, sites) - lower).cwiseAbs().maxCoeff());
  r = std::max(r, (d.topRightCorner(sites, 2 * sites) - lower.adjoint()).cwiseAbs().maxCoeff());
  return r;
}

BoundValues bound_values(const LatticeConfig& config) {
  // n = 1, rk = 1: (n-1)! = 1 and 2n / (2n - 1) = 2.
  const double coarse = config.degree == 0 ? 0.0 : -kPi * config.degree / config.volume;
  return {coarse, 2.0 * coarse};
}

EigenPairs dolbeault_eigenpairs(const LinkField& links, const LatticeConfig& config, std::uint64_t seed) {
  return lowest_eigenpairs(assemble_dolbeault_laplacian(links, config), config.eig_count,
                           default_lanczos_options(config, seed));
}

SpectrumReport run_experiment(const LatticeConfig& config, std::uint64_t seed) {
  config.validate();
  const LinkField links = build_links(config);
  const EigenPairs pairs = dolbeault_eigenpairs(links, config, seed);
  SpectrumReport report;
  report.config = config;
  report.seed = seed;
  report.eigenvalues.assign(pairs.values.data(), pairs.values.data() + pairs.values.size());
  const BoundValues bounds = bound_values(config);
  report.coarse_bound = bounds.coarse;
  report.sharp_bound = bounds.sharp;
  report.identity_residual = kahler_identity_residual(links, config, 8, seed);
  report.dirac_identity_residual = dirac_identity_residual(links, config);
  report.solver_iterations = pairs.iterations;
  report.solver_residual = pairs.max_residual;
  return report;
}

int lowest_multiplicity(const std::vector<double>& ascending, double rel_tol) {
  if (ascending.empty()) return 0;
  const double lowest = ascending.front();
  const double tol = rel_tol * std::max(1.0, std::abs(lowest));
  int count = 0;
  for (double v : ascending)
    if (std::abs(v - lowest) <= tol) ++count;
  return count;
}

namespace {

void check_resolutions(const std::vector<int>& resolutions) {
  if (resolutions.empty()) throw std::invalid_argument("study needs at least one resolution");
  for (std::size_t k = 1; k < resolutions.size(); ++k)
    if (resolutions[k] <= resolutions[k - 1])
      throw std::invalid_argument("study resolutions must be ascending");
}

}  // namespace

IdentityStudy identity_study(const LatticeConfig& base, const std::vector<int>& resolutions, int samples,
                             std::uint64_t seed) {
  check_resolutions(resolutions);
  IdentityStudy study;
  study.resolutions = resolutions;
  for (int n : resolutions) {
    LatticeConfig config = base;
    config.n = n;
    study.residuals.push_back(kahler_identity_residual(build_links(config), config, samples, seed));
  }
  study.min_order = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < resolutions.size(); ++k) {
    const double ratio = static_cast<double>(resolutions[k]) / resolutions[k - 1];
    const double order = std::log(study.residuals[k - 1] / study.residuals[k]) / std::log(ratio);
    study.orders.push_back(order);
    study.min_order = std::min(study.min_order, order);
  }
  if (study.orders.empty()) study.min_order = 0.0;
  return study;
}

BoundStudy bound_study(const LatticeConfig& base, const std::vector<int>& resolutions, std::uint64_t seed) {
  check_resolutions(resolutions);
  BoundStudy study;
  study.resolutions = resolutions;
  study.bounds = bound_values(base);
  const double landau = 2.0 * kPi * std::abs(base.degree) / base.volume;
  for (int n : resolutions) {
    LatticeConfig config = base;
    config.n = n;
    const EigenPairs pairs = dolbeault_eigenpairs(build_links(config), config, seed);
    std::vector<double> values(pairs.values.data(), pairs.values.data() + pairs.values.size());
    study.spacings.push_back(config.spacing());
    study.relative_errors.push_back(landau > 0.0 ? (values.front() - landau) / landau : values.front());
    study.multiplicities.push_back(lowest_multiplicity(values));
    study.eigenvalues.push_back(std::move(values));
  }
  study.slack_constant =
      std::max(0.0, study.bounds.sharp - study.eigenvalues.front().front()) / study.spacings.front();
  return study;
}

CheckResult check_identity(const LatticeConfig& config, std::uint64_t seed) {
  config.validate();
  std::ostringstream detail;
  if (config.degree == 0) {
    const double r = kahler_identity_residual(build_links(config), config, 8, seed);
    detail << "residual(N=" << config.n << ") = " << r << " (flat bundle, must vanish)";
    return {r <= 1e-10, detail.str()};
  }
  if (config.n / 2 < 4) return {false, "identity check needs N >= 8 for a two-level study"};
  const IdentityStudy study = identity_study(config, {config.n / 2, config.n}, 8, seed);
  detail << "residual(N=" << study.resolutions[0] << ") = " << study.residuals[0] << ", residual(N="
         << study.resolutions[1] << ") = " << study.residuals[1] << ", order = " << study.min_order;
  const bool ok = study.residuals[1] < study.residuals[0] && study.min_order >= 0.9;
  return {ok, detail.str()};
}

CheckResult check_bounds(const LatticeConfig& config, std::uint64_t seed) {
  config.validate();
  if (config.n / 2 < 4) return {false, "bound check needs N >= 8 for a two-level study"};
  const BoundStudy study = bound_study(config, {config.n / 2, config.n}, seed);
  const double lowest = study.eigenvalues.back().front();
  const double h = study.spacings.back();
  const double sharp = study.bounds.sharp;
  // Solver tolerance floor, so a zero eigenvalue at d = 0 does not fail on rounding.
  const double floor = 1e-8 * std::max(1.0, std::abs(sharp));
  bool ok = lowest >= sharp - study.slack_constant * h - floor;
  std::ostringstream detail;
  detail << "lowest = " << lowest << ", sharp = " << sharp << ", coarse = " << study.bounds.coarse
         << ", C = " << study.slack_constant << ", h = " << h;
  if (config.degree < 0) {
    const double rel = std::abs(study.relative_errors.back());
    detail << ", |relative gap| = " << rel;
    ok = ok && rel <= 0.05;
  }
  return {ok, detail.str()};
}

}  // namespace spinlab
