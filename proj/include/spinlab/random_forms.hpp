#pragma once

// Seeded generators for randomized invariant sweeps. Exact mode draws small
// rationals p/q; floating mode draws uniform values in [-1, 1].

#include <cstdint>
#include <random>

#include "spinlab/fiber_algebra.hpp"
#include "spinlab/form_decomposition.hpp"

namespace spinlab {

/// Per-sample generator: independent of thread scheduling and sample order.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return std::mt19937_64(z ^ (z >> 31));
}

template <class S>
S random_real(std::mt19937_64& rng) {
  if constexpr (ScalarTraits<S>::is_exact) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 8);
    return ScalarTraits<S>::from_ratio(num(rng), den(rng));
  } else {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return S(u(rng), 0.0);
  }
}

template <class S>
S random_scalar(std::mt19937_64& rng) {
  const S re = random_real<S>(rng);
  const S im = random_real<S>(rng);
  return re + ScalarTraits<S>::i() * im;
}

template <class S>
Spinor<S> random_spinor(std::mt19937_64& rng) {
  Spinor<S> psi;
  for (int k = 0; k < 4; ++k) psi(k) = random_scalar<S>(rng);
  return psi;
}

template <class S>
OneForm<S> random_real_covector(std::mt19937_64& rng) {
  return OneForm<S>::real(random_scalar<S>(rng), random_scalar<S>(rng));
}

template <class S>
TwoForm<S> random_two_form(std::mt19937_64& rng) {
  TwoForm<S> beta;
  for (int k = 0; k < 6; ++k) beta[k] = random_scalar<S>(rng);
  return beta;
}

template <class S>
TwoForm<S> random_type11(std::mt19937_64& rng) {
  TwoForm<S> beta = random_two_form<S>(rng);
  beta[TwoForm<S>::k12] = S(0);
  beta[TwoForm<S>::k1b2b] = S(0);
  return beta;
}

/// u(1)-valued (conj(beta) = -beta) form of type (1,1): real diagonal
/// coefficients and c_21b = conj(c_12b).
template <class S>
TwoForm<S> random_u1_type11(std::mt19937_64& rng) {
  using F = TwoForm<S>;
  TwoForm<S> beta;
  beta[F::k11b] = random_real<S>(rng);
  beta[F::k22b] = random_real<S>(rng);
  beta[F::k12b] = random_scalar<S>(rng);
  beta[F::k21b] = ScalarTraits<S>::conj(beta[F::k12b]);
  return beta;
}

/// u(1)-valued anti-self-dual form: a, b = conj(a), c real.
template <class S>
TwoForm<S> random_u1_asd(std::mt19937_64& rng) {
  const S a = random_scalar<S>(rng);
  return asd_form(a, ScalarTraits<S>::conj(a), random_real<S>(rng));
}

/// u(1)-valued form with every type present; f02 = -conj(f20).
template <class S>
TwoForm<S> random_u1_form(std::mt19937_64& rng) {
  using F = TwoForm<S>;
  TwoForm<S> beta = random_u1_type11<S>(rng);
  beta[F::k12] = random_scalar<S>(rng);
  beta[F::k1b2b] = -ScalarTraits<S>::conj(beta[F::k12]);
  return beta;
}

/// Rescales to unit coefficient norm in floating mode; exact forms are returned as is.
template <class S>
TwoForm<S> normalized(const TwoForm<S>& beta) {
  if constexpr (ScalarTraits<S>::is_exact) {
    return beta;
  } else {
    const double n = beta.norm();
    return n > 0.0 ? S(1.0 / n) * beta : beta;
  }
}

}  // namespace spinlab
