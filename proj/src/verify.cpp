#include "spinlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "spinlab/json_codec.hpp"
#include "spinlab/random_forms.hpp"
#include "spinlab/spinor_action.hpp"

namespace spinlab {

ArithmeticMode parse_mode(std::string_view text) {
  if (text == "exact") return ArithmeticMode::Exact;
  if (text == "float") return ArithmeticMode::Float;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected exact or float)");
}

const char* to_string(ArithmeticMode mode) { return mode == ArithmeticMode::Exact ? "exact" : "float"; }

bool SuiteResult::passed() const {
  return std::all_of(invariants.begin(), invariants.end(), [](const auto& r) { return r.passed(); });
}

const InvariantResult& SuiteResult::invariant(std::string_view name) const {
  for (const auto& r : invariants)
    if (r.name == name) return r;
  throw std::out_of_range("no invariant named '" + std::string(name) + "' in suite " + suite);
}

namespace {

struct Outcome {
  double residual = 0.0;
  bool ok = true;
  nlohmann::json input;  // filled only on failure
  double metric = std::numeric_limits<double>::infinity();  // minimized across samples
};

using SampleFn = std::function<Outcome(long index, std::mt19937_64& rng)>;

struct Accumulator {
  double max_residual = 0.0;
  long failures = 0;
  long first_index = std::numeric_limits<long>::max();
  double min_metric = std::numeric_limits<double>::infinity();
  Outcome first;
};

class SuiteRunner {
 public:
  SuiteRunner(SuiteResult& result, int jobs) : result_(result), jobs_(std::max(1, jobs)) {}

  /// Runs fn for indices [0, samples) and records the invariant.
  InvariantResult& run(const std::string& name, long samples, double tolerance, const SampleFn& fn,
                       const std::string& metric_name = {}) {
    // Distinct stream per invariant so suites do not share draws.
    const std::uint64_t stream = result_.seed ^ (std::hash<std::string>{}(name) * 0x100000001b3ULL);
    const int workers = static_cast<int>(std::min<long>(jobs_, samples));
    std::vector<Accumulator> partial(workers);
    auto work = [&](int w) {
      const long begin = samples * w / workers, end = samples * (w + 1) / workers;
      Accumulator& acc = partial[w];
      for (long i = begin; i < end; ++i) {
        std::mt19937_64 rng = sample_rng(stream, static_cast<std::uint64_t>(i));
        Outcome o = fn(i, rng);
        acc.max_residual = std::max(acc.max_residual, o.residual);
        acc.min_metric = std::min(acc.min_metric, o.metric);
        if (!o.ok) {
          if (acc.failures == 0) {
            acc.first_index = i;
            acc.first = std::move(o);
          }
          ++acc.failures;
        }
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
      for (auto& t : threads) t.join();
    }

    InvariantResult r;
    r.name = name;
    r.samples = samples;
    r.tolerance = tolerance;
    const Accumulator* first = nullptr;
    double min_metric = std::numeric_limits<double>::infinity();
    for (const auto& acc : partial) {
      min_metric = std::min(min_metric, acc.min_metric);
      r.max_residual = std::max(r.max_residual, acc.max_residual);
      r.failures += acc.failures;
      if (acc.failures > 0 && (!first || acc.first_index < first->first_index)) first = &acc;
    }
    if (!metric_name.empty()) r.metrics[metric_name] = min_metric;
    if (first && !result_.first_failure)
      result_.first_failure = Counterexample{name, first->first_index, first->first.input, first->first.residual};
    result_.invariants.push_back(std::move(r));
    return result_.invariants.back();
  }

 private:
  SuiteResult& result_;
  int jobs_;
};

template <class S>
struct Suites {
  static constexpr bool exact = ScalarTraits<S>::is_exact;
  // Pass thresholds: exact mode demands equality.
  static constexpr double algebra_tol = exact ? 0.0 : 1e-12;
  static constexpr double spectrum_tol = 1e-10;

  static bool within(double residual, double tol) { return residual <= tol; }

  static Outcome outcome(double residual, double tol, const std::function<nlohmann::json()>& input) {
    Outcome o;
    o.residual = residual;
    o.ok = within(residual, tol);
    if (!o.ok) o.input = input();
    return o;
  }

  static nlohmann::json spinor_input(const Spinor<S>& psi) {
    nlohmann::json out = nlohmann::json::array();
    for (int k = 0; k < 4; ++k) out.push_back(scalar_json(psi(k)));
    return out;
  }

  static double max_abs_vec(const Spinor<S>& v) { return max_abs(v); }

  static void clifford(SuiteRunner& run, long samples) {
    run.run("clifford_relation", samples, algebra_tol, [](long, std::mt19937_64& rng) {
      const OneForm<S> alpha = random_real_covector<S>(rng);
      const Spinor<S> psi = random_spinor<S>(rng);
      const Spinor<S> lhs = clifford_oneform(alpha, clifford_oneform(alpha, psi));
      const Spinor<S> diff = lhs + alpha.norm_squared() * psi;
      const double scale = std::max(1e-300, magnitude(alpha.norm_squared()) * max_abs_vec(psi));
      return outcome(max_abs_vec(diff) / (exact ? 1.0 : scale), algebra_tol, [&] {
        return nlohmann::json{{"covector", {scalar_json(alpha.u1), scalar_json(alpha.u2), scalar_json(alpha.v1),
                                            scalar_json(alpha.v2)}},
                              {"spinor", spinor_input(psi)}};
      });
    });

    // Exhaustive: {xi^i, xib^j} = -2 delta_ij, {xi^i, xi^j} = 0 = {xib^i, xib^j}.
    run.run("anticommutator_table", 16, algebra_tol, [](long index, std::mt19937_64&) {
      const int kind_a = static_cast<int>(index / 8) % 2;  // 0: xi, 1: xib
      const int i = static_cast<int>(index / 4) % 2 + 1;
      const int kind_b = static_cast<int>(index / 2) % 2;
      const int j = static_cast<int>(index) % 2 + 1;
      auto make = [](int kind, int k) { return kind == 0 ? OneForm<S>::xi(k) : OneForm<S>::xi_bar(k); };
      const OneForm<S> x = make(kind_a, i), y = make(kind_b, j);
      const S expected = (kind_a != kind_b && i == j) ? S(-2) : S(0);
      double worst = 0.0;
      for (int e = 0; e < 4; ++e) {
        const Spinor<S> psi = spinor_basis<S>(e);
        const Spinor<S> ac = clifford_oneform(x, clifford_oneform(y, psi)) + clifford_oneform(y, clifford_oneform(x, psi));
        worst = std::max(worst, max_abs_vec(Spinor<S>(ac - expected * psi)));
      }
      return outcome(worst, algebra_tol, [&] {
        return nlohmann::json{{"left", kind_a == 0 ? "xi" : "xib"}, {"i", i}, {"right", kind_b == 0 ? "xi" : "xib"}, {"j", j}};
      });
    });

    run.run("wedge_contract_anticommutator", samples, algebra_tol, [](long, std::mt19937_64& rng) {
      const Spinor<S> psi = random_spinor<S>(rng);
      double worst = 0.0;
      for (int i = 1; i <= 2; ++i) {
        const Spinor<S> sum = contract_bar(i, wedge_bar(i, psi)) + wedge_bar(i, contract_bar(i, psi));
        worst = std::max(worst, max_abs_vec(Spinor<S>(sum - psi)));
      }
      return outcome(worst, algebra_tol, [&] { return nlohmann::json{{"spinor", spinor_input(psi)}}; });
    });

    run.run("grading", samples, algebra_tol, [](long, std::mt19937_64& rng) {
      const TwoForm<S> b11 = random_type11<S>(rng);
      TwoForm<S> b20;
      b20[TwoForm<S>::k12] = random_scalar<S>(rng);
      b20[TwoForm<S>::k1b2b] = random_scalar<S>(rng);
      const ActionMatrix<S> m11 = operator_matrix(b11);
      const ActionMatrix<S> m20 = operator_matrix(b20);
      double worst = 0.0;
      for (int r : {0, 3})
        for (int c : {1, 2}) {
          worst = std::max({worst, magnitude(m11(r, c)), magnitude(m11(c, r))});
          worst = std::max({worst, magnitude(m20(r, c)), magnitude(m20(c, r))});
        }
      worst = std::max(worst, max_abs(odd_block(m20)));
      worst = std::max({worst, magnitude(m20(0, 0)), magnitude(m20(3, 3))});
      return outcome(worst, algebra_tol, [&] {
        return nlohmann::json{{"type11", form_json(b11)}, {"type20_02", form_json(b20)}};
      });
    });

    run.run("linearity", samples, algebra_tol, [](long, std::mt19937_64& rng) {
      const TwoForm<S> b1 = random_two_form<S>(rng), b2 = random_two_form<S>(rng);
      const S s = random_scalar<S>(rng);
      const ActionMatrix<S> diff =
          operator_matrix(s * b1 + b2) - (s * operator_matrix(b1) + operator_matrix(b2));
      return outcome(max_abs(diff), algebra_tol, [&] {
        return nlohmann::json{{"beta1", form_json(b1)}, {"beta2", form_json(b2)}, {"s", scalar_json(s)}};
      });
    });
  }

  static double form_residual(const TwoForm<S>& f) {
    double r = 0.0;
    for (int k = 0; k < 6; ++k) r = std::max(r, magnitude(f[k]));
    return r;
  }

  static void decomp(SuiteRunner& run, long samples) {
    run.run("round_trip", samples, algebra_tol, [](long, std::mt19937_64& rng) {
      const TwoForm<S> beta = random_two_form<S>(rng);
      const Decomposition<S> d = decompose(beta);
      double r = form_residual(recompose(d) - beta);
      const Decomposition<S> d2 = decompose(recompose(d));
      for (const auto& [x, y] : {std::pair{d.f20, d2.f20}, {d.f02, d2.f02}, {d.trace, d2.trace}, {d.a, d2.a},
                                 {d.b, d2.b}, {d.c, d2.c}})
        r = std::max(r, magnitude(S(x - y)));
      return outcome(r, algebra_tol, [&] { return nlohmann::json{{"beta", form_json(beta)}}; });
    });

    run.run("hodge_eigenspaces", samples, algebra_tol, [](long, std::mt19937_64& rng) {
      const TwoForm<S> beta = random_two_form<S>(rng);
      const Decomposition<S> d = decompose(beta);
      const TwoForm<S> sd = sd_part(d), asd = asd_part(d);
      const double r = std::max(form_residual(hodge_star(sd) - sd), form_residual(hodge_star(asd) + asd));
      return outcome(r, algebra_tol, [&] { return nlohmann::json{{"beta", form_json(beta)}}; });
    });

    run.run("star_involution", samples, algebra_tol, [](long, std::mt19937_64& rng) {
      const TwoForm<S> beta = random_two_form<S>(rng);
      return outcome(form_residual(hodge_star(hodge_star(beta)) - beta), algebra_tol,
                     [&] { return nlohmann::json{{"beta", form_json(beta)}}; });
    });

    // Exact zero in both modes: Lambda only reads c_11b + c_22b, which cancel on ASD forms.
    run.run("lambda_kills_asd", samples, 0.0, [](long, std::mt19937_64& rng) {
      const TwoForm<S> beta = random_two_form<S>(rng);
      const S l = contract_lambda(asd_part(decompose(beta)));
      return outcome(magnitude(l), 0.0, [&] { return nlohmann::json{{"beta", form_json(beta)}}; });
    });

    run.run("kahler_normalization", 1, 0.0, [](long, std::mt19937_64&) {
      return outcome(magnitude(S(contract_lambda(kahler_form<S>()) - S(2))), 0.0,
                     [] { return nlohmann::json{{"beta", "omega"}}; });
    });

    run.run("sd_asd_orthogonal", samples, algebra_tol, [](long, std::mt19937_64& rng) {
      const TwoForm<S> beta = random_two_form<S>(rng);
      const Decomposition<S> d = decompose(beta);
      const double scale = exact ? 1.0 : std::max(1e-300, beta.norm() * beta.norm());
      return outcome(magnitude(form_inner(sd_part(d), asd_part(d))) / scale, algebra_tol,
                     [&] { return nlohmann::json{{"beta", form_json(beta)}}; });
    });

    run.run("u1_asd_coefficients", samples, algebra_tol, [](long, std::mt19937_64& rng) {
      const TwoForm<S> beta = random_u1_form<S>(rng);
      const Decomposition<S> d = decompose(beta);
      const double r = std::max(magnitude(S(d.b - ScalarTraits<S>::conj(d.a))),
                                magnitude(S(d.c - ScalarTraits<S>::conj(d.c))));
      return outcome(r, algebra_tol, [&] { return nlohmann::json{{"beta", form_json(beta)}}; });
    });
  }

  static void propositions(SuiteRunner& run, long samples) {
    // Indices 0..2 are the Omega^{1,1}_0 basis forms, the rest random (a, b, c).
    run.run("prop1_odd_block", samples + 3, algebra_tol, [](long index, std::mt19937_64& rng) {
      AsdCoefficients<S> k;
      if (index < 3) {
        (index == 0 ? k.a : index == 1 ? k.b : k.c) = S(1);
      } else {
        k = {random_scalar<S>(rng), random_scalar<S>(rng), random_scalar<S>(rng)};
      }
      Block2<S> expected;
      expected << S(2) * k.c, S(2) * k.b, S(2) * k.a, S(-2) * k.c;
      const TwoForm<S> beta = asd_form(k.a, k.b, k.c);
      return outcome(max_abs(Block2<S>(odd_block(operator_matrix(beta)) - expected)), algebra_tol,
                     [&] { return nlohmann::json{{"beta", form_json(beta)}}; });
    });

    run.run("prop2_even_block", samples, algebra_tol, [](long, std::mt19937_64& rng) {
      const TwoForm<S> beta = random_type11<S>(rng);
      const S il = ScalarTraits<S>::i() * contract_lambda(beta);
      Block2<S> expected = Block2<S>::Zero();
      expected(0, 0) = -il;
      expected(1, 1) = il;
      return outcome(max_abs(Block2<S>(even_block(operator_matrix(beta)) - expected)), algebra_tol,
                     [&] { return nlohmann::json{{"beta", form_json(beta)}}; });
    });

    run.run("prop3_omega_odd_null", samples, algebra_tol, [](long, std::mt19937_64& rng) {
      const S f = random_scalar<S>(rng);
      const TwoForm<S> beta = f * kahler_form<S>();
      return outcome(max_abs(odd_block(operator_matrix(beta))), algebra_tol,
                     [&] { return nlohmann::json{{"beta", form_json(beta)}}; });
    });

    run.run("asd_even_null", samples, algebra_tol, [](long, std::mt19937_64& rng) {
      const TwoForm<S> beta = asd_form(random_scalar<S>(rng), random_scalar<S>(rng), random_scalar<S>(rng));
      const ActionMatrix<S> m = operator_matrix(beta);
      double r = max_abs(even_block(m));
      for (int row : {0, 3})
        for (int col : {1, 2}) r = std::max({r, magnitude(m(row, col)), magnitude(m(col, row))});
      return outcome(r, algebra_tol, [&] { return nlohmann::json{{"beta", form_json(beta)}}; });
    });

    run.run("cross_check_blocks", samples, algebra_tol, [](long, std::mt19937_64& rng) {
      const TwoForm<S> beta = random_type11<S>(rng);
      const BlockResiduals r = cross_check_blocks(beta);
      return outcome(std::max(r.odd, r.even), algebra_tol,
                     [&] { return nlohmann::json{{"beta", form_json(beta)}}; });
    });

    // Cycles through Real, u(1)-valued (1,1), u(1)-valued with (2,0)+(0,2), and generic forms.
    run.run("hermiticity_criterion", samples, 0.0, [](long index, std::mt19937_64& rng) {
      TwoForm<S> beta;
      switch (index % 4) {
        case 0: beta = ScalarTraits<S>::i() * random_u1_form<S>(rng); break;
        case 1: beta = random_u1_type11<S>(rng); break;
        case 2: beta = random_u1_form<S>(rng); break;
        default: beta = random_two_form<S>(rng); break;
      }
      const bool hermitian = detail::is_hermitian(operator_matrix(beta), kAlgebraTolerance);
      const bool u1 = reality_class(beta) == RealityClass::PureImaginaryValued;
      return outcome(hermitian == u1 ? 0.0 : 1.0, 0.0, [&] {
        return nlohmann::json{{"beta", form_json(beta)}, {"hermitian", hermitian}, {"u1_valued", u1}};
      });
    });
  }

  static void theorem(SuiteRunner& run, long samples) {
    auto sweep = [](TwoForm<S> beta, FormRequirement req) {
      const bool ok = theorem_main_check(beta, req);
      return outcome(ok ? 0.0 : 1.0, 0.0, [&] { return nlohmann::json{{"beta", form_json(beta)}}; });
    };
    run.run("main_theorem_indefinite", samples, 0.0, [&](long, std::mt19937_64& rng) {
      TwoForm<S> beta;
      do beta = normalized(random_u1_type11<S>(rng));
      while (beta.is_zero());
      return sweep(beta, FormRequirement::Any11);
    });
    run.run("asd_case_indefinite", samples, 0.0, [&](long, std::mt19937_64& rng) {
      TwoForm<S> beta;
      do beta = normalized(random_u1_asd<S>(rng));
      while (beta.is_zero());
      return sweep(beta, FormRequirement::ASD);
    });
    run.run("sd_case_indefinite", samples, 0.0, [&](long, std::mt19937_64& rng) {
      S f;
      do f = random_real<S>(rng);
      while (ScalarTraits<S>::is_zero(f));
      return sweep(normalized(TwoForm<S>((f * ScalarTraits<S>::i()) * kahler_form<S>())), FormRequirement::SD);
    });

    // The extreme eigenvalues of a nonzero u(1)-valued (1,1)-form are >= |beta| / sqrt2 in magnitude.
    run.run("eigenvalue_floor", samples, 0.0, [](long, std::mt19937_64& rng) {
      TwoForm<S> beta;
      do beta = normalized(random_u1_type11<S>(rng));
      while (beta.is_zero());
      const DefinitenessVerdict v = classify(beta);
      const double n = beta.norm();
      const double top = v.eigenvalues[3].real() / n, bottom = -v.eigenvalues[0].real() / n;
      Outcome o;
      o.residual = std::max(0.0, 1.0 / std::sqrt(2.0) - std::min(top, bottom));
      o.ok = o.residual == 0.0;
      o.metric = std::min(top, bottom);
      if (!o.ok) o.input = {{"beta", form_json(beta)}, {"ratio", o.metric}};
      return o;
    }, "min_ratio");

    run.run("asd_spectrum_formula", samples, spectrum_tol, [](long, std::mt19937_64& rng) {
      TwoForm<S> beta;
      do beta = normalized(random_u1_asd<S>(rng));
      while (beta.is_zero());
      const Decomposition<S> d = decompose(beta);
      const Complex a = ScalarTraits<S>::to_complex(d.a), c = ScalarTraits<S>::to_complex(d.c);
      const double r = 2.0 * std::sqrt(c.real() * c.real() + std::norm(a));
      const std::array<double, 4> expected = {-r, 0.0, 0.0, r};
      const Spectrum got = action_spectrum(beta);
      double worst = 0.0;
      for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(got[k] - expected[k]) / r);
      return outcome(worst, spectrum_tol, [&] { return nlohmann::json{{"beta", form_json(beta)}}; });
    });
  }
};

template <class S>
void dispatch(std::string_view suite, SuiteRunner& run, long samples) {
  if (suite == "clifford") Suites<S>::clifford(run, samples);
  else if (suite == "decomp") Suites<S>::decomp(run, samples);
  else if (suite == "propositions") Suites<S>::propositions(run, samples);
  else if (suite == "theorem") Suites<S>::theorem(run, samples);
  else throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
}

}  // namespace

SuiteResult run_suite(std::string_view suite, long samples, std::uint64_t seed, ArithmeticMode mode, int jobs) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  SuiteResult result;
  result.suite = std::string(suite);
  result.mode = mode;
  result.requested_samples = samples;
  result.seed = seed;
  SuiteRunner runner(result, jobs);
  if (mode == ArithmeticMode::Exact) dispatch<ExactComplex>(suite, runner, samples);
  else dispatch<Complex>(suite, runner, samples);
  return result;
}

}  // namespace spinlab
