#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ophh/hermitian.hpp"
#include "ophh/inequality.hpp"
#include "ophh/scalar_function.hpp"

namespace ophh {

enum class PairSource { qualified, psd, hermitian };

std::string to_string(PairSource source);
PairSource pair_source_from_string(const std::string& name);

/// Seeded randomized verification run. Trials are pure functions of
/// (master_seed, trial index), so reruns reproduce identical results for any
/// thread count.
struct SuiteConfig {
  std::uint64_t master_seed = 42;
  int trials = 100;
  int dim = 2;
  PairSource pair_source = PairSource::qualified;
  Field field = Field::complex_entries;
  double eps_rel = 1e-8;
  int threads = 1;
  int lambda_grid = 21;        // equispaced, includes 0, 1/2, 1
  int vectors_per_pair = 8;    // random unit vectors added to the basis vectors
  int phi_grid_density = 21;   // grid for the scalar reduction checks
  int witness_cap = 8;
  // Spectra for the psd / qualified sources; the floor keeps t^s integrands
  // within quadrature headroom. The hermitian source draws from
  // [-hermitian_halfwidth, +hermitian_halfwidth].
  double spectrum_lo = 0.01;
  double spectrum_hi = 10.0;
  double hermitian_halfwidth = 10.0;
};

struct SuiteResult {
  std::string check_name;
  std::string inputs_digest;
  std::uint64_t master_seed = 0;
  int trials = 0;
  int dim = 0;
  PairSource pair_source = PairSource::qualified;
  double min_slack = 0.0;       // min over all trials and sides
  double max_tolerance = 0.0;   // largest tolerance used by any side
  int failure_count = 0;
  int vacuous_count = 0;
  std::vector<TheoremWitness> witnesses;  // ascending by trial, capped
  std::vector<std::pair<std::string, double>> quantities;

  /// "fail" when any trial failed, "vacuous" when every trial was vacuous,
  /// else "pass" (meaning: no counterexample found in `trials` trials).
  std::string verdict() const;
};

std::pair<HermitianMatrix, HermitianMatrix> draw_pair(const SuiteConfig& cfg, RngStream& rng);

/// Definitional check of operator s-convexity over a trial suite: for every
/// drawn pair and every lambda on the grid, the slack
///   (1-lambda)^s f(A) + lambda^s f(B) - f((1-lambda)A + lambda B)
/// must be PSD within tolerance. A pass is sampling evidence, never proof,
/// and is reported as "no counterexample found".
SuiteResult certify_operator_s_convexity(const ScalarFunction& f, double s,
                                         const SuiteConfig& cfg);

/// Chain suite for operator convex functions; `f` empty draws a fresh
/// quadratic (alpha in [0,3], beta, gamma in [-3,3]) per trial.
SuiteResult run_theorem5_suite(const std::optional<ScalarFunction>& f, const SuiteConfig& cfg);

SuiteResult run_theorem6_suite(const ScalarFunction& f, double s, const SuiteConfig& cfg);

/// Product bound suite; checks the mean bound (theorem 7), the midpoint
/// bound (theorem 8), or both, per unit vector (all standard basis vectors
/// plus `vectors_per_pair` random ones). The shared integral is computed
/// once per (pair, vector).
SuiteResult run_product_suite(const ScalarFunction& f, double s1, const ScalarFunction& g,
                              double s2, const SuiteConfig& cfg, bool check7, bool check8);

SuiteResult run_subadditivity_suite(double s, const SuiteConfig& cfg);

/// Midpoint-convexity identity for quadratics: per trial draws alpha, beta,
/// gamma and a pair, then requires
///   (f(A)+f(B))/2 - f((A+B)/2) == (alpha/4)(A-B)^2
/// within 1e-10 * max(1, norms) in spectral norm.
SuiteResult run_quadratic_identity_suite(const SuiteConfig& cfg);

/// Lemma-2 forward consistency at sample scale: whenever the pair-level
/// lambda-grid certification passes, the scalar reductions t -> <f(...)x,x>
/// must pass the second-sense falsifier for every sampled vector.
SuiteResult run_phi_consistency_suite(const ScalarFunction& f, double s, const SuiteConfig& cfg);

/// Scalar suites over random intervals [a, b] in [0, 10].
SuiteResult run_scalar_hh_suite(const ScalarFunction& f, double s, const SuiteConfig& cfg);
SuiteResult run_pachpatte_suite(const ScalarFunction& f, const ScalarFunction& g,
                                const SuiteConfig& cfg);
SuiteResult run_kirmaci_suite(const ScalarFunction& f, double s1, const ScalarFunction& g,
                              double s2, const SuiteConfig& cfg);

}  // namespace ophh
