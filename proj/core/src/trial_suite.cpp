#include "ophh/trial_suite.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "ophh/errors.hpp"
#include "ophh/scalar_hh.hpp"
#include "ophh/segment.hpp"
#include "ophh/special_functions.hpp"

namespace ophh {

std::string to_string(PairSource source) {
  switch (source) {
    case PairSource::qualified: return "qualified";
    case PairSource::psd: return "psd";
    case PairSource::hermitian: return "hermitian";
  }
  return "unknown";
}

PairSource pair_source_from_string(const std::string& name) {
  if (name == "qualified") return PairSource::qualified;
  if (name == "psd") return PairSource::psd;
  if (name == "hermitian") return PairSource::hermitian;
  throw InputError("unknown pair source \"" + name + "\" (expected qualified|psd|hermitian)");
}

std::string SuiteResult::verdict() const {
  if (failure_count > 0) return "fail";
  if (trials > 0 && vacuous_count == trials) return "vacuous";
  return "pass";
}

std::pair<HermitianMatrix, HermitianMatrix> draw_pair(const SuiteConfig& cfg, RngStream& rng) {
  switch (cfg.pair_source) {
    case PairSource::qualified:
      return random_qualified_pair(cfg.dim, rng, cfg.field, cfg.spectrum_lo, cfg.spectrum_hi);
    case PairSource::psd: {
      HermitianMatrix a = random_hermitian(cfg.dim, cfg.spectrum_lo, cfg.spectrum_hi, rng,
                                           cfg.field);
      HermitianMatrix b = random_hermitian(cfg.dim, cfg.spectrum_lo, cfg.spectrum_hi, rng,
                                           cfg.field);
      return {std::move(a), std::move(b)};
    }
    case PairSource::hermitian: {
      HermitianMatrix a = random_hermitian(cfg.dim, -cfg.hermitian_halfwidth,
                                           cfg.hermitian_halfwidth, rng, cfg.field);
      HermitianMatrix b = random_hermitian(cfg.dim, -cfg.hermitian_halfwidth,
                                           cfg.hermitian_halfwidth, rng, cfg.field);
      return {std::move(a), std::move(b)};
    }
  }
  throw InputError("invalid pair source");
}

namespace {

struct TrialOutcome {
  double min_slack = std::numeric_limits<double>::infinity();
  double max_tolerance = 0.0;
  bool failed = false;
  bool vacuous = false;
  std::optional<TheoremWitness> witness;
};

/// Fold one report into a trial outcome; on failure records a witness with
/// the worst side margin.
void fold_report(const InequalityReport& rep, int trial, const HermitianMatrix* a,
                 const HermitianMatrix* b, const ComplexVector* x, std::optional<double> lambda,
                 TrialOutcome& out) {
  for (const SideCheck& side : rep.sides) {
    out.min_slack = std::min(out.min_slack, side.min_eigenvalue);
    out.max_tolerance = std::max(out.max_tolerance, side.tolerance);
  }
  if (!rep.holds()) {
    out.failed = true;
    const double margin = rep.min_slack();
    if (!out.witness || margin < out.witness->min_eig) {
      TheoremWitness w;
      w.trial = trial;
      w.lambda = lambda;
      w.min_eig = margin;
      if (a != nullptr) w.a = *a;
      if (b != nullptr) w.b = *b;
      if (x != nullptr) w.x = *x;
      out.witness = std::move(w);
    }
  }
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  const int workers = std::min<int>(threads, n);
  std::atomic<int> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!abort.load(std::memory_order_relaxed)) {
        const int i = next.fetch_add(1);
        if (i >= n) break;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          abort.store(true, std::memory_order_relaxed);
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string base_digest(const std::string& name, const SuiteConfig& cfg) {
  std::ostringstream out;
  out << "check=" << name << ";seed=" << cfg.master_seed << ";trials=" << cfg.trials
      << ";dim=" << cfg.dim << ";pairs=" << to_string(cfg.pair_source)
      << ";field=" << (cfg.field == Field::complex_entries ? "complex" : "real")
      << ";eps_rel=" << cfg.eps_rel;
  return out.str();
}

SuiteResult run_trials(const std::string& name, const SuiteConfig& cfg,
                       const std::string& digest_extra,
                       const std::function<TrialOutcome(int, RngStream&)>& per_trial) {
  if (cfg.trials < 1) throw InputError("suite needs trials >= 1");
  if (cfg.dim < 1) throw InputError("suite needs dim >= 1");

  std::vector<TrialOutcome> outcomes(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](int i) {
    RngStream stream(cfg.master_seed, static_cast<std::uint64_t>(i));
    outcomes[i] = per_trial(i, stream);
  });

  SuiteResult result;
  result.check_name = name;
  result.inputs_digest = base_digest(name, cfg) + digest_extra;
  result.master_seed = cfg.master_seed;
  result.trials = cfg.trials;
  result.dim = cfg.dim;
  result.pair_source = cfg.pair_source;
  result.min_slack = std::numeric_limits<double>::infinity();
  for (const TrialOutcome& out : outcomes) {
    result.min_slack = std::min(result.min_slack, out.min_slack);
    result.max_tolerance = std::max(result.max_tolerance, out.max_tolerance);
    result.failure_count += out.failed ? 1 : 0;
    result.vacuous_count += out.vacuous ? 1 : 0;
    if (out.witness && static_cast<int>(result.witnesses.size()) < cfg.witness_cap) {
      result.witnesses.push_back(*out.witness);
    }
  }
  if (!std::isfinite(result.min_slack)) result.min_slack = 0.0;
  return result;
}

}  // namespace

SuiteResult certify_operator_s_convexity(const ScalarFunction& f, double s,
                                         const SuiteConfig& cfg) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw InputError("certify_operator_s_convexity requires s in (0, 1]");
  }
  if (cfg.lambda_grid < 3 || cfg.lambda_grid % 2 == 0) {
    throw InputError("lambda_grid must be odd and >= 3 so that 0, 1/2, 1 are grid points");
  }
  auto per_trial = [&f, s, &cfg](int trial, RngStream& rng) {
    auto [a, b] = draw_pair(cfg, rng);
    const InequalityReport rep =
        check_s_convexity_on_pair(f, s, a, b, cfg.lambda_grid, cfg.eps_rel);
    TrialOutcome out;
    fold_report(rep, trial, &a, &b, nullptr, std::nullopt, out);
    if (out.witness && rep.witness) {
      out.witness->lambda = rep.witness->lambda;
      out.witness->x = rep.witness->x;
    }
    return out;
  };
  return run_trials(s == 1.0 ? "operator-convexity" : "operator-s-convexity", cfg,
                    ";f=" + f.describe() + ";s=" + std::to_string(s), per_trial);
}

SuiteResult run_theorem5_suite(const std::optional<ScalarFunction>& f, const SuiteConfig& cfg) {
  auto per_trial = [&f, &cfg](int trial, RngStream& rng) {
    const ScalarFunction fn =
        f ? *f
          : ScalarFunction::quadratic(rng.uniform(0.0, 3.0), rng.uniform(-3.0, 3.0),
                                      rng.uniform(-3.0, 3.0));
    auto [a, b] = draw_pair(cfg, rng);
    TrialOutcome out;
    fold_report(check_theorem5(fn, a, b, cfg.eps_rel), trial, &a, &b, nullptr, std::nullopt, out);
    return out;
  };
  return run_trials("theorem5", cfg,
                    f ? ";f=" + f->describe() : std::string(";f=random-quadratic"), per_trial);
}

SuiteResult run_theorem6_suite(const ScalarFunction& f, double s, const SuiteConfig& cfg) {
  auto per_trial = [&f, s, &cfg](int trial, RngStream& rng) {
    auto [a, b] = draw_pair(cfg, rng);
    TrialOutcome out;
    fold_report(check_theorem6(f, s, a, b, cfg.eps_rel), trial, &a, &b, nullptr, std::nullopt,
                out);
    return out;
  };
  return run_trials("theorem6", cfg, ";f=" + f.describe() + ";s=" + std::to_string(s), per_trial);
}

SuiteResult run_product_suite(const ScalarFunction& f, double s1, const ScalarFunction& g,
                              double s2, const SuiteConfig& cfg, bool check7, bool check8) {
  if (!check7 && !check8) throw InputError("product suite needs at least one bound to check");
  auto per_trial = [&, s1, s2, check7, check8](int trial, RngStream& rng) {
    auto [a, b] = draw_pair(cfg, rng);
    std::vector<ComplexVector> xs;
    for (int i = 0; i < cfg.dim; ++i) {
      ComplexVector e = ComplexVector::Zero(cfg.dim);
      e(i) = 1.0;
      xs.push_back(std::move(e));
    }
    for (int i = 0; i < cfg.vectors_per_pair; ++i) {
      xs.push_back(random_unit_vector(cfg.dim, rng, cfg.field));
    }
    TrialOutcome out;
    for (const ComplexVector& x : xs) {
      const ProductTerms terms = product_terms(f, g, a, b, x);
      if (check7) {
        fold_report(check_theorem7(s1, s2, terms, cfg.eps_rel), trial, &a, &b, &x, std::nullopt,
                    out);
      }
      if (check8) {
        fold_report(check_theorem8(s1, s2, terms, cfg.eps_rel), trial, &a, &b, &x, std::nullopt,
                    out);
      }
    }
    return out;
  };
  std::string name = check7 && check8 ? "theorem7+8" : (check7 ? "theorem7" : "theorem8");
  SuiteResult result = run_trials(name, cfg,
                                  ";f=" + f.describe() + ";s1=" + std::to_string(s1) +
                                      ";g=" + g.describe() + ";s2=" + std::to_string(s2),
                                  per_trial);
  result.quantities = {{"coeff_reciprocal", 1.0 / (s1 + s2 + 1.0)},
                       {"coeff_beta", beta_function(s1 + 1.0, s2 + 1.0)}};
  return result;
}

SuiteResult run_subadditivity_suite(double s, const SuiteConfig& cfg) {
  auto per_trial = [s, &cfg](int trial, RngStream& rng) {
    auto [a, b] = draw_pair(cfg, rng);
    TrialOutcome out;
    fold_report(check_subadditivity(s, a, b, cfg.eps_rel), trial, &a, &b, nullptr, std::nullopt,
                out);
    return out;
  };
  return run_trials("subadditivity", cfg, ";s=" + std::to_string(s), per_trial);
}

SuiteResult run_quadratic_identity_suite(const SuiteConfig& cfg) {
  auto per_trial = [&cfg](int trial, RngStream& rng) {
    const double alpha = rng.uniform(0.0, 3.0);
    const ScalarFunction fn =
        ScalarFunction::quadratic(alpha, rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
    auto [a, b] = draw_pair(cfg, rng);
    const HermitianMatrix lhs = (apply_function(fn, a) + apply_function(fn, b)) * 0.5 -
                                apply_function(fn, segment_point(a, b, 0.5));
    const HermitianMatrix diff = a - b;
    const HermitianMatrix rhs =
        hermitian_part((alpha / 4.0) * (diff.entries() * diff.entries()));
    const double tol =
        1e-10 * std::max({1.0, lhs.spectral_norm(), rhs.spectral_norm()});
    const double deviation = (lhs - rhs).spectral_norm();
    TrialOutcome out;
    out.min_slack = -deviation;
    out.max_tolerance = tol;
    if (deviation > tol) {
      out.failed = true;
      TheoremWitness w;
      w.trial = trial;
      w.lambda = 0.5;
      w.min_eig = -deviation;
      w.a = a;
      w.b = b;
      out.witness = std::move(w);
    }
    return out;
  };
  return run_trials("quadratic-identity", cfg, ";f=random-quadratic", per_trial);
}

SuiteResult run_phi_consistency_suite(const ScalarFunction& f, double s, const SuiteConfig& cfg) {
  auto per_trial = [&f, s, &cfg](int trial, RngStream& rng) {
    auto [a, b] = draw_pair(cfg, rng);
    // Pair-level lambda-grid certification.
    const InequalityReport pair_rep =
        check_s_convexity_on_pair(f, s, a, b, cfg.lambda_grid, cfg.eps_rel);
    const bool pair_holds = pair_rep.holds();
    TrialOutcome out;
    for (const SideCheck& side : pair_rep.sides) {
      out.min_slack = std::min(out.min_slack, side.min_eigenvalue);
      out.max_tolerance = std::max(out.max_tolerance, side.tolerance);
    }
    const PhiReport phi =
        check_phi_equivalence(f, s, a, b, cfg.vectors_per_pair, cfg.phi_grid_density, rng);
    // Forward direction: an operator-level pass must not coexist with a
    // scalar-reduction refutation.
    if (pair_holds && !phi.all_hold) {
      out.failed = true;
      const PhiVectorResult& bad = phi.vectors[*phi.refuting_index];
      TheoremWitness w;
      w.trial = trial;
      w.lambda = bad.verdict.witness ? std::optional<double>(bad.verdict.witness->lambda)
                                     : std::nullopt;
      w.min_eig = -bad.verdict.max_violation;
      w.a = a;
      w.b = b;
      w.x = bad.x;
      out.witness = std::move(w);
    }
    return out;
  };
  return run_trials("phi-consistency", cfg, ";f=" + f.describe() + ";s=" + std::to_string(s),
                    per_trial);
}

namespace {

std::pair<double, double> draw_interval(RngStream& rng) {
  // Random [a, b] in [0, 10] with a sane minimum width.
  const double a = rng.uniform(0.0, 9.0);
  const double b = a + rng.uniform(0.1, 10.0 - a);
  return {a, b};
}

}  // namespace

SuiteResult run_scalar_hh_suite(const ScalarFunction& f, double s, const SuiteConfig& cfg) {
  auto per_trial = [&f, s](int trial, RngStream& rng) {
    const auto [a, b] = draw_interval(rng);
    const ScalarHhReport rep = check_scalar_hh(f, s, a, b);
    TrialOutcome out;
    out.min_slack = std::min(rep.left_slack, rep.right_slack);
    out.max_tolerance = 1e-9;
    if (!rep.holds) {
      out.failed = true;
      TheoremWitness w;
      w.trial = trial;
      w.min_eig = out.min_slack;
      out.witness = std::move(w);
    }
    return out;
  };
  return run_trials("scalar-hh", cfg, ";f=" + f.describe() + ";s=" + std::to_string(s),
                    per_trial);
}

SuiteResult run_pachpatte_suite(const ScalarFunction& f, const ScalarFunction& g,
                                const SuiteConfig& cfg) {
  auto per_trial = [&f, &g](int trial, RngStream& rng) {
    const auto [a, b] = draw_interval(rng);
    const ProductBoundReport rep = check_pachpatte(f, g, a, b);
    TrialOutcome out;
    if (!rep.preconditions_ok) {
      out.vacuous = true;
      out.min_slack = std::numeric_limits<double>::infinity();
      return out;
    }
    out.min_slack = std::min(rep.first_slack, rep.second_slack);
    out.max_tolerance = 1e-9;
    if (!rep.holds) {
      out.failed = true;
      TheoremWitness w;
      w.trial = trial;
      w.min_eig = out.min_slack;
      out.witness = std::move(w);
    }
    return out;
  };
  return run_trials("pachpatte", cfg, ";f=" + f.describe() + ";g=" + g.describe(), per_trial);
}

SuiteResult run_kirmaci_suite(const ScalarFunction& f, double s1, const ScalarFunction& g,
                              double s2, const SuiteConfig& cfg) {
  auto per_trial = [&f, s1, &g, s2](int trial, RngStream& rng) {
    const auto [a, b] = draw_interval(rng);
    const KirmaciReport rep = check_kirmaci(f, s1, g, s2, a, b);
    TrialOutcome out;
    if (!rep.preconditions_ok) {
      out.vacuous = true;
      out.min_slack = std::numeric_limits<double>::infinity();
      return out;
    }
    out.min_slack = rep.slack;
    out.max_tolerance = 1e-9;
    if (!rep.holds) {
      out.failed = true;
      TheoremWitness w;
      w.trial = trial;
      w.min_eig = rep.slack;
      out.witness = std::move(w);
    }
    return out;
  };
  return run_trials("kirmaci", cfg,
                    ";f=" + f.describe() + ";s1=" + std::to_string(s1) + ";g=" + g.describe() +
                        ";s2=" + std::to_string(s2),
                    per_trial);
}

}  // namespace ophh
