// Command-line front end: seeded verification / falsification suites for the
// operator s-convexity inequalities, one-command reproductions of the fixed
// examples, and parameter sweeps. Reports are JSON; exit codes are
//   0  all checks passed / reproduction matched,
//   1  a falsifier found a witness or a verify suite failed,
//   2  input or precondition errors.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ophh/errors.hpp"
#include "ophh/hermitian.hpp"
#include "ophh/inequality.hpp"
#include "ophh/quadrature.hpp"
#include "ophh/report_json.hpp"
#include "ophh/scalar_convexity.hpp"
#include "ophh/scalar_function.hpp"
#include "ophh/scalar_hh.hpp"
#include "ophh/segment.hpp"
#include "ophh/special_functions.hpp"
#include "ophh/trial_suite.hpp"

namespace {

using namespace ophh;

struct RunConfig {
  std::string command;  // verify | falsify | reproduce | sweep
  std::string target;   // theorem / property / example name
  std::string f_spec;
  std::string g_spec;
  double s = 0.5;
  double s1 = 0.5;
  double s2 = 0.5;
  int dim = 2;
  int trials = 100;
  std::uint64_t seed = 42;
  std::string pairs;  // empty = per-target default
  double tol = 1e-8;
  std::string json_path;
  int threads = 1;
  bool real_field = false;
  int grid = 201;
  std::string a_path;  // fixed-pair mode: matrix JSON files
  std::string b_path;
  // sweep axis
  std::string axis;
  double axis_from = 0.0;
  double axis_to = 0.0;
  int axis_steps = 0;
};

/// Resolve --f/--g: a registry name, or a path to a function JSON file.
/// "power" takes its exponent from the supplied s parameter.
ScalarFunction resolve_function(const std::string& spec, double s) {
  if (spec == "power") return ScalarFunction::power(s);
  if (spec == "cubic") return ScalarFunction::cubic();
  if (spec == "quadratic") return ScalarFunction::quadratic(1.0, 0.0, 0.0);
  if (spec == "identity" || spec == "affine") return ScalarFunction::identity();
  if (spec == "constant") return ScalarFunction::constant(1.0);
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    std::ifstream in(spec);
    if (!in) throw InputError("cannot open function file " + spec);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return ScalarFunction::from_json(text);
  }
  throw InputError("unknown function spec \"" + spec +
                   "\" (expected power|cubic|quadratic|identity|constant or a .json path)");
}

HermitianMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return matrix_from_json(text);
  } catch (const InputError& e) {
    throw InputError("in " + path + ": " + e.what());
  }
}

SuiteConfig make_suite_config(const RunConfig& rc, PairSource default_source) {
  SuiteConfig cfg;
  cfg.master_seed = rc.seed;
  cfg.trials = rc.trials;
  cfg.dim = rc.dim;
  cfg.pair_source = rc.pairs.empty() ? default_source : pair_source_from_string(rc.pairs);
  cfg.field = rc.real_field ? Field::real_entries : Field::complex_entries;
  cfg.eps_rel = rc.tol;
  cfg.threads = rc.threads;
  return cfg;
}

void print_suite_summary(const SuiteResult& r) {
  std::printf("[%s] %s", r.check_name.c_str(), r.verdict().c_str());
  if (r.verdict() == "pass") {
    std::printf(": no counterexample found in %d trials (seed %llu)\n", r.trials,
                static_cast<unsigned long long>(r.master_seed));
  } else if (r.verdict() == "vacuous") {
    std::printf(": preconditions failed in every trial\n");
  } else {
    std::printf(": %d of %d trials failed\n", r.failure_count, r.trials);
  }
  std::printf("  min slack %.6e, tolerance %.3e, pairs=%s, dim=%d\n", r.min_slack,
              r.max_tolerance, to_string(r.pair_source).c_str(), r.dim);
  for (const auto& [k, v] : r.quantities) std::printf("  %s = %.17g\n", k.c_str(), v);
  if (!r.witnesses.empty()) {
    const TheoremWitness& w = r.witnesses.front();
    std::printf("  first witness: trial %d", w.trial);
    if (w.lambda) std::printf(", lambda = %g", *w.lambda);
    std::printf(", margin %.6e\n", w.min_eig);
  }
}

void maybe_write_json(const RunConfig& rc, const std::string& text) {
  if (rc.json_path.empty()) return;
  write_text_atomic(rc.json_path, text);
  std::printf("  report written to %s\n", rc.json_path.c_str());
}

SuiteResult dispatch_suite(const RunConfig& rc, const std::string& target) {
  if (target == "theorem5") {
    SuiteConfig cfg = make_suite_config(rc, PairSource::hermitian);
    std::optional<ScalarFunction> f;
    if (!rc.f_spec.empty() && rc.f_spec != "random-quadratic") {
      f = resolve_function(rc.f_spec, rc.s);
    }
    return run_theorem5_suite(f, cfg);
  }
  if (target == "theorem6") {
    SuiteConfig cfg = make_suite_config(rc, PairSource::qualified);
    return run_theorem6_suite(resolve_function(rc.f_spec.empty() ? "power" : rc.f_spec, rc.s),
                              rc.s, cfg);
  }
  if (target == "theorem7" || target == "theorem8") {
    SuiteConfig cfg = make_suite_config(rc, PairSource::qualified);
    const ScalarFunction f = resolve_function(rc.f_spec.empty() ? "power" : rc.f_spec, rc.s1);
    const ScalarFunction g = resolve_function(rc.g_spec.empty() ? "power" : rc.g_spec, rc.s2);
    return run_product_suite(f, rc.s1, g, rc.s2, cfg, target == "theorem7",
                             target == "theorem8");
  }
  if (target == "subadditivity") {
    SuiteConfig cfg = make_suite_config(rc, PairSource::qualified);
    return run_subadditivity_suite(rc.s, cfg);
  }
  if (target == "phi-consistency") {
    SuiteConfig cfg = make_suite_config(rc, PairSource::qualified);
    return run_phi_consistency_suite(
        resolve_function(rc.f_spec.empty() ? "power" : rc.f_spec, rc.s), rc.s, cfg);
  }
  if (target == "scalar-hh") {
    SuiteConfig cfg = make_suite_config(rc, PairSource::qualified);
    return run_scalar_hh_suite(resolve_function(rc.f_spec.empty() ? "power" : rc.f_spec, rc.s),
                               rc.s, cfg);
  }
  if (target == "pachpatte") {
    SuiteConfig cfg = make_suite_config(rc, PairSource::qualified);
    return run_pachpatte_suite(resolve_function(rc.f_spec.empty() ? "identity" : rc.f_spec, 1.0),
                               resolve_function(rc.g_spec.empty() ? "identity" : rc.g_spec, 1.0),
                               cfg);
  }
  if (target == "kirmaci") {
    SuiteConfig cfg = make_suite_config(rc, PairSource::qualified);
    return run_kirmaci_suite(resolve_function(rc.f_spec.empty() ? "power" : rc.f_spec, rc.s1),
                             rc.s1,
                             resolve_function(rc.g_spec.empty() ? "power" : rc.g_spec, rc.s2),
                             rc.s2, cfg);
  }
  throw InputError("unknown verify/sweep target \"" + target +
                   "\" (expected theorem5|theorem6|theorem7|theorem8|subadditivity|"
                   "phi-consistency|scalar-hh|pachpatte|kirmaci)");
}

void print_report_summary(const InequalityReport& rep) {
  std::printf("[%s] %s\n", rep.name.c_str(), rep.holds() ? "pass" : "fail");
  for (const SideCheck& s : rep.sides) {
    std::printf("  %-45s min eig %+.6e (tol %.2e) %s\n", s.label.c_str(), s.min_eigenvalue,
                s.tolerance, s.holds ? "ok" : "VIOLATED");
  }
}

/// Fixed-pair mode: both --A and --B name matrix JSON files.
int run_fixed_pair_check(const RunConfig& rc) {
  const HermitianMatrix a = load_matrix_file(rc.a_path);
  const HermitianMatrix b = load_matrix_file(rc.b_path);
  InequalityReport rep;
  if (rc.target == "theorem5") {
    rep = check_theorem5(resolve_function(rc.f_spec.empty() ? "quadratic" : rc.f_spec, rc.s), a,
                         b, rc.tol);
  } else if (rc.target == "theorem6") {
    rep = check_theorem6(resolve_function(rc.f_spec.empty() ? "power" : rc.f_spec, rc.s), rc.s, a,
                         b, rc.tol);
  } else if (rc.target == "subadditivity") {
    rep = check_subadditivity(rc.s, a, b, rc.tol);
  } else if (rc.target == "operator-convexity") {
    rep = check_s_convexity_on_pair(resolve_function(rc.f_spec.empty() ? "cubic" : rc.f_spec, 1.0),
                                    1.0, a, b, 21, rc.tol);
  } else if (rc.target == "operator-s-convexity") {
    rep = check_s_convexity_on_pair(resolve_function(rc.f_spec.empty() ? "power" : rc.f_spec, rc.s),
                                    rc.s, a, b, 21, rc.tol);
  } else {
    throw InputError("fixed-pair mode (--A/--B) supports theorem5|theorem6|subadditivity|"
                     "operator-convexity|operator-s-convexity, not \"" + rc.target + "\"");
  }
  rep.inputs_digest = "A=" + rc.a_path + ";B=" + rc.b_path;
  print_report_summary(rep);
  maybe_write_json(rc, inequality_report_to_json(rep));
  return rep.holds() ? 0 : 1;
}

int run_verify(const RunConfig& rc) {
  if (!rc.a_path.empty() || !rc.b_path.empty()) {
    if (rc.a_path.empty() || rc.b_path.empty()) {
      throw InputError("fixed-pair mode needs both --A and --B");
    }
    return run_fixed_pair_check(rc);
  }
  const SuiteResult result = dispatch_suite(rc, rc.target);
  print_suite_summary(result);
  maybe_write_json(rc, suite_result_to_json(result));
  return result.verdict() == "pass" ? 0 : 1;
}

int run_falsify(const RunConfig& rc) {
  if (!rc.a_path.empty() || !rc.b_path.empty()) {
    if (rc.a_path.empty() || rc.b_path.empty()) {
      throw InputError("fixed-pair mode needs both --A and --B");
    }
    return run_fixed_pair_check(rc);
  }
  SuiteResult result;
  if (rc.target == "operator-convexity") {
    SuiteConfig cfg = make_suite_config(rc, PairSource::psd);
    result = certify_operator_s_convexity(
        resolve_function(rc.f_spec.empty() ? "cubic" : rc.f_spec, 1.0), 1.0, cfg);
  } else if (rc.target == "operator-s-convexity") {
    SuiteConfig cfg = make_suite_config(rc, PairSource::psd);
    result = certify_operator_s_convexity(
        resolve_function(rc.f_spec.empty() ? "power" : rc.f_spec, rc.s), rc.s, cfg);
  } else if (rc.target == "s-convex-second" || rc.target == "s-convex-first") {
    const ScalarFunction f = resolve_function(rc.f_spec, rc.s);
    const ScalarVerdict v = rc.target == "s-convex-second"
                                ? is_s_convex_second(f, rc.s, rc.grid)
                                : is_s_convex_first(f, rc.s, rc.grid);
    if (v.holds) {
      std::printf("[%s] not refuted on the grid (%d points per axis): %s with s = %g\n",
                  rc.target.c_str(), rc.grid, f.describe().c_str(), rc.s);
    } else {
      std::printf("[%s] refuted: %s with s = %g, witness x = %g, y = %g, lambda = %g, "
                  "violation %.6e\n",
                  rc.target.c_str(), f.describe().c_str(), rc.s, v.witness->x, v.witness->y,
                  v.witness->lambda, v.max_violation);
    }
    nlohmann::json j;
    j["theorem"] = rc.target;
    j["function"] = nlohmann::json::parse(f.to_json());
    j["s"] = rc.s;
    j["grid_density"] = rc.grid;
    j["verdict"] = v.holds ? "not-refuted" : "refuted";
    j["max_violation"] = v.max_violation;
    if (v.witness) {
      j["witness"] = {{"x", v.witness->x}, {"y", v.witness->y}, {"lambda", v.witness->lambda}};
    }
    maybe_write_json(rc, j.dump(2));
    return v.holds ? 0 : 1;
  } else {
    throw InputError("unknown falsify target \"" + rc.target +
                     "\" (expected operator-convexity|operator-s-convexity|s-convex-second|"
                     "s-convex-first)");
  }
  print_suite_summary(result);
  maybe_write_json(rc, suite_result_to_json(result));
  return result.failure_count > 0 ? 1 : 0;
}

int run_reproduce(const RunConfig& rc) {
  if (rc.target == "example-cubic") {
    const InequalityReport rep = reproduce_cubic_counterexample();
    const bool ok = rep.holds();
    std::printf("[example-cubic] %s: slack (A^3+B^3)/2 - ((A+B)/2)^3 %s (1/8)[[67,-34],[-34,17]]"
                ", min eigenvalue %.6f\n",
                ok ? "reproduced" : "MISMATCH", ok ? "matches" : "deviates from",
                rep.witness->min_eig);
    maybe_write_json(rc, inequality_report_to_json(rep));
    return ok ? 0 : 1;
  }
  if (rc.target == "example-quadratic") {
    // Midpoint-convexity identity for quadratics across dims 2..6.
    bool all_ok = true;
    nlohmann::json rows = nlohmann::json::array();
    for (int dim = 2; dim <= 6; ++dim) {
      RunConfig sub = rc;
      sub.dim = dim;
      sub.trials = std::max(1, rc.trials / 5);
      SuiteConfig cfg = make_suite_config(sub, PairSource::hermitian);
      const SuiteResult r = run_quadratic_identity_suite(cfg);
      print_suite_summary(r);
      rows.push_back(nlohmann::json::parse(suite_result_to_json(r, false)));
      all_ok = all_ok && r.verdict() == "pass";
    }
    nlohmann::json j;
    j["theorem"] = "example-quadratic";
    j["rows"] = std::move(rows);
    j["verdict"] = all_ok ? "pass" : "fail";
    maybe_write_json(rc, j.dump(2));
    return all_ok ? 0 : 1;
  }
  if (rc.target == "sharpness-scalar") {
    // Equality in the right-hand scalar bound at f = t^s, a = 0, b = 1:
    // the mean integral equals 1/(s+1) = (f(0)+f(1))/(s+1).
    bool all_ok = true;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 1; i <= 9; ++i) {
      const double s = 0.1 * i;
      const ScalarHhReport rep = check_scalar_hh(ScalarFunction::power(s), s, 0.0, 1.0);
      const double expected = 1.0 / (s + 1.0);
      const double deviation = std::fabs(rep.mean_integral - expected);
      const bool ok = deviation <= 1e-10 && rep.holds;
      std::printf("  s = %.1f: mean integral %.12f vs 1/(s+1) = %.12f, deviation %.3e %s\n", s,
                  rep.mean_integral, expected, deviation, ok ? "(equal)" : "(MISMATCH)");
      nlohmann::json row;
      row["s"] = s;
      row["mean_integral"] = rep.mean_integral;
      row["endpoint_term"] = rep.endpoint_term;
      row["deviation"] = deviation;
      row["holds"] = ok;
      rows.push_back(std::move(row));
      all_ok = all_ok && ok;
    }
    std::printf("[sharpness-scalar] %s\n", all_ok ? "pass" : "fail");
    nlohmann::json j;
    j["theorem"] = "sharpness-scalar";
    j["rows"] = std::move(rows);
    j["verdict"] = all_ok ? "pass" : "fail";
    maybe_write_json(rc, j.dump(2));
    return all_ok ? 0 : 1;
  }
  throw InputError("unknown reproduction \"" + rc.target +
                   "\" (expected example-cubic|example-quadratic|sharpness-scalar)");
}

int run_sweep(const RunConfig& rc) {
  if (rc.axis != "s" && rc.axis != "dim" && rc.axis != "trials") {
    throw InputError("sweep needs --axis s|dim|trials");
  }
  if (rc.axis_steps < 1) throw InputError("sweep needs --steps >= 1");
  bool all_ok = true;
  nlohmann::json rows = nlohmann::json::array();
  std::printf("%-10s %-12s %-14s %s\n", rc.axis.c_str(), "verdict", "min slack", "failures");
  for (int i = 0; i < rc.axis_steps; ++i) {
    const double v = rc.axis_steps == 1
                         ? rc.axis_from
                         : rc.axis_from + (rc.axis_to - rc.axis_from) * i / (rc.axis_steps - 1);
    RunConfig point = rc;
    if (rc.axis == "s") {
      point.s = v;
      point.s1 = v;
      point.s2 = v;
    } else if (rc.axis == "dim") {
      point.dim = static_cast<int>(std::lround(v));
    } else {
      point.trials = std::max(1, static_cast<int>(std::lround(v)));
    }
    const SuiteResult r = dispatch_suite(point, rc.target);
    std::printf("%-10.4g %-12s %-14.4e %d\n", rc.axis == "s" ? v : std::floor(v),
                r.verdict().c_str(), r.min_slack, r.failure_count);
    nlohmann::json row = nlohmann::json::parse(suite_result_to_json(r, false));
    row["axis_value"] = v;
    rows.push_back(std::move(row));
    all_ok = all_ok && r.verdict() == "pass";
  }
  nlohmann::json j;
  j["theorem"] = rc.target;
  j["axis"] = rc.axis;
  j["rows"] = std::move(rows);
  j["verdict"] = all_ok ? "pass" : "fail";
  maybe_write_json(rc, j.dump(2));
  std::printf("[sweep %s over %s] %s\n", rc.target.c_str(), rc.axis.c_str(),
              all_ok ? "pass" : "fail");
  return all_ok ? 0 : 1;
}

void add_common_options(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--f", rc.f_spec, "function spec (registry name or .json path)");
  cmd->add_option("--g", rc.g_spec, "second function spec");
  cmd->add_option("--s", rc.s, "s parameter");
  cmd->add_option("--s1", rc.s1, "first s parameter");
  cmd->add_option("--s2", rc.s2, "second s parameter");
  cmd->add_option("--dim", rc.dim, "matrix dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--trials", rc.trials, "number of randomized trials")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", rc.seed, "master seed (default: env OPHH_SEED, else 42)")
      ->envname("OPHH_SEED");
  cmd->add_option("--pairs", rc.pairs, "pair source: qualified|psd|hermitian");
  cmd->add_option("--tol", rc.tol, "relative tolerance for Loewner comparisons");
  cmd->add_option("--json", rc.json_path, "write the JSON report to this path");
  cmd->add_option("--threads", rc.threads, "worker threads (results independent of N)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--real", rc.real_field, "draw real symmetric matrices instead of complex");
  cmd->add_option("--grid", rc.grid, "grid density for scalar falsifiers");
  cmd->add_option("--A", rc.a_path, "matrix JSON file: run the check on this fixed pair");
  cmd->add_option("--B", rc.b_path, "matrix JSON file (second element of the fixed pair)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for operator s-convexity and Hermite-Hadamard type "
               "inequalities in the Loewner order"};
  app.require_subcommand(1);
  RunConfig rc;

  CLI::App* verify = app.add_subcommand("verify", "run a seeded verification suite");
  verify->add_option("theorem", rc.target, "check to run")->required();
  add_common_options(verify, rc);

  CLI::App* falsify = app.add_subcommand("falsify", "search for a counterexample");
  falsify->add_option("property", rc.target, "property to attack")->required();
  add_common_options(falsify, rc);

  CLI::App* reproduce = app.add_subcommand("reproduce", "re-derive a fixed example");
  reproduce->add_option("example", rc.target, "example-cubic|example-quadratic|sharpness-scalar")
      ->required();
  add_common_options(reproduce, rc);

  CLI::App* sweep = app.add_subcommand("sweep", "run a check across a parameter axis");
  sweep->add_option("theorem", rc.target, "check to run")->required();
  add_common_options(sweep, rc);
  sweep->add_option("--axis", rc.axis, "s|dim|trials")->required();
  sweep->add_option("--from", rc.axis_from, "axis start")->required();
  sweep->add_option("--to", rc.axis_to, "axis end")->required();
  sweep->add_option("--steps", rc.axis_steps, "number of points")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      rc.command = "verify";
      return run_verify(rc);
    }
    if (falsify->parsed()) {
      rc.command = "falsify";
      return run_falsify(rc);
    }
    if (reproduce->parsed()) {
      rc.command = "reproduce";
      return run_reproduce(rc);
    }
    rc.command = "sweep";
    return run_sweep(rc);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
