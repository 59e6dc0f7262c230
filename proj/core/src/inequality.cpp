#include "ophh/inequality.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ophh/errors.hpp"
#include "ophh/segment.hpp"
#include "ophh/special_functions.hpp"

namespace ophh {

bool InequalityReport::holds() const {
  for (const SideCheck& s : sides) {
    if (!s.holds) return false;
  }
  return true;
}

double InequalityReport::min_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const SideCheck& s : sides) m = std::min(m, s.min_eigenvalue);
  return m;
}

double InequalityReport::max_tolerance() const {
  double m = 0.0;
  for (const SideCheck& s : sides) m = std::max(m, s.tolerance);
  return m;
}

namespace {

SideCheck loewner_side(std::string label, const HermitianMatrix& lhs, const HermitianMatrix& rhs,
                       double eps_rel) {
  const double tol = loewner_tolerance(lhs, rhs, eps_rel);
  const PsdVerdict v = loewner_leq(lhs, rhs, tol);
  return SideCheck{std::move(label), v.min_eigenvalue, tol, v.is_psd};
}

SideCheck scalar_side(std::string label, double lhs, double rhs, double eps_rel) {
  const double tol = eps_rel * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
  const double slack = rhs - lhs;
  return SideCheck{std::move(label), slack, tol, slack >= -tol};
}

void require_psd_input(const HermitianMatrix& m, const char* which, const char* who,
                       double eps_rel) {
  const PsdVerdict v = is_psd(m, eps_rel * std::max(1.0, m.spectral_norm()));
  if (!v.is_psd) {
    std::ostringstream msg;
    msg << who << " requires PSD operands; " << which << " has eigenvalue " << v.min_eigenvalue;
    throw PreconditionError(msg.str());
  }
}

void require_unit(const ComplexVector& x, const char* who) {
  if (std::fabs(x.norm() - 1.0) > 1e-12) {
    throw PreconditionError(std::string(who) + " requires a unit vector, got norm " +
                            std::to_string(x.norm()));
  }
}

}  // namespace

InequalityReport check_theorem6(const ScalarFunction& f, double s, const HermitianMatrix& a,
                                const HermitianMatrix& b, double eps_rel) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw InputError("check_theorem6 requires s in (0, 1], got s = " + std::to_string(s));
  }
  require_psd_input(a, "A", "check_theorem6", eps_rel);
  require_psd_input(b, "B", "check_theorem6", eps_rel);

  const HermitianMatrix integral = operator_integral(f, a, b).value;
  const HermitianMatrix midpoint =
      apply_function(f, segment_point(a, b, 0.5)) * std::pow(2.0, s - 1.0);
  const HermitianMatrix endpoint = (apply_function(f, a) + apply_function(f, b)) * (1.0 / (s + 1.0));

  InequalityReport rep;
  rep.name = "theorem6";
  rep.sides.push_back(loewner_side("midpoint <= integral", midpoint, integral, eps_rel));
  rep.sides.push_back(loewner_side("integral <= endpoint", integral, endpoint, eps_rel));
  return rep;
}

InequalityReport check_theorem5(const ScalarFunction& f, const HermitianMatrix& a,
                                const HermitianMatrix& b, double eps_rel) {
  const std::string kind = f.kind_name();
  if (kind != "quadratic" && kind != "affine") {
    throw PreconditionError(
        "check_theorem5 requires an operator convex registry function (quadratic with "
        "alpha >= 0, or affine); got " +
        f.describe());
  }
  const HermitianMatrix mid = apply_function(f, segment_point(a, b, 0.5));
  const HermitianMatrix quarters =
      (apply_function(f, segment_point(a, b, 0.25)) +
       apply_function(f, segment_point(a, b, 0.75))) *
      0.5;
  const HermitianMatrix integral = operator_integral(f, a, b).value;
  const HermitianMatrix end_avg = (apply_function(f, a) + apply_function(f, b)) * 0.5;
  const HermitianMatrix upper_mix = (mid + end_avg) * 0.5;

  InequalityReport rep;
  rep.name = "theorem5";
  rep.sides.push_back(loewner_side("midpoint <= quarter average", mid, quarters, eps_rel));
  rep.sides.push_back(loewner_side("quarter average <= integral", quarters, integral, eps_rel));
  rep.sides.push_back(loewner_side("integral <= (midpoint + endpoint)/2", integral, upper_mix,
                                   eps_rel));
  rep.sides.push_back(
      loewner_side("(midpoint + endpoint)/2 <= endpoint", upper_mix, end_avg, eps_rel));
  return rep;
}

std::pair<double, double> mn_values(const ScalarFunction& f, const ScalarFunction& g,
                                    const HermitianMatrix& a, const HermitianMatrix& b,
                                    const ComplexVector& x) {
  require_unit(x, "mn_values");
  const double fa = apply_function(f, a).quadratic_form(x);
  const double fb = apply_function(f, b).quadratic_form(x);
  const double ga = apply_function(g, a).quadratic_form(x);
  const double gb = apply_function(g, b).quadratic_form(x);
  return {fa * ga + fb * gb, fa * gb + fb * ga};
}

ProductTerms product_terms(const ScalarFunction& f, const ScalarFunction& g,
                           const HermitianMatrix& a, const HermitianMatrix& b,
                           const ComplexVector& x) {
  require_unit(x, "product_terms");
  ProductTerms t{};
  t.integral = paired_scalar_integral(f, g, a, b, x);
  const auto [m, n] = mn_values(f, g, a, b, x);
  t.m_value = m;
  t.n_value = n;
  const HermitianMatrix mid = segment_point(a, b, 0.5);
  t.mid_form_f = apply_function(f, mid).quadratic_form(x);
  t.mid_form_g = apply_function(g, mid).quadratic_form(x);
  return t;
}

InequalityReport check_theorem7(double s1, double s2, const ProductTerms& terms,
                                double eps_rel) {
  const double coeff_m = 1.0 / (s1 + s2 + 1.0);
  const double coeff_n = beta_function(s1 + 1.0, s2 + 1.0);
  const double rhs = coeff_m * terms.m_value + coeff_n * terms.n_value;

  InequalityReport rep;
  rep.name = "theorem7";
  rep.sides.push_back(scalar_side("product mean <= M,N bound", terms.integral, rhs, eps_rel));
  rep.quantities = {{"integral", terms.integral}, {"M", terms.m_value}, {"N", terms.n_value},
                    {"coeff_m", coeff_m},         {"coeff_n", coeff_n}, {"rhs", rhs}};
  return rep;
}

InequalityReport check_theorem7(const ScalarFunction& f, double s1, const ScalarFunction& g,
                                double s2, const HermitianMatrix& a, const HermitianMatrix& b,
                                const ComplexVector& x, double eps_rel) {
  return check_theorem7(s1, s2, product_terms(f, g, a, b, x), eps_rel);
}

InequalityReport check_theorem8(double s1, double s2, const ProductTerms& terms,
                                double eps_rel) {
  const double coeff_m = beta_function(s1 + 1.0, s2 + 1.0);
  const double coeff_n = 1.0 / (s1 + s2 + 1.0);
  const double lhs = std::pow(2.0, s1 + s2 - 1.0) * terms.mid_form_f * terms.mid_form_g;
  const double rhs = terms.integral + coeff_m * terms.m_value + coeff_n * terms.n_value;

  InequalityReport rep;
  rep.name = "theorem8";
  rep.sides.push_back(scalar_side("midpoint product <= integral + M,N bound", lhs, rhs, eps_rel));
  rep.quantities = {{"integral", terms.integral}, {"M", terms.m_value}, {"N", terms.n_value},
                    {"coeff_m", coeff_m},         {"coeff_n", coeff_n}, {"lhs", lhs},
                    {"rhs", rhs}};
  return rep;
}

InequalityReport check_theorem8(const ScalarFunction& f, double s1, const ScalarFunction& g,
                                double s2, const HermitianMatrix& a, const HermitianMatrix& b,
                                const ComplexVector& x, double eps_rel) {
  return check_theorem8(s1, s2, product_terms(f, g, a, b, x), eps_rel);
}

PsdVerdict check_lemma_positivity(const ScalarFunction& f, double s, const HermitianMatrix& a,
                                  double eps_rel) {
  if (!(s > 0.0 && s < 1.0)) {
    throw PreconditionError(
        "check_lemma_positivity supports s strictly inside (0, 1); at s = 1 the positivity "
        "argument multiplies f(A) by 2^(1-s) - 1 = 0 and decides nothing");
  }
  const HermitianMatrix fa = apply_function(f, a);
  return is_psd(fa, eps_rel * std::max(1.0, fa.spectral_norm()));
}

PhiReport check_phi_equivalence(const ScalarFunction& f, double s, const HermitianMatrix& a,
                                const HermitianMatrix& b, int num_vectors, int grid_density,
                                RngStream& rng) {
  if (a.dim() != b.dim()) {
    throw InputError("check_phi_equivalence needs equal dimensions");
  }
  PhiReport rep;
  rep.all_hold = true;

  std::vector<std::pair<ComplexVector, std::string>> candidates;
  const HermitianMatrix mid_slack =
      (apply_function(f, a) + apply_function(f, b)) * std::pow(2.0, -s) -
      apply_function(f, segment_point(a, b, 0.5));
  const SpectralDecomposition slack_d = decompose(mid_slack);
  ComplexVector ev = slack_d.eigenvectors.col(0);
  ev /= ev.norm();
  candidates.emplace_back(std::move(ev), "midpoint-slack eigenvector");
  for (int i = 0; i < num_vectors; ++i) {
    candidates.emplace_back(random_unit_vector(a.dim(), rng), "random");
  }

  for (auto& [x, source] : candidates) {
    const ComplexVector xv = x;
    auto phi = [&](double t) {
      return apply_function(f, segment_point(a, b, t)).quadratic_form(xv);
    };
    ScalarVerdict v = s_convex_second_falsifier(phi, s, 0.0, 1.0, grid_density);
    if (!v.holds && !rep.refuting_index.has_value()) {
      rep.refuting_index = static_cast<int>(rep.vectors.size());
    }
    rep.all_hold = rep.all_hold && v.holds;
    rep.vectors.push_back(PhiVectorResult{std::move(x), std::move(source), std::move(v)});
  }
  return rep;
}

InequalityReport check_s_convexity_on_pair(const ScalarFunction& f, double s,
                                           const HermitianMatrix& a, const HermitianMatrix& b,
                                           int lambda_grid, double eps_rel) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw InputError("check_s_convexity_on_pair requires s in (0, 1]");
  }
  if (lambda_grid < 3 || lambda_grid % 2 == 0) {
    throw InputError("lambda grid must be odd and >= 3 so that 0, 1/2, 1 are grid points");
  }
  const HermitianMatrix fa = apply_function(f, a);
  const HermitianMatrix fb = apply_function(f, b);

  InequalityReport rep;
  rep.name = s == 1.0 ? "operator-convexity" : "operator-s-convexity";
  for (int k = 0; k < lambda_grid; ++k) {
    const double lambda = static_cast<double>(k) / (lambda_grid - 1);
    const double wa = lambda == 1.0 ? 0.0 : std::pow(1.0 - lambda, s);
    const double wb = lambda == 0.0 ? 0.0 : std::pow(lambda, s);
    const HermitianMatrix rhs = fa * wa + fb * wb;
    const HermitianMatrix lhs = apply_function(f, segment_point(a, b, lambda));
    const double tol = loewner_tolerance(lhs, rhs, eps_rel);
    const PsdVerdict v = loewner_leq(lhs, rhs, tol);
    std::ostringstream label;
    label << "lambda = " << lambda;
    rep.sides.push_back(SideCheck{label.str(), v.min_eigenvalue, tol, v.is_psd});
    if (!v.is_psd && (!rep.witness || v.min_eigenvalue < rep.witness->min_eig)) {
      TheoremWitness w;
      w.lambda = lambda;
      w.min_eig = v.min_eigenvalue;
      w.a = a;
      w.b = b;
      w.x = v.witness_vector;
      rep.witness = std::move(w);
    }
  }
  return rep;
}

InequalityReport check_subadditivity(double s, const HermitianMatrix& a,
                                     const HermitianMatrix& b, double eps_rel) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw InputError("check_subadditivity requires s in (0, 1]");
  }
  const double qual_tol =
      eps_rel * std::max({1.0, a.spectral_norm(), b.spectral_norm()});
  const PsdVerdict qual = pair_qualifies(a, b, qual_tol);
  if (!qual.is_psd) {
    std::ostringstream msg;
    msg << "check_subadditivity requires a qualified pair; AB + BA has eigenvalue "
        << qual.min_eigenvalue;
    throw PreconditionError(msg.str());
  }
  const ScalarFunction f = ScalarFunction::power(s);
  const HermitianMatrix lhs = apply_function(f, a + b);
  const HermitianMatrix rhs = apply_function(f, a) + apply_function(f, b);

  InequalityReport rep;
  rep.name = "subadditivity";
  rep.sides.push_back(loewner_side("f(A+B) <= f(A) + f(B)", lhs, rhs, eps_rel));
  return rep;
}

HermitianMatrix cubic_counterexample_a() {
  RealMatrix m(2, 2);
  m << 3.0, -1.0, -1.0, 1.0;
  return HermitianMatrix::from_real(m);
}

HermitianMatrix cubic_counterexample_b() {
  RealMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, 0.0;
  return HermitianMatrix::from_real(m);
}

HermitianMatrix cubic_counterexample_slack() {
  RealMatrix m(2, 2);
  m << 67.0, -34.0, -34.0, 17.0;
  return HermitianMatrix::from_real(m / 8.0);
}

InequalityReport reproduce_cubic_counterexample() {
  const HermitianMatrix a = cubic_counterexample_a();
  const HermitianMatrix b = cubic_counterexample_b();
  const ScalarFunction f = ScalarFunction::cubic();
  const HermitianMatrix slack =
      (apply_function(f, a) + apply_function(f, b)) * 0.5 -
      apply_function(f, segment_point(a, b, 0.5));
  const HermitianMatrix expected = cubic_counterexample_slack();
  const double deviation = (slack - expected).max_abs_entry();
  const PsdVerdict v = is_psd(slack, 0.0);

  // Margin far above round-off, far below the expected |min eigenvalue|.
  constexpr double kIndefinite = 1e-6;

  InequalityReport rep;
  rep.name = "example-cubic";
  rep.inputs_digest = "A=[[3,-1],[-1,1]];B=[[1,0],[0,0]];f=cubic";
  rep.sides.push_back(SideCheck{"entrywise deviation from expected slack, negated", -deviation,
                                1e-12, deviation <= 1e-12});
  rep.sides.push_back(SideCheck{"indefiniteness margin beyond 1e-6 (negated min eigenvalue)",
                                -v.min_eigenvalue - kIndefinite, 0.0,
                                -v.min_eigenvalue - kIndefinite >= 0.0});
  rep.quantities = {{"max_entry_deviation", deviation},
                    {"slack_min_eigenvalue", v.min_eigenvalue},
                    {"slack_00", slack(0, 0).real()},
                    {"slack_01", slack(0, 1).real()},
                    {"slack_11", slack(1, 1).real()}};
  TheoremWitness w;
  w.lambda = 0.5;
  w.min_eig = v.min_eigenvalue;
  w.a = a;
  w.b = b;
  w.x = v.witness_vector;
  rep.witness = std::move(w);
  return rep;
}

}  // namespace ophh
