#include "ophh/scalar_convexity.hpp"

#include <cmath>
#include <vector>

#include "ophh/errors.hpp"

namespace ophh {
namespace {

constexpr double kCheckTol = 1e-12;

void require_s(double s, const char* who) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw InputError(std::string(who) + " requires 0 < s <= 1, got s = " + std::to_string(s));
  }
}

void require_density(int n, const char* who) {
  if (n < 2) {
    throw InputError(std::string(who) + " requires grid_density >= 2, got " + std::to_string(n));
  }
}

// All convex combinations of coarse grid points with rational lambdas land on
// the fine grid with denominator (n-1)(m-1), so one tabulation of f serves
// every (x, y, lambda) triple exactly.
ScalarVerdict second_sense_on_table(const std::function<double(double)>& f, double s, double lo,
                                    double hi, int n, int m) {
  const long coarse = n - 1;
  const long lam = m - 1;
  const long denom = coarse * lam;
  std::vector<double> fine(denom + 1);
  for (long i = 0; i <= denom; ++i) {
    fine[i] = f(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(denom));
  }
  std::vector<double> pow_lambda(m), pow_one_minus(m), lambdas(m);
  for (long k = 0; k <= lam; ++k) {
    const double lambda = static_cast<double>(k) / static_cast<double>(lam);
    lambdas[k] = lambda;
    pow_lambda[k] = lambda == 0.0 ? 0.0 : std::pow(lambda, s);
    pow_one_minus[k] = lambda == 1.0 ? 0.0 : std::pow(1.0 - lambda, s);
  }

  ScalarVerdict verdict{true, 0.0, std::nullopt};
  for (long i = 0; i <= coarse; ++i) {
    const double fx = fine[i * lam];
    for (long j = 0; j <= coarse; ++j) {
      const double fy = fine[j * lam];
      const long base = j * lam;
      const long step = i - j;
      for (long k = 0; k <= lam; ++k) {
        const double bound = pow_lambda[k] * fx + pow_one_minus[k] * fy;
        const double violation = fine[base + k * step] - bound;
        if (violation > kCheckTol && violation > verdict.max_violation) {
          verdict.holds = false;
          verdict.max_violation = violation;
          verdict.witness = ScalarWitness{lo + (hi - lo) * static_cast<double>(i) / coarse,
                                          lo + (hi - lo) * static_cast<double>(j) / coarse,
                                          lambdas[k], violation};
        }
      }
    }
  }
  return verdict;
}

}  // namespace

ScalarVerdict s_convex_second_falsifier(const std::function<double(double)>& f, double s,
                                        double lo, double hi, int grid_density,
                                        int lambda_density) {
  require_s(s, "s_convex_second_falsifier");
  require_density(grid_density, "s_convex_second_falsifier");
  if (lambda_density == 0) lambda_density = grid_density;
  require_density(lambda_density, "s_convex_second_falsifier");
  return second_sense_on_table(f, s, lo, hi, grid_density, lambda_density);
}

ScalarVerdict is_s_convex_second(const ScalarFunction& f, double s, int grid_density,
                                 double t_max) {
  require_s(s, "is_s_convex_second");
  require_density(grid_density, "is_s_convex_second");
  return second_sense_on_table([&f](double t) { return f.eval(t); }, s, 0.0, t_max, grid_density,
                               grid_density);
}

ScalarVerdict is_s_convex_first(const ScalarFunction& f, double s, int grid_density,
                                double t_max) {
  require_s(s, "is_s_convex_first");
  require_density(grid_density, "is_s_convex_first");
  const int n = grid_density;
  std::vector<double> xs(n), fx(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = t_max * static_cast<double>(i) / (n - 1);
    fx[i] = f.eval(xs[i]);
  }
  ScalarVerdict verdict{true, 0.0, std::nullopt};
  for (int k = 0; k < n; ++k) {
    const double alpha = static_cast<double>(k) / (n - 1);
    const double alpha_s = alpha == 0.0 ? 0.0 : std::pow(alpha, s);
    const double beta_s = 1.0 - alpha_s;
    const double beta = beta_s <= 0.0 ? 0.0 : std::pow(beta_s, 1.0 / s);
    for (int i = 0; i < n; ++i) {
      const double ax = alpha * xs[i];
      const double bound_x = alpha_s * fx[i];
      for (int j = 0; j < n; ++j) {
        const double violation = f.eval(ax + beta * xs[j]) - (bound_x + beta_s * fx[j]);
        if (violation > kCheckTol && violation > verdict.max_violation) {
          verdict.holds = false;
          verdict.max_violation = violation;
          verdict.witness = ScalarWitness{xs[i], xs[j], alpha, violation};
        }
      }
    }
  }
  return verdict;
}

bool SenseComparisonReport::any_violation() const {
  return second_implies_first.status == "violated" || second_descends.status == "violated" ||
         first_descends.status == "violated";
}

namespace {

ImplicationReport make_implication(std::string name, bool zero_condition, ScalarVerdict premise,
                                   const std::function<ScalarVerdict()>& conclude) {
  ImplicationReport rep;
  rep.name = std::move(name);
  rep.zero_condition = zero_condition;
  rep.premise_holds = premise.holds && zero_condition;
  rep.premise = std::move(premise);
  if (!rep.premise_holds) {
    rep.conclusion = ScalarVerdict{true, 0.0, std::nullopt};
    rep.status = "vacuous";
    return rep;
  }
  rep.conclusion = conclude();
  rep.status = rep.conclusion.holds ? "confirmed" : "violated";
  return rep;
}

}  // namespace

SenseComparisonReport check_sense_comparisons(const ScalarFunction& f, double s1, double s2,
                                              int grid_density, double t_max) {
  if (!(0.0 < s1 && s1 < s2 && s2 <= 1.0)) {
    throw InputError("check_sense_comparisons requires 0 < s1 < s2 <= 1, got s1 = " +
                     std::to_string(s1) + ", s2 = " + std::to_string(s2));
  }
  SenseComparisonReport rep;
  rep.s1 = s1;
  rep.s2 = s2;
  rep.f_at_zero = f.eval(0.0);
  const bool zero_is_zero = std::fabs(rep.f_at_zero) <= kCheckTol;
  const bool zero_leq_zero = rep.f_at_zero <= kCheckTol;

  const ScalarVerdict second_s2 = is_s_convex_second(f, s2, grid_density, t_max);
  rep.second_implies_first =
      make_implication("K2(s2) & f(0)=0 => K1(s2)", zero_is_zero, second_s2,
                       [&] { return is_s_convex_first(f, s2, grid_density, t_max); });
  rep.second_descends =
      make_implication("K2(s2) & f(0)=0 => K2(s1)", zero_is_zero, second_s2,
                       [&] { return is_s_convex_second(f, s1, grid_density, t_max); });
  const ScalarVerdict first_s2 = is_s_convex_first(f, s2, grid_density, t_max);
  rep.first_descends =
      make_implication("K1(s2) & f(0)<=0 => K1(s1)", zero_leq_zero, first_s2,
                       [&] { return is_s_convex_first(f, s1, grid_density, t_max); });
  return rep;
}

}  // namespace ophh
