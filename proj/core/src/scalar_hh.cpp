#include "ophh/scalar_hh.hpp"

#include <cmath>

#include "ophh/errors.hpp"
#include "ophh/quadrature.hpp"
#include "ophh/scalar_convexity.hpp"
#include "ophh/special_functions.hpp"

namespace ophh {
namespace {

void require_interval(double a, double b, const char* who) {
  if (!(0.0 <= a && a < b)) {
    throw InputError(std::string(who) + " requires 0 <= a < b, got a = " + std::to_string(a) +
                     ", b = " + std::to_string(b));
  }
}

double mean_of(const std::function<double(double)>& f, double a, double b) {
  return integrate_adaptive(f, a, b) / (b - a);
}

/// Nonnegativity and midpoint convexity sampled on [a, b]; refutation turns
/// the owning check vacuous rather than failing it.
bool nonneg_convex_on(const ScalarFunction& f, double a, double b, std::string* reason) {
  const int n = 201;
  for (int i = 0; i < n; ++i) {
    const double t = a + (b - a) * static_cast<double>(i) / (n - 1);
    if (f.eval(t) < -1e-12) {
      *reason = f.describe() + " is negative at t = " + std::to_string(t);
      return false;
    }
  }
  const ScalarVerdict v =
      s_convex_second_falsifier([&f](double t) { return f.eval(t); }, 1.0, a, b, 101, 3);
  if (!v.holds) {
    *reason = f.describe() + " fails convexity on the grid (violation " +
              std::to_string(v.max_violation) + ")";
    return false;
  }
  return true;
}

}  // namespace

ScalarHhReport check_scalar_hh(const ScalarFunction& f, double s, double a, double b,
                               double abs_tol) {
  require_interval(a, b, "check_scalar_hh");
  if (!(s > 0.0 && s <= 1.0)) {
    throw InputError("check_scalar_hh requires 0 < s <= 1");
  }
  ScalarHhReport rep;
  rep.midpoint_term = std::pow(2.0, s - 1.0) * f.eval(0.5 * (a + b));
  rep.mean_integral = mean_of([&f](double t) { return f.eval(t); }, a, b);
  rep.endpoint_term = (f.eval(a) + f.eval(b)) / (s + 1.0);
  rep.left_slack = rep.mean_integral - rep.midpoint_term;
  rep.right_slack = rep.endpoint_term - rep.mean_integral;
  rep.holds = rep.left_slack >= -abs_tol && rep.right_slack >= -abs_tol;
  return rep;
}

ProductBoundReport check_pachpatte(const ScalarFunction& f, const ScalarFunction& g, double a,
                                   double b, double abs_tol) {
  require_interval(a, b, "check_pachpatte");
  ProductBoundReport rep{};
  rep.preconditions_ok = nonneg_convex_on(f, a, b, &rep.skipped_reason) &&
                         nonneg_convex_on(g, a, b, &rep.skipped_reason);
  if (!rep.preconditions_ok) {
    rep.holds = false;
    return rep;
  }
  const double fa = f.eval(a), fb = f.eval(b), ga = g.eval(a), gb = g.eval(b);
  rep.m_value = fa * ga + fb * gb;
  rep.n_value = fa * gb + fb * ga;
  rep.product_mean = mean_of([&](double t) { return f.eval(t) * g.eval(t); }, a, b);
  rep.first_bound = rep.m_value / 3.0 + rep.n_value / 6.0;
  rep.first_slack = rep.first_bound - rep.product_mean;
  const double mid = 0.5 * (a + b);
  rep.midpoint_product_term = 2.0 * f.eval(mid) * g.eval(mid);
  rep.second_bound = rep.product_mean + rep.m_value / 6.0 + rep.n_value / 3.0;
  rep.second_slack = rep.second_bound - rep.midpoint_product_term;
  rep.holds = rep.first_slack >= -abs_tol && rep.second_slack >= -abs_tol;
  return rep;
}

KirmaciReport check_kirmaci(const ScalarFunction& f, double s1, const ScalarFunction& g,
                            double s2, double a, double b, double abs_tol) {
  require_interval(a, b, "check_kirmaci");
  if (!(s1 > 0.0 && s1 <= 1.0 && s2 > 0.0 && s2 <= 1.0)) {
    throw InputError("check_kirmaci requires s1, s2 in (0, 1]");
  }
  KirmaciReport rep{};
  const double reach = std::max(10.0, b);
  auto member = [&](const ScalarFunction& h, double s, std::string* reason) {
    const int n = 201;
    for (int i = 0; i < n; ++i) {
      const double t = a + (b - a) * static_cast<double>(i) / (n - 1);
      if (h.eval(t) < -1e-12) {
        *reason = h.describe() + " is negative at t = " + std::to_string(t);
        return false;
      }
    }
    const ScalarVerdict v = is_s_convex_second(h, s, 101, reach);
    if (!v.holds) {
      *reason = h.describe() + " refuted as s-convex (second sense) at s = " + std::to_string(s);
      return false;
    }
    return true;
  };
  rep.preconditions_ok =
      member(f, s1, &rep.skipped_reason) && member(g, s2, &rep.skipped_reason);
  if (!rep.preconditions_ok) {
    rep.holds = false;
    return rep;
  }
  const double fa = f.eval(a), fb = f.eval(b), ga = g.eval(a), gb = g.eval(b);
  rep.m_value = fa * ga + fb * gb;
  rep.n_value = fa * gb + fb * ga;
  rep.product_mean = mean_of([&](double t) { return f.eval(t) * g.eval(t); }, a, b);
  rep.coeff_m = 1.0 / (s1 + s2 + 1.0);
  rep.coeff_n = beta_function(s1 + 1.0, s2 + 1.0);
  rep.bound = rep.coeff_m * rep.m_value + rep.coeff_n * rep.n_value;
  rep.slack = rep.bound - rep.product_mean;
  rep.holds = rep.slack >= -abs_tol;
  return rep;
}

}  // namespace ophh
