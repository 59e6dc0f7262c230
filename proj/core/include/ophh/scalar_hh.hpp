#pragma once

#include <string>

#include "ophh/scalar_function.hpp"

namespace ophh {

/// Scalar Hermite-Hadamard chain for an s-convex function on [a, b]:
///   2^(s-1) f((a+b)/2)  <=  mean of f over [a, b]  <=  (f(a)+f(b))/(s+1).
struct ScalarHhReport {
  double midpoint_term;
  double mean_integral;
  double endpoint_term;
  double left_slack;   // mean - midpoint term
  double right_slack;  // endpoint term - mean
  bool holds;          // both slacks >= -abs_tol
};

ScalarHhReport check_scalar_hh(const ScalarFunction& f, double s, double a, double b,
                               double abs_tol = 1e-9);

/// Product bound for two nonnegative convex functions on [a, b]:
///   mean(fg)         <= (1/3) M + (1/6) N
///   2 f(mid) g(mid)  <= mean(fg) + (1/6) M + (1/3) N
/// with M = f(a)g(a) + f(b)g(b), N = f(a)g(b) + f(b)g(a).
struct ProductBoundReport {
  bool preconditions_ok;
  std::string skipped_reason;  // set when a precondition failed and the check was skipped
  double product_mean;
  double m_value, n_value;
  double first_bound, first_slack;
  double midpoint_product_term;
  double second_bound, second_slack;
  bool holds;
};

ProductBoundReport check_pachpatte(const ScalarFunction& f, const ScalarFunction& g, double a,
                                   double b, double abs_tol = 1e-9);

/// Product bound for f s1-convex and g s2-convex (second sense):
///   mean(fg) <= M/(s1+s2+1) + B(s1+1, s2+1) N.
/// The product mean is taken over [a, b] with the 1/(b-a) normalizer.
struct KirmaciReport {
  bool preconditions_ok;
  std::string skipped_reason;
  double product_mean;
  double m_value, n_value;
  double coeff_m;  // 1/(s1+s2+1)
  double coeff_n;  // B(s1+1, s2+1)
  double bound, slack;
  bool holds;
};

KirmaciReport check_kirmaci(const ScalarFunction& f, double s1, const ScalarFunction& g,
                            double s2, double a, double b, double abs_tol = 1e-9);

}  // namespace ophh
