#pragma once

#include "ophh/hermitian.hpp"
#include "ophh/scalar_function.hpp"

namespace ophh {

struct OperatorIntegralResult {
  HermitianMatrix value;
  double error_estimate;  // spectral-norm difference of the last two refinements
  int nodes_used;         // total integrand evaluations across refinements
};

/// Point (1-t)A + tB of the operator segment, t in [0, 1].
HermitianMatrix segment_point(const HermitianMatrix& a, const HermitianMatrix& b, double t);

/// Entrywise integral of t -> f((1-t)A + tB) over [0, 1].
///
/// Composite 16-point Gauss-Legendre with panel doubling (1, 2, 4, ...)
/// until the spectral-norm difference of consecutive refinements drops to
/// rel_tol * max(1, |value|); exceeding `max_panels` raises ConvergenceError
/// carrying the last estimate. Endpoint spectra are checked against the
/// domain of f up front; every node evaluation re-checks.
OperatorIntegralResult operator_integral(const ScalarFunction& f, const HermitianMatrix& a,
                                         const HermitianMatrix& b, double rel_tol = 1e-10,
                                         int max_panels = 1024);

/// Integral over [0, 1] of <f(tA + (1-t)B)x, x> * <g(tA + (1-t)B)x, x>
/// for a unit vector x (note the tA + (1-t)B orientation). One spectral
/// decomposition per node serves both quadratic forms.
double paired_scalar_integral(const ScalarFunction& f, const ScalarFunction& g,
                              const HermitianMatrix& a, const HermitianMatrix& b,
                              const ComplexVector& x, double abs_tol = 1e-11);

/// Closed form of the t^2 segment integral: (A^2 + B^2)/3 + (AB + BA)/6.
/// Oracle for quadrature tests.
HermitianMatrix closed_form_square_integral(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace ophh
