#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ophh/hermitian.hpp"
#include "ophh/rng.hpp"
#include "ophh/scalar_convexity.hpp"
#include "ophh/scalar_function.hpp"

namespace ophh {

/// One side of a Loewner (or scalar) inequality: the slack RHS - LHS is the
/// claim, its minimum eigenvalue (or the scalar slack itself) the margin.
/// holds <=> min_eigenvalue >= -tolerance.
struct SideCheck {
  std::string label;
  double min_eigenvalue;
  double tolerance;
  bool holds;
};

struct TheoremWitness {
  int trial = -1;
  std::optional<double> lambda;
  double min_eig = 0.0;
  std::optional<HermitianMatrix> a;
  std::optional<HermitianMatrix> b;
  std::optional<ComplexVector> x;
};

struct InequalityReport {
  std::string name;
  std::vector<SideCheck> sides;
  std::vector<std::pair<std::string, double>> quantities;
  std::optional<TheoremWitness> witness;
  std::string inputs_digest;

  bool holds() const;
  double min_slack() const;
  double max_tolerance() const;
};

/// Operator s-convex Hermite-Hadamard chain:
///   2^(s-1) f((A+B)/2)  <=  int_0^1 f((1-t)A + tB) dt  <=  (f(A)+f(B))/(s+1)
/// for PSD A, B with spectra in the domain of f and s in (0, 1].
InequalityReport check_theorem6(const ScalarFunction& f, double s, const HermitianMatrix& a,
                                const HermitianMatrix& b, double eps_rel = 1e-8);

/// Four-link refinement chain for an operator convex f (quadratic with
/// alpha >= 0, or affine), selfadjoint A, B:
///   f(mid) <= (f(q1)+f(q2))/2 <= integral <= (f(mid) + (f(A)+f(B))/2)/2
///          <= (f(A)+f(B))/2
/// with q1 = (3A+B)/4, q2 = (A+3B)/4.
InequalityReport check_theorem5(const ScalarFunction& f, const HermitianMatrix& a,
                                const HermitianMatrix& b, double eps_rel = 1e-8);

/// Endpoint quadratic-form products:
///   M = <f(A)x,x><g(A)x,x> + <f(B)x,x><g(B)x,x>
///   N = <f(A)x,x><g(B)x,x> + <f(B)x,x><g(A)x,x>
std::pair<double, double> mn_values(const ScalarFunction& f, const ScalarFunction& g,
                                    const HermitianMatrix& a, const HermitianMatrix& b,
                                    const ComplexVector& x);

/// Shared quantities of the two product bounds for one (pair, vector).
struct ProductTerms {
  double integral;  // int_0^1 <f(tA+(1-t)B)x,x><g(tA+(1-t)B)x,x> dt
  double m_value;
  double n_value;
  double mid_form_f;  // <f((A+B)/2)x,x>
  double mid_form_g;
};

ProductTerms product_terms(const ScalarFunction& f, const ScalarFunction& g,
                           const HermitianMatrix& a, const HermitianMatrix& b,
                           const ComplexVector& x);

/// Product mean bound (scalar, per unit vector):
///   integral <= M/(s1+s2+1) + B(s1+1,s2+1) N.
InequalityReport check_theorem7(const ScalarFunction& f, double s1, const ScalarFunction& g,
                                double s2, const HermitianMatrix& a, const HermitianMatrix& b,
                                const ComplexVector& x, double eps_rel = 1e-8);
InequalityReport check_theorem7(double s1, double s2, const ProductTerms& terms,
                                double eps_rel = 1e-8);

/// Midpoint product bound (scalar, per unit vector); note the coefficient
/// pairing is the reverse of the product mean bound, implemented as printed:
///   2^(s1+s2-1) <f(mid)x,x><g(mid)x,x>
///     <= integral + B(s1+1,s2+1) M + N/(s1+s2+1).
InequalityReport check_theorem8(const ScalarFunction& f, double s1, const ScalarFunction& g,
                                double s2, const HermitianMatrix& a, const HermitianMatrix& b,
                                const ComplexVector& x, double eps_rel = 1e-8);
InequalityReport check_theorem8(double s1, double s2, const ProductTerms& terms,
                                double eps_rel = 1e-8);

/// Positivity of f(A) for an operator s-convex f, s strictly inside (0, 1).
/// s = 1 is rejected with an explanation: the positivity argument divides by
/// 2^(1-s) - 1, which vanishes there.
PsdVerdict check_lemma_positivity(const ScalarFunction& f, double s, const HermitianMatrix& a,
                                  double eps_rel = 1e-8);

struct PhiVectorResult {
  ComplexVector x;
  std::string source;  // "random" or "midpoint-slack eigenvector"
  ScalarVerdict verdict;
};

struct PhiReport {
  bool all_hold;
  std::vector<PhiVectorResult> vectors;
  std::optional<int> refuting_index;  // first refuted vector, if any
};

/// Scalar reduction of operator s-convexity along the segment [A, B]: for
/// each sampled unit x, runs the second-sense grid falsifier on
/// t -> <f((1-t)A + tB)x, x> over [0, 1]. Besides `num_vectors` random
/// draws, the minimum eigenvector of the midpoint slack
/// (f(A)+f(B))/2^s - f((A+B)/2) is always included; it is the natural
/// refutation direction when operator s-convexity fails at the midpoint.
PhiReport check_phi_equivalence(const ScalarFunction& f, double s, const HermitianMatrix& a,
                                const HermitianMatrix& b, int num_vectors, int grid_density,
                                RngStream& rng);

/// Definitional operator s-convexity check on one pair across an equispaced
/// lambda grid (odd size, so 0, 1/2, 1 are grid points): every slack
///   (1-lambda)^s f(A) + lambda^s f(B) - f((1-lambda)A + lambda B)
/// must be PSD within tolerance. The witness carries the worst lambda and
/// the negative direction.
InequalityReport check_s_convexity_on_pair(const ScalarFunction& f, double s,
                                           const HermitianMatrix& a, const HermitianMatrix& b,
                                           int lambda_grid = 21, double eps_rel = 1e-8);

/// Subadditivity f(A+B) <= f(A) + f(B) at f(t) = t^s for a qualified PSD
/// pair (AB + BA >= 0); unqualified input is a precondition error.
InequalityReport check_subadditivity(double s, const HermitianMatrix& a,
                                     const HermitianMatrix& b, double eps_rel = 1e-8);

/// Fixed-input reproduction of the cubic non-convexity witness:
///   A = [[3,-1],[-1,1]], B = [[1,0],[0,0]],
///   (A^3+B^3)/2 - ((A+B)/2)^3 = (1/8)[[67,-34],[-34,17]], not PSD.
/// Sides: entrywise agreement with the printed slack within 1e-12, and an
/// indefiniteness margin (the negated minimum eigenvalue of the slack).
InequalityReport reproduce_cubic_counterexample();

/// The pair and expected slack used by the reproduction, exposed for tests
/// and the CLI.
HermitianMatrix cubic_counterexample_a();
HermitianMatrix cubic_counterexample_b();
HermitianMatrix cubic_counterexample_slack();

}  // namespace ophh
