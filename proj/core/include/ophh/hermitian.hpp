#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <utility>

#include "ophh/rng.hpp"
#include "ophh/scalar_function.hpp"

namespace ophh {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Finite-dimensional stand-in for a bounded selfadjoint operator.
///
/// Construction checks Hermitian symmetry to within 1e-12 of the largest
/// absolute entry and then symmetrizes, so stored entries satisfy
/// entries(i,j) == conj(entries(j,i)) exactly.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix entries);

  static HermitianMatrix identity(int dim);
  static HermitianMatrix zero(int dim);
  static HermitianMatrix diagonal(const RealVector& d);
  static HermitianMatrix from_real(const RealMatrix& m);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }
  Complex operator()(int i, int j) const { return entries_(i, j); }

  HermitianMatrix operator+(const HermitianMatrix& rhs) const;
  HermitianMatrix operator-(const HermitianMatrix& rhs) const;
  HermitianMatrix operator*(double scale) const;
  friend HermitianMatrix operator*(double scale, const HermitianMatrix& m) { return m * scale; }

  /// Real quadratic form <Mx, x>.
  double quadratic_form(const ComplexVector& x) const;

  /// Largest |eigenvalue|.
  double spectral_norm() const;

  double max_abs_entry() const;

 private:
  struct Unchecked {};
  HermitianMatrix(ComplexMatrix entries, Unchecked) : entries_(std::move(entries)) {}

  ComplexMatrix entries_;

  friend HermitianMatrix hermitian_part(const ComplexMatrix& raw);
};

/// (M + M*)/2 without the symmetry check; for results of arithmetic that are
/// Hermitian up to round-off by construction.
HermitianMatrix hermitian_part(const ComplexMatrix& raw);

/// AB + BA (Hermitian for Hermitian A, B).
HermitianMatrix anticommutator(const HermitianMatrix& a, const HermitianMatrix& b);

/// Eigenvalues ascending plus an orthonormal eigenbasis.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;  // columns, ordered with the eigenvalues
};

struct PsdVerdict {
  bool is_psd;
  double min_eigenvalue;
  double tolerance_used;
  std::optional<ComplexVector> witness_vector;  // unit vector, present iff !is_psd
};

/// Spectral decomposition with a verified reconstruction residual
/// (<= 1e-10 * max(1, spectral norm)). Throws ConvergenceError naming the
/// matrix when the solver fails or the residual is out of bounds.
SpectralDecomposition decompose(const HermitianMatrix& a);

/// Functional calculus f(A) = Q diag(f(lambda_i)) Q*.
/// Throws PreconditionError reporting the offending eigenvalue when the
/// spectrum leaves the domain of f.
HermitianMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a);

double min_eigenvalue(const HermitianMatrix& m);

/// PSD test against a nonnegative tolerance: is_psd iff the smallest
/// eigenvalue is >= -tol. On failure the witness is a unit eigenvector of
/// the smallest eigenvalue.
PsdVerdict is_psd(const HermitianMatrix& m, double tol);

/// Loewner order test A <= B, i.e. is_psd(B - A).
PsdVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol);

/// Requires A, B PSD (within tol); tests AB + BA >= 0.
PsdVerdict pair_qualifies(const HermitianMatrix& a, const HermitianMatrix& b, double tol);

/// Relative tolerance policy for Loewner comparisons:
/// eps_rel * max(1, |lhs|, |rhs|) with spectral norms.
double loewner_tolerance(const HermitianMatrix& lhs, const HermitianMatrix& rhs,
                         double eps_rel = 1e-8);

enum class Field { complex_entries, real_entries };

/// Q diag(lambda) Q* with lambda_i uniform in [lo, hi] and Q drawn from the
/// rotation-invariant (orthonormalized Gaussian) distribution.
HermitianMatrix random_hermitian(int dim, double lo, double hi, RngStream& rng,
                                 Field field = Field::complex_entries);

/// Unit vector, uniform on the sphere; norm 1 within 1e-14.
ComplexVector random_unit_vector(int dim, RngStream& rng, Field field = Field::complex_entries);

/// Commuting PSD pair sharing one rotation-invariant eigenbasis with two
/// independent spectra in [lo, hi]; the qualification AB + BA >= 0 is
/// re-checked and a failure raises GenerationError rather than returning an
/// unqualified pair. The default spectrum floor keeps t^s integrands within
/// quadrature headroom.
std::pair<HermitianMatrix, HermitianMatrix> random_qualified_pair(
    int dim, RngStream& rng, Field field = Field::complex_entries, double lo = 0.01,
    double hi = 10.0);

/// Matrix JSON: {"dim": n, "real": n x n, "imag": n x n (optional)}.
/// The Hermitian check applies on load with 1e-12 relative tolerance.
HermitianMatrix matrix_from_json(const std::string& text);
std::string matrix_to_json(const HermitianMatrix& m);

}  // namespace ophh
