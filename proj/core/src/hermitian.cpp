#include "ophh/hermitian.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "ophh/errors.hpp"

namespace ophh {
namespace {

constexpr double kHermTol = 1e-12;
constexpr double kReconstructTol = 1e-10;
constexpr double kDomainSlop = 1e-12;  // eigenvalues in (-1e-12, 0] count as 0

std::string matrix_brief(const ComplexMatrix& m) {
  std::ostringstream out;
  out << m.rows() << "x" << m.cols() << " matrix, max |entry| = "
      << m.cwiseAbs().maxCoeff();
  return out.str();
}

}  // namespace

HermitianMatrix::HermitianMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    std::ostringstream msg;
    msg << "Hermitian matrix must be square with dim >= 1, got " << entries_.rows() << "x"
        << entries_.cols();
    throw InputError(msg.str());
  }
  const double scale = entries_.cwiseAbs().maxCoeff();
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermTol * scale) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |M - M*| = " << asym << " exceeds " << kHermTol
        << " * max |entry| = " << kHermTol * scale;
    throw InputError(msg.str());
  }
  entries_ = ((entries_ + entries_.adjoint()) * 0.5).eval();
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim), Unchecked{});
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(ComplexMatrix::Zero(dim, dim), Unchecked{});
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  ComplexMatrix m = ComplexMatrix::Zero(d.size(), d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) m(i, i) = d(i);
  return HermitianMatrix(std::move(m), Unchecked{});
}

HermitianMatrix HermitianMatrix::from_real(const RealMatrix& m) {
  return HermitianMatrix(m.cast<Complex>());
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& rhs) const {
  if (dim() != rhs.dim()) {
    throw InputError("dimension mismatch in matrix sum: " + std::to_string(dim()) + " vs " +
                     std::to_string(rhs.dim()));
  }
  return HermitianMatrix(entries_ + rhs.entries_, Unchecked{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& rhs) const {
  if (dim() != rhs.dim()) {
    throw InputError("dimension mismatch in matrix difference: " + std::to_string(dim()) +
                     " vs " + std::to_string(rhs.dim()));
  }
  return HermitianMatrix(entries_ - rhs.entries_, Unchecked{});
}

HermitianMatrix HermitianMatrix::operator*(double scale) const {
  return HermitianMatrix(entries_ * scale, Unchecked{});
}

double HermitianMatrix::quadratic_form(const ComplexVector& x) const {
  return (x.adjoint() * entries_ * x)(0).real();
}

double HermitianMatrix::spectral_norm() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double HermitianMatrix::max_abs_entry() const { return entries_.cwiseAbs().maxCoeff(); }

HermitianMatrix hermitian_part(const ComplexMatrix& raw) {
  return HermitianMatrix(((raw + raw.adjoint()) * 0.5).eval(), HermitianMatrix::Unchecked{});
}

HermitianMatrix anticommutator(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw InputError("dimension mismatch in anticommutator");
  }
  return hermitian_part(a.entries() * b.entries() + b.entries() * a.entries());
}

SpectralDecomposition decompose(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.entries());
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eigensolver failed to converge on " + matrix_brief(a.entries()),
                           std::numeric_limits<double>::quiet_NaN());
  }
  SpectralDecomposition d{solver.eigenvalues(), solver.eigenvectors()};
  const double norm = d.eigenvalues.cwiseAbs().maxCoeff();
  const ComplexMatrix rebuilt =
      d.eigenvectors * d.eigenvalues.cast<Complex>().asDiagonal() * d.eigenvectors.adjoint();
  const double residual = (rebuilt - a.entries()).norm();
  if (!(residual <= kReconstructTol * std::max(1.0, norm))) {
    std::ostringstream msg;
    msg << "spectral reconstruction residual " << residual << " out of bounds for "
        << matrix_brief(a.entries());
    throw ConvergenceError(msg.str(), residual);
  }
  return d;
}

HermitianMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a) {
  const SpectralDecomposition d = decompose(a);
  RealVector mapped(d.eigenvalues.size());
  for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
    const double lambda = d.eigenvalues(i);
    if (!f.domain_contains(lambda, kDomainSlop)) {
      std::ostringstream msg;
      msg << "eigenvalue " << lambda << " lies outside the domain of " << f.describe();
      throw PreconditionError(msg.str());
    }
    mapped(i) = f.eval(lambda);
  }
  return hermitian_part(d.eigenvectors * mapped.cast<Complex>().asDiagonal() *
                        d.eigenvectors.adjoint());
}

double min_eigenvalue(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eigensolver failed to converge on " + matrix_brief(m.entries()),
                           std::numeric_limits<double>::quiet_NaN());
  }
  return solver.eigenvalues()(0);
}

PsdVerdict is_psd(const HermitianMatrix& m, double tol) {
  if (!(tol >= 0.0)) {
    throw InputError("PSD tolerance must be >= 0, got " + std::to_string(tol));
  }
  const SpectralDecomposition d = decompose(m);
  const double min_eig = d.eigenvalues(0);
  PsdVerdict v{min_eig >= -tol, min_eig, tol, std::nullopt};
  if (!v.is_psd) {
    ComplexVector w = d.eigenvectors.col(0);
    w /= w.norm();
    v.witness_vector = std::move(w);
  }
  return v;
}

PsdVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  if (a.dim() != b.dim()) {
    throw InputError("Loewner comparison needs equal dimensions, got " + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()));
  }
  return is_psd(b - a, tol);
}

PsdVerdict pair_qualifies(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  const PsdVerdict a_psd = is_psd(a, tol);
  if (!a_psd.is_psd) {
    throw PreconditionError("pair_qualifies requires PSD inputs; first matrix has eigenvalue " +
                            std::to_string(a_psd.min_eigenvalue));
  }
  const PsdVerdict b_psd = is_psd(b, tol);
  if (!b_psd.is_psd) {
    throw PreconditionError("pair_qualifies requires PSD inputs; second matrix has eigenvalue " +
                            std::to_string(b_psd.min_eigenvalue));
  }
  return is_psd(anticommutator(a, b), tol);
}

double loewner_tolerance(const HermitianMatrix& lhs, const HermitianMatrix& rhs, double eps_rel) {
  return eps_rel * std::max({1.0, lhs.spectral_norm(), rhs.spectral_norm()});
}

namespace {

/// Orthonormalized Gaussian matrix: Haar-distributed up to the usual
/// R-diagonal phase fix.
ComplexMatrix random_unitary(int dim, RngStream& rng, Field field) {
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = field == Field::complex_entries ? rng.gaussian_complex()
                                                : Complex(rng.gaussian(), 0.0);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace

HermitianMatrix random_hermitian(int dim, double lo, double hi, RngStream& rng, Field field) {
  if (dim < 1) throw InputError("random_hermitian needs dim >= 1");
  if (!(lo <= hi)) throw InputError("random_hermitian needs lo <= hi");
  RealVector lambda(dim);
  for (int i = 0; i < dim; ++i) lambda(i) = rng.uniform(lo, hi);
  const ComplexMatrix q = random_unitary(dim, rng, field);
  return hermitian_part(q * lambda.cast<Complex>().asDiagonal() * q.adjoint());
}

ComplexVector random_unit_vector(int dim, RngStream& rng, Field field) {
  if (dim < 1) throw InputError("random_unit_vector needs dim >= 1");
  ComplexVector x(dim);
  for (int i = 0; i < dim; ++i) {
    x(i) = field == Field::complex_entries ? rng.gaussian_complex()
                                           : Complex(rng.gaussian(), 0.0);
  }
  const double norm = x.norm();
  if (norm == 0.0) {
    x.setZero();
    x(0) = 1.0;
    return x;
  }
  return x / norm;
}

std::pair<HermitianMatrix, HermitianMatrix> random_qualified_pair(int dim, RngStream& rng,
                                                                  Field field, double lo,
                                                                  double hi) {
  if (dim < 1) throw InputError("random_qualified_pair needs dim >= 1");
  if (!(0.0 <= lo && lo <= hi)) {
    throw InputError("random_qualified_pair needs 0 <= lo <= hi");
  }
  const ComplexMatrix q = random_unitary(dim, rng, field);
  RealVector la(dim), lb(dim);
  for (int i = 0; i < dim; ++i) la(i) = rng.uniform(lo, hi);
  for (int i = 0; i < dim; ++i) lb(i) = rng.uniform(lo, hi);
  HermitianMatrix a = hermitian_part(q * la.cast<Complex>().asDiagonal() * q.adjoint());
  HermitianMatrix b = hermitian_part(q * lb.cast<Complex>().asDiagonal() * q.adjoint());
  const PsdVerdict check = pair_qualifies(a, b, loewner_tolerance(a, b, 1e-10));
  if (!check.is_psd) {
    throw GenerationError("random_qualified_pair post-check failed: AB + BA has eigenvalue " +
                          std::to_string(check.min_eigenvalue));
  }
  return {std::move(a), std::move(b)};
}

HermitianMatrix matrix_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed matrix JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("real")) {
    throw InputError("matrix JSON must be an object with \"dim\" and \"real\" fields");
  }
  const int dim = j.at("dim").get<int>();
  if (dim < 1) throw InputError("matrix JSON field \"dim\" must be >= 1");
  auto read_grid = [dim](const nlohmann::json& rows, const char* name) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
      throw InputError(std::string("matrix JSON field \"") + name + "\" must be a " +
                       std::to_string(dim) + "-row array");
    }
    RealMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const auto& row = rows.at(i);
      if (!row.is_array() || static_cast<int>(row.size()) != dim) {
        throw InputError(std::string("matrix JSON field \"") + name + "\" row " +
                         std::to_string(i) + " must have " + std::to_string(dim) + " numbers");
      }
      for (int k = 0; k < dim; ++k) m(i, k) = row.at(k).get<double>();
    }
    return m;
  };
  const RealMatrix real = read_grid(j.at("real"), "real");
  RealMatrix imag = RealMatrix::Zero(dim, dim);
  if (j.contains("imag")) imag = read_grid(j.at("imag"), "imag");
  ComplexMatrix entries(dim, dim);
  entries.real() = real;
  entries.imag() = imag;
  try {
    return HermitianMatrix(std::move(entries));
  } catch (const InputError& e) {
    throw InputError(std::string("matrix JSON failed the Hermitian check: ") + e.what());
  }
}

std::string matrix_to_json(const HermitianMatrix& m) {
  nlohmann::json j;
  j["dim"] = m.dim();
  nlohmann::json real = nlohmann::json::array();
  nlohmann::json imag = nlohmann::json::array();
  bool any_imag = false;
  for (int i = 0; i < m.dim(); ++i) {
    nlohmann::json rrow = nlohmann::json::array();
    nlohmann::json irow = nlohmann::json::array();
    for (int k = 0; k < m.dim(); ++k) {
      rrow.push_back(m(i, k).real());
      irow.push_back(m(i, k).imag());
      any_imag = any_imag || m(i, k).imag() != 0.0;
    }
    real.push_back(std::move(rrow));
    imag.push_back(std::move(irow));
  }
  j["real"] = std::move(real);
  if (any_imag) j["imag"] = std::move(imag);
  return j.dump();
}

}  // namespace ophh
