#include "ophh/segment.hpp"

#include <cmath>
#include <sstream>

#include "ophh/errors.hpp"
#include "ophh/quadrature.hpp"

namespace ophh {
namespace {

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, const char* who) {
  if (a.dim() != b.dim()) {
    throw InputError(std::string(who) + " needs equal dimensions, got " +
                     std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

/// Endpoint spectra bound the segment spectra for an interval domain, so a
/// clean precondition error can be raised before any quadrature work.
void check_endpoint_spectra(const ScalarFunction& f, const HermitianMatrix& m,
                            const char* which) {
  const SpectralDecomposition d = decompose(m);
  for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
    if (!f.domain_contains(d.eigenvalues(i), 1e-12)) {
      std::ostringstream msg;
      msg << "segment endpoint " << which << " has eigenvalue " << d.eigenvalues(i)
          << " outside the domain of " << f.describe();
      throw PreconditionError(msg.str());
    }
  }
}

}  // namespace

HermitianMatrix segment_point(const HermitianMatrix& a, const HermitianMatrix& b, double t) {
  require_same_dim(a, b, "segment_point");
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InputError("segment parameter must lie in [0, 1], got t = " + std::to_string(t));
  }
  return hermitian_part((1.0 - t) * a.entries() + t * b.entries());
}

OperatorIntegralResult operator_integral(const ScalarFunction& f, const HermitianMatrix& a,
                                         const HermitianMatrix& b, double rel_tol,
                                         int max_panels) {
  require_same_dim(a, b, "operator_integral");
  check_endpoint_spectra(f, a, "A");
  check_endpoint_spectra(f, b, "B");
  check_endpoint_spectra(f, segment_point(a, b, 0.5), "(A+B)/2");

  const auto& nodes = gauss_legendre16_nodes();
  const auto& weights = gauss_legendre16_weights();
  const int dim = a.dim();
  int nodes_used = 0;

  auto composite = [&](int panels) {
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    const double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
      const double left = p * h;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double t = left + 0.5 * h * (nodes[i] + 1.0);
        sum += (0.5 * h * weights[i]) * apply_function(f, segment_point(a, b, t)).entries();
        ++nodes_used;
      }
    }
    return sum;
  };

  ComplexMatrix prev = composite(1);
  double estimate = std::numeric_limits<double>::infinity();
  for (int panels = 2; panels <= max_panels; panels *= 2) {
    ComplexMatrix cur = composite(panels);
    estimate = hermitian_part(cur - prev).spectral_norm();
    const double scale = std::max(1.0, hermitian_part(cur).spectral_norm());
    if (estimate <= rel_tol * scale) {
      return OperatorIntegralResult{hermitian_part(cur), estimate, nodes_used};
    }
    prev = std::move(cur);
  }
  std::ostringstream msg;
  msg << "operator integral of " << f.describe() << " did not converge within " << max_panels
      << " panels (last estimate " << estimate << ")";
  throw ConvergenceError(msg.str(), estimate);
}

double paired_scalar_integral(const ScalarFunction& f, const ScalarFunction& g,
                              const HermitianMatrix& a, const HermitianMatrix& b,
                              const ComplexVector& x, double abs_tol) {
  require_same_dim(a, b, "paired_scalar_integral");
  if (x.size() != a.dim()) {
    throw InputError("paired_scalar_integral vector has dimension " + std::to_string(x.size()) +
                     ", expected " + std::to_string(a.dim()));
  }
  if (std::fabs(x.norm() - 1.0) > 1e-12) {
    throw PreconditionError("paired_scalar_integral requires a unit vector, got norm " +
                            std::to_string(x.norm()));
  }
  check_endpoint_spectra(f, a, "A");
  check_endpoint_spectra(f, b, "B");
  check_endpoint_spectra(g, a, "A");
  check_endpoint_spectra(g, b, "B");

  auto integrand = [&](double t) {
    // Orientation tA + (1-t)B, matching the product-bound statements.
    const HermitianMatrix m = segment_point(b, a, t);
    const SpectralDecomposition d = decompose(m);
    double form_f = 0.0, form_g = 0.0;
    for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
      const double w = std::norm((d.eigenvectors.col(i).adjoint() * x)(0));
      form_f += f.eval(d.eigenvalues(i)) * w;
      form_g += g.eval(d.eigenvalues(i)) * w;
    }
    return form_f * form_g;
  };
  return integrate_adaptive(integrand, 0.0, 1.0, abs_tol);
}

HermitianMatrix closed_form_square_integral(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b, "closed_form_square_integral");
  const ComplexMatrix& ma = a.entries();
  const ComplexMatrix& mb = b.entries();
  return hermitian_part((ma * ma + mb * mb) / 3.0 + (ma * mb + mb * ma) / 6.0);
}

}  // namespace ophh
