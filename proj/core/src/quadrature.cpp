#include "ophh/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "ophh/errors.hpp"

namespace ophh {
namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  long intervals = 0;
  long max_intervals;
  double last_estimate = 0.0;
};

double simpson_recurse(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                       double whole, double tol) {
  const double m = 0.5 * (a + b);
  if (!(a < m && m < b)) {
    // No representable midpoint left; accept what we have.
    st.intervals += 1;
    return whole;
  }
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  st.last_estimate = std::fabs(delta) / 15.0;
  if (std::fabs(delta) <= 15.0 * tol) {
    st.intervals += 2;
    return left + right + delta / 15.0;
  }
  if (st.intervals >= st.max_intervals) {
    std::ostringstream msg;
    msg << "adaptive Simpson exceeded " << st.max_intervals << " intervals on [" << a << ", " << b
        << "]";
    throw ConvergenceError(msg.str(), st.last_estimate);
  }
  return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol) +
         simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, long max_intervals) {
  if (a == b) return 0.0;
  SimpsonState st{f, 0, max_intervals, 0.0};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recurse(st, a, b, fa, fm, fb, whole, abs_tol);
}

namespace {

struct Gl16 {
  std::array<double, 16> nodes;
  std::array<double, 16> weights;

  Gl16() {
    // Newton iteration on Legendre P_16; standard construction.
    const int n = 16;
    for (int i = 0; i < n / 2; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double z1 = 0.0, pp = 0.0;
      do {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (z * p0 - p1) / (z * z - 1.0);
        z1 = z;
        z = z1 - p0 / pp;
      } while (std::fabs(z - z1) > 1e-15);
      nodes[i] = -z;
      nodes[n - 1 - i] = z;
      weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
  }
};

const Gl16& gl16() {
  static const Gl16 table;
  return table;
}

}  // namespace

const std::array<double, 16>& gauss_legendre16_nodes() { return gl16().nodes; }
const std::array<double, 16>& gauss_legendre16_weights() { return gl16().weights; }

}  // namespace ophh
