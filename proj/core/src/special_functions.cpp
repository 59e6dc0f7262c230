#include "ophh/special_functions.hpp"

#include <cmath>
#include <string>

#include "ophh/errors.hpp"

namespace ophh {
namespace {

bool is_small_integer(double x) {
  return x == std::floor(x) && x >= 1.0 && x <= 18.0;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;  // exact in double for n <= 18
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw PreconditionError("log_gamma requires x > 0, got x = " + std::to_string(x));
  }
  return std::lgamma(x);
}

double beta_function(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw PreconditionError("beta requires positive arguments, got (" + std::to_string(x) + ", " +
                            std::to_string(y) + ")");
  }
  if (is_small_integer(x) && is_small_integer(y) && x + y - 1.0 <= 18.0) {
    const int m = static_cast<int>(x), n = static_cast<int>(y);
    return factorial(m - 1) * factorial(n - 1) / factorial(m + n - 1);
  }
  return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

}  // namespace ophh
