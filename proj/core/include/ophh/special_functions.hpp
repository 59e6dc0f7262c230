#pragma once

namespace ophh {

/// log Gamma(x) for x > 0. Throws PreconditionError otherwise.
double log_gamma(double x);

/// Euler Beta function B(x, y) for x, y > 0.
///
/// Small integer arguments take an exact factorial path (so B(2,2) is the
/// double nearest 1/6 on the nose); everything else goes through
/// exp(log_gamma(x) + log_gamma(y) - log_gamma(x+y)).
double beta_function(double x, double y);

}  // namespace ophh
