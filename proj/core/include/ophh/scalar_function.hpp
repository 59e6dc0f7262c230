#pragma once

#include <string>
#include <variant>

namespace ophh {

/// Enumerated family of continuous scalar functions used throughout the lab.
///
/// Functions are a closed registry rather than arbitrary closures so that
/// they can be serialized, named in reports, and reasoned about (domains,
/// convexity classes) without escape hatches.
class ScalarFunction {
 public:
  struct Power {
    double s;  // t^s, 0 < s <= 1
  };
  struct Quadratic {
    double alpha, beta, gamma;  // alpha*t^2 + beta*t + gamma, alpha >= 0
  };
  struct Cubic {};  // t^3 on [0, inf)
  struct Example1 {
    // Piecewise family: f(0) = a, f(t) = b*t^s + c for t > 0, 0 < s < 1.
    double a, b, c, s;
  };
  struct Affine {
    double slope, intercept;
  };

  using Params = std::variant<Power, Quadratic, Cubic, Example1, Affine>;

  static ScalarFunction power(double s);
  static ScalarFunction quadratic(double alpha, double beta, double gamma);
  static ScalarFunction cubic();
  static ScalarFunction example1(double a, double b, double c, double s);
  static ScalarFunction affine(double slope, double intercept);
  static ScalarFunction identity() { return affine(1.0, 0.0); }
  static ScalarFunction constant(double value) { return affine(0.0, value); }

  const Params& params() const { return params_; }

  /// Evaluate f(t). Throws PreconditionError when t is outside the domain.
  /// Arguments in (-1e-12, 0] are treated as exactly 0 for the nonnegative
  /// domains, absorbing eigenvalue round-off on PSD inputs; 0^s is 0.
  double eval(double t) const;

  /// Domain test with an absolute tolerance below the lower endpoint.
  bool domain_contains(double t, double tol = 0.0) const;

  /// Lower endpoint of the domain: 0 for the [0, inf) families,
  /// -infinity for quadratic/affine.
  double domain_min() const;

  /// Registry name: "power", "quadratic", "cubic", "example1", "affine".
  std::string kind_name() const;

  /// Human-readable description, e.g. "power(s=0.5)".
  std::string describe() const;

  /// JSON encoding {"kind": ..., "params": {...}} and its inverse.
  std::string to_json() const;
  static ScalarFunction from_json(const std::string& text);

 private:
  explicit ScalarFunction(Params p) : params_(std::move(p)) {}

  Params params_;
};

}  // namespace ophh
