#include "ophh/scalar_function.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "ophh/errors.hpp"

namespace ophh {
namespace {

// Round-off slop below 0 accepted for the [0, inf) families.
constexpr double kZeroClampTol = 1e-12;

double checked_nonnegative(double t, const char* fname) {
  if (t < -kZeroClampTol) {
    std::ostringstream msg;
    msg << fname << " evaluated at t = " << t << " outside its domain [0, inf)";
    throw PreconditionError(msg.str());
  }
  return t < 0.0 ? 0.0 : t;
}

}  // namespace

ScalarFunction ScalarFunction::power(double s) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw InputError("power exponent must satisfy 0 < s <= 1, got s = " + std::to_string(s));
  }
  return ScalarFunction(Power{s});
}

ScalarFunction ScalarFunction::quadratic(double alpha, double beta, double gamma) {
  if (!(alpha >= 0.0)) {
    throw InputError("quadratic leading coefficient must be >= 0, got " + std::to_string(alpha));
  }
  return ScalarFunction(Quadratic{alpha, beta, gamma});
}

ScalarFunction ScalarFunction::cubic() { return ScalarFunction(Cubic{}); }

ScalarFunction ScalarFunction::example1(double a, double b, double c, double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw InputError("example1 exponent must satisfy 0 < s < 1, got s = " + std::to_string(s));
  }
  return ScalarFunction(Example1{a, b, c, s});
}

ScalarFunction ScalarFunction::affine(double slope, double intercept) {
  return ScalarFunction(Affine{slope, intercept});
}

double ScalarFunction::eval(double t) const {
  return std::visit(
      [t](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Power>) {
          const double u = checked_nonnegative(t, "power");
          return u == 0.0 ? 0.0 : std::pow(u, p.s);
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          return (p.alpha * t + p.beta) * t + p.gamma;
        } else if constexpr (std::is_same_v<T, Cubic>) {
          const double u = checked_nonnegative(t, "cubic");
          return u * u * u;
        } else if constexpr (std::is_same_v<T, Example1>) {
          const double u = checked_nonnegative(t, "example1");
          if (u == 0.0) return p.a;
          return p.b * std::pow(u, p.s) + p.c;
        } else {
          return p.slope * t + p.intercept;
        }
      },
      params_);
}

bool ScalarFunction::domain_contains(double t, double tol) const {
  return t >= domain_min() - tol;
}

double ScalarFunction::domain_min() const {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Quadratic> || std::is_same_v<T, Affine>) {
          (void)p;
          return -std::numeric_limits<double>::infinity();
        } else {
          (void)p;
          return 0.0;
        }
      },
      params_);
}

std::string ScalarFunction::kind_name() const {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        (void)p;
        if constexpr (std::is_same_v<T, Power>) return "power";
        if constexpr (std::is_same_v<T, Quadratic>) return "quadratic";
        if constexpr (std::is_same_v<T, Cubic>) return "cubic";
        if constexpr (std::is_same_v<T, Example1>) return "example1";
        return "affine";
      },
      params_);
}

std::string ScalarFunction::describe() const {
  std::ostringstream out;
  std::visit(
      [&out](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Power>) {
          out << "power(s=" << p.s << ")";
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          out << "quadratic(alpha=" << p.alpha << ",beta=" << p.beta << ",gamma=" << p.gamma
              << ")";
        } else if constexpr (std::is_same_v<T, Cubic>) {
          (void)p;
          out << "cubic";
        } else if constexpr (std::is_same_v<T, Example1>) {
          out << "example1(a=" << p.a << ",b=" << p.b << ",c=" << p.c << ",s=" << p.s << ")";
        } else {
          out << "affine(m=" << p.slope << ",k=" << p.intercept << ")";
        }
      },
      params_);
  return out.str();
}

std::string ScalarFunction::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_name();
  nlohmann::json params = nlohmann::json::object();
  std::visit(
      [&params](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Power>) {
          params["s"] = p.s;
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          params["alpha"] = p.alpha;
          params["beta"] = p.beta;
          params["gamma"] = p.gamma;
        } else if constexpr (std::is_same_v<T, Example1>) {
          params["a"] = p.a;
          params["b"] = p.b;
          params["c"] = p.c;
          params["s"] = p.s;
        } else if constexpr (std::is_same_v<T, Affine>) {
          params["m"] = p.slope;
          params["k"] = p.intercept;
        } else {
          (void)p;
        }
      },
      params_);
  j["params"] = params;
  return j.dump();
}

ScalarFunction ScalarFunction::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed function JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind")) {
    throw InputError("function JSON must be an object with a \"kind\" field");
  }
  const std::string kind = j.at("kind").get<std::string>();
  const nlohmann::json params = j.value("params", nlohmann::json::object());
  auto need = [&params, &kind](const char* name) -> double {
    if (!params.contains(name) || !params.at(name).is_number()) {
      throw InputError("function JSON kind \"" + kind + "\" missing numeric param \"" + name +
                       "\"");
    }
    return params.at(name).get<double>();
  };
  try {
    if (kind == "power") return power(need("s"));
    if (kind == "quadratic") return quadratic(need("alpha"), need("beta"), need("gamma"));
    if (kind == "cubic") return cubic();
    if (kind == "example1") return example1(need("a"), need("b"), need("c"), need("s"));
    if (kind == "affine") return affine(need("m"), need("k"));
  } catch (const InputError&) {
    throw;
  }
  throw InputError("unknown function kind \"" + kind + "\"");
}

}  // namespace ophh
