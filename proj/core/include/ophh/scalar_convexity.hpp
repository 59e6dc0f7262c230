#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ophh/scalar_function.hpp"

namespace ophh {

struct ScalarWitness {
  double x, y, lambda;
  double violation;  // positive amount by which the inequality fails
};

/// Verdict of a grid falsifier. `holds` means "not refuted on the grid";
/// grids can refute but never certify, and reports phrase it that way.
struct ScalarVerdict {
  bool holds;
  double max_violation;  // 0 when holds
  std::optional<ScalarWitness> witness;  // maximal violator, present iff !holds
};

/// Grid falsifier for s-convexity in the second sense:
///   f(lambda x + (1-lambda) y) <= lambda^s f(x) + (1-lambda)^s f(y)
/// over x, y in [0, t_max], lambda in [0, 1], `grid_density` points per axis
/// with 0, t_max and lambda in {0, 1} hit exactly.
ScalarVerdict is_s_convex_second(const ScalarFunction& f, double s, int grid_density = 201,
                                 double t_max = 10.0);

/// Same falsifier applied to an arbitrary callable on [lo, hi]; used for the
/// segment functions t -> <f((1-t)A + tB)x, x> on [0, 1].
ScalarVerdict s_convex_second_falsifier(const std::function<double(double)>& f, double s,
                                        double lo, double hi, int grid_density = 201,
                                        int lambda_density = 0 /* 0 = grid_density */);

/// Grid falsifier for s-convexity in the first sense:
///   f(alpha x + beta y) <= alpha^s f(x) + beta^s f(y),
/// alpha on a [0, 1] grid, beta = (1 - alpha^s)^(1/s).
ScalarVerdict is_s_convex_first(const ScalarFunction& f, double s, int grid_density = 201,
                                double t_max = 10.0);

/// One implication between the membership classes, checked at sample scale.
struct ImplicationReport {
  std::string name;
  bool premise_holds;
  bool zero_condition;  // the f(0) side condition of the implication
  ScalarVerdict premise;
  ScalarVerdict conclusion;
  // "confirmed": premise held and conclusion not refuted.
  // "vacuous": premise (or the f(0) condition) failed; nothing to test.
  // "violated": premise held but the conclusion was refuted.
  std::string status;
};

struct SenseComparisonReport {
  double s1, s2;
  double f_at_zero;
  ImplicationReport second_implies_first;        // f in K2_{s2}, f(0)=0 => f in K1_{s2}
  ImplicationReport second_descends;             // f in K2_{s2}, f(0)=0 => f in K2_{s1}
  ImplicationReport first_descends;              // f in K1_{s2}, f(0)<=0 => f in K1_{s1}
  bool any_violation() const;
};

/// Requires 0 < s1 < s2 <= 1.
SenseComparisonReport check_sense_comparisons(const ScalarFunction& f, double s1, double s2,
                                              int grid_density = 201, double t_max = 10.0);

}  // namespace ophh
