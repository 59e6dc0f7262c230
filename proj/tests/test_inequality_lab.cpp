#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "json.hpp"
#include "ophh/errors.hpp"
#include "ophh/hermitian.hpp"
#include "ophh/inequality.hpp"
#include "ophh/quadrature.hpp"
#include "ophh/report_json.hpp"
#include "ophh/rng.hpp"
#include "ophh/segment.hpp"
#include "ophh/special_functions.hpp"
#include "ophh/trial_suite.hpp"

using namespace ophh;

namespace {

HermitianMatrix mat2(double a00, double a01, double a10, double a11) {
  RealMatrix m(2, 2);
  m << a00, a01, a10, a11;
  return HermitianMatrix::from_real(m);
}

HermitianMatrix square_of(const HermitianMatrix& m) {
  return hermitian_part(m.entries() * m.entries());
}

}  // namespace

TEST_CASE("theorem 6: identity at s = 1 is an equality") {
  RngStream rng(1, 1);
  auto [a, b] = random_qualified_pair(3, rng);
  const InequalityReport rep = check_theorem6(ScalarFunction::identity(), 1.0, a, b);
  CHECK(rep.holds());
  for (const SideCheck& side : rep.sides) {
    CHECK(std::fabs(side.min_eigenvalue) <=
          1e-12 * std::max({1.0, a.spectral_norm(), b.spectral_norm()}));
  }
}

TEST_CASE("theorem 6: square function slack identities") {
  RngStream rng(2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const HermitianMatrix a = random_hermitian(3, 0.1, 4.0, rng);
    const HermitianMatrix b = random_hermitian(3, 0.1, 4.0, rng);
    const ScalarFunction sq = ScalarFunction::quadratic(1.0, 0.0, 0.0);
    const HermitianMatrix integral = operator_integral(sq, a, b).value;
    const HermitianMatrix mid = apply_function(sq, segment_point(a, b, 0.5));
    const HermitianMatrix ends = (apply_function(sq, a) + apply_function(sq, b)) * 0.5;
    const HermitianMatrix c2 = square_of(a - b);
    // integral - f(mid) = (A-B)^2/12 and endpoint avg - integral = (A-B)^2/6.
    CHECK((integral - mid - c2 * (1.0 / 12.0)).spectral_norm() <=
          1e-10 * std::max(1.0, c2.spectral_norm()));
    CHECK((ends - integral - c2 * (1.0 / 6.0)).spectral_norm() <=
          1e-10 * std::max(1.0, c2.spectral_norm()));
    CHECK(check_theorem6(sq, 1.0, a, b).holds());
  }
}

TEST_CASE("theorem 6: commuting pair reduces to the scalar chain per eigenvalue") {
  RealVector va(2), vb(2);
  va << 1.0, 4.0;
  vb << 2.0, 3.0;
  const HermitianMatrix a = HermitianMatrix::diagonal(va);
  const HermitianMatrix b = HermitianMatrix::diagonal(vb);
  const double s = 0.5;
  const InequalityReport rep = check_theorem6(ScalarFunction::power(s), s, a, b);
  CHECK(rep.holds());

  // Scalar oracle per eigenvalue pair: everything stays diagonal.
  const HermitianMatrix integral = operator_integral(ScalarFunction::power(s), a, b).value;
  for (int i = 0; i < 2; ++i) {
    const double lo = va(i), hi = vb(i);
    const double scalar = integrate_adaptive(
        [&](double t) { return std::pow((1.0 - t) * lo + t * hi, s); }, 0.0, 1.0, 1e-12);
    CHECK(integral(i, i).real() == doctest::Approx(scalar).epsilon(1e-10));
    CHECK(std::pow(2.0, s - 1.0) * std::pow(0.5 * (lo + hi), s) <= scalar + 1e-10);
    CHECK(scalar <= (std::pow(lo, s) + std::pow(hi, s)) / (s + 1.0) + 1e-10);
  }
}

TEST_CASE("theorem 6: preconditions") {
  const HermitianMatrix a = mat2(1.0, 0.0, 0.0, 1.0);
  CHECK_THROWS_AS(check_theorem6(ScalarFunction::identity(), 0.0, a, a), InputError);
  const HermitianMatrix neg = mat2(-1.0, 0.0, 0.0, 1.0);
  CHECK_THROWS_AS(check_theorem6(ScalarFunction::identity(), 1.0, neg, a), PreconditionError);
}

TEST_CASE("theorem 5: affine collapses the whole chain") {
  RngStream rng(3, 3);
  const HermitianMatrix a = random_hermitian(4, -5.0, 5.0, rng);
  const HermitianMatrix b = random_hermitian(4, -5.0, 5.0, rng);
  const InequalityReport rep = check_theorem5(ScalarFunction::affine(2.0, -1.0), a, b);
  CHECK(rep.holds());
  for (const SideCheck& side : rep.sides) {
    CHECK(std::fabs(side.min_eigenvalue) <= 1e-10 * std::max(1.0, a.spectral_norm()));
  }
}

TEST_CASE("theorem 5: quadratic slack identities from the expansion oracle") {
  RngStream rng(4, 4);
  const HermitianMatrix a = random_hermitian(3, -3.0, 3.0, rng);
  const HermitianMatrix b = random_hermitian(3, -3.0, 3.0, rng);
  const ScalarFunction sq = ScalarFunction::quadratic(1.0, 0.0, 0.0);
  const HermitianMatrix c2 = square_of(a - b);
  const double scale = std::max(1.0, c2.spectral_norm());

  const HermitianMatrix mid = apply_function(sq, segment_point(a, b, 0.5));
  const HermitianMatrix quarters = (apply_function(sq, segment_point(a, b, 0.25)) +
                                    apply_function(sq, segment_point(a, b, 0.75))) *
                                   0.5;
  const HermitianMatrix integral = operator_integral(sq, a, b).value;
  const HermitianMatrix ends = (apply_function(sq, a) + apply_function(sq, b)) * 0.5;
  const HermitianMatrix upper = (mid + ends) * 0.5;

  CHECK((quarters - mid - c2 * (1.0 / 16.0)).spectral_norm() <= 1e-10 * scale);
  CHECK((integral - quarters - c2 * (1.0 / 48.0)).spectral_norm() <= 1e-10 * scale);
  CHECK((upper - integral - c2 * (1.0 / 24.0)).spectral_norm() <= 1e-10 * scale);
  CHECK((ends - upper - c2 * (1.0 / 8.0)).spectral_norm() <= 1e-10 * scale);

  CHECK(check_theorem5(sq, a, b).holds());
  CHECK_THROWS_AS(check_theorem5(ScalarFunction::cubic(), a, b), PreconditionError);
}

TEST_CASE("theorem 5 suite over random quadratics") {
  SuiteConfig cfg;
  cfg.master_seed = 11;
  cfg.trials = 50;
  cfg.dim = 3;
  cfg.pair_source = PairSource::hermitian;
  const SuiteResult r = run_theorem5_suite(std::nullopt, cfg);
  CHECK(r.verdict() == "pass");
  CHECK(r.failure_count == 0);
  CHECK(r.min_slack >= -r.max_tolerance);
}

TEST_CASE("mn_values symmetries") {
  RngStream rng(5, 5);
  const HermitianMatrix a = random_hermitian(3, 0.0, 3.0, rng);
  const ComplexVector x = random_unit_vector(3, rng);
  const ScalarFunction f = ScalarFunction::power(0.5);
  const ScalarFunction g = ScalarFunction::identity();

  const auto [m_aa, n_aa] = mn_values(f, g, a, a, x);
  CHECK(m_aa == doctest::Approx(n_aa).epsilon(1e-13));

  const auto [m_id, n_id] =
      mn_values(f, f, HermitianMatrix::identity(3), HermitianMatrix::identity(3), x);
  CHECK(m_id == doctest::Approx(2.0).epsilon(1e-12));  // 2 f(1)^2
  CHECK(n_id == doctest::Approx(2.0).epsilon(1e-12));

  const HermitianMatrix b = random_hermitian(3, 0.0, 3.0, rng);
  const auto [m1, n1] = mn_values(f, g, a, b, x);
  const auto [m2, n2] = mn_values(f, g, b, a, x);
  CHECK(m1 == doctest::Approx(m2).epsilon(1e-13));
  CHECK(n1 == doctest::Approx(n2).epsilon(1e-13));

  ComplexVector big(3);
  big << 2.0, 0.0, 0.0;
  CHECK_THROWS_AS(mn_values(f, g, a, b, big), PreconditionError);
}

TEST_CASE("theorems 7 and 8: 1x1 equality cases") {
  RealVector zero(1), one(1);
  zero << 0.0;
  one << 1.0;
  const HermitianMatrix a = HermitianMatrix::diagonal(zero);
  const HermitianMatrix b = HermitianMatrix::diagonal(one);
  ComplexVector x(1);
  x(0) = 1.0;
  const ScalarFunction id = ScalarFunction::identity();

  const InequalityReport r7 = check_theorem7(id, 1.0, id, 1.0, a, b, x);
  CHECK(r7.holds());
  REQUIRE(r7.sides.size() == 1);
  CHECK(r7.sides[0].min_eigenvalue == doctest::Approx(0.0).epsilon(1e-10));
  for (const auto& [k, v] : r7.quantities) {
    if (k == "integral") CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    if (k == "M") CHECK(v == doctest::Approx(1.0));
    if (k == "N") CHECK(v == doctest::Approx(0.0));
    if (k == "coeff_m") CHECK(v == 1.0 / 3.0);
    if (k == "coeff_n") CHECK(v == 1.0 / 6.0);
  }

  const InequalityReport r8 = check_theorem8(id, 1.0, id, 1.0, a, b, x);
  CHECK(r8.holds());
  CHECK(r8.sides[0].min_eigenvalue == doctest::Approx(0.0).epsilon(1e-10));
  for (const auto& [k, v] : r8.quantities) {
    if (k == "lhs") CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
    if (k == "rhs") CHECK(v == doctest::Approx(0.5).epsilon(1e-10));
    if (k == "coeff_m") CHECK(v == 1.0 / 6.0);  // beta pairs with M here
    if (k == "coeff_n") CHECK(v == 1.0 / 3.0);
  }
}

TEST_CASE("theorems 7 and 8: constant functions") {
  RngStream rng(6, 6);
  auto [a, b] = random_qualified_pair(2, rng);
  const ComplexVector x = random_unit_vector(2, rng);
  const ScalarFunction one = ScalarFunction::constant(1.0);

  // Mean bound: 1 <= 2/(s1+s2+1) + 2 B(s1+1, s2+1) for all s in (0,1].
  for (auto [s1, s2] : {std::pair{0.3, 0.7}, {0.5, 0.5}, {1.0, 1.0}}) {
    const InequalityReport r7 = check_theorem7(one, s1, one, s2, a, b, x);
    CHECK(r7.holds());
  }
  // Midpoint bound at s1 = s2 = 1 is an equality: 2 = 1 + 2/6 + 2/3.
  const InequalityReport r8 = check_theorem8(one, 1.0, one, 1.0, a, b, x);
  CHECK(r8.holds());
  CHECK(r8.sides[0].min_eigenvalue == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("product suite over qualified pairs") {
  SuiteConfig cfg;
  cfg.master_seed = 7;
  cfg.trials = 10;
  cfg.dim = 3;
  cfg.vectors_per_pair = 4;
  const SuiteResult r = run_product_suite(ScalarFunction::power(0.3), 0.3,
                                          ScalarFunction::power(0.7), 0.7, cfg, true, true);
  CHECK(r.verdict() == "pass");
  CHECK(r.min_slack >= -1e-8);
  bool saw_beta = false;
  for (const auto& [k, v] : r.quantities) {
    if (k == "coeff_beta") {
      saw_beta = true;
      CHECK(v == doctest::Approx(beta_function(1.3, 1.7)).epsilon(1e-14));
    }
  }
  CHECK(saw_beta);
}

TEST_CASE("lemma positivity") {
  RngStream rng(8, 8);
  const HermitianMatrix a = random_hermitian(3, 0.0, 4.0, rng);
  CHECK(check_lemma_positivity(ScalarFunction::power(0.5), 0.5, a).is_psd);
  CHECK(check_lemma_positivity(ScalarFunction::quadratic(1.0, 0.0, 1.0), 0.5, a).is_psd);

  // Contrapositive: f(A) not positive, so f cannot be operator s-convex on
  // a family containing A.
  RealVector v(2);
  v << 1.0, 2.0;
  const PsdVerdict neg = check_lemma_positivity(ScalarFunction::affine(1.0, -5.0), 0.5,
                                                HermitianMatrix::diagonal(v));
  CHECK_FALSE(neg.is_psd);

  CHECK_THROWS_AS(check_lemma_positivity(ScalarFunction::power(1.0), 1.0, a),
                  PreconditionError);
}

TEST_CASE("phi equivalence") {
  RngStream rng(9, 9);
  SUBCASE("quadratic quadratic forms are convex along any segment") {
    const HermitianMatrix a = random_hermitian(3, -3.0, 3.0, rng);
    const HermitianMatrix b = random_hermitian(3, -3.0, 3.0, rng);
    const PhiReport rep = check_phi_equivalence(ScalarFunction::quadratic(1.0, 0.0, 0.0), 1.0, a,
                                                b, 6, 21, rng);
    CHECK(rep.all_hold);
    CHECK_FALSE(rep.refuting_index.has_value());
  }
  SUBCASE("cubic on the counterexample pair is refuted") {
    const PhiReport rep =
        check_phi_equivalence(ScalarFunction::cubic(), 1.0, cubic_counterexample_a(),
                              cubic_counterexample_b(), 6, 21, rng);
    CHECK_FALSE(rep.all_hold);
    REQUIRE(rep.refuting_index.has_value());
    const PhiVectorResult& bad = rep.vectors[*rep.refuting_index];
    REQUIRE(bad.verdict.witness.has_value());
    CHECK(bad.verdict.max_violation > 1e-6);
    // The violation is real: recompute phi at the witness triple.
    const ScalarWitness& w = *bad.verdict.witness;
    auto phi = [&](double t) {
      return apply_function(ScalarFunction::cubic(),
                            segment_point(cubic_counterexample_a(), cubic_counterexample_b(), t))
          .quadratic_form(bad.x);
    };
    const double lhs = phi(w.lambda * w.x + (1.0 - w.lambda) * w.y);
    const double rhs = w.lambda * phi(w.x) + (1.0 - w.lambda) * phi(w.y);
    CHECK(lhs - rhs == doctest::Approx(bad.verdict.max_violation).epsilon(1e-9));
  }
  SUBCASE("A = B gives a constant phi, unrefuted for any s") {
    const HermitianMatrix a = random_hermitian(3, 0.0, 4.0, rng);
    for (double s : {0.25, 0.75}) {
      const PhiReport rep = check_phi_equivalence(ScalarFunction::power(s), s, a, a, 4, 21, rng);
      CHECK(rep.all_hold);
    }
  }
}

TEST_CASE("certify operator s-convexity") {
  SUBCASE("quadratics on Hermitian pairs, with the midpoint slack identity") {
    SuiteConfig cfg;
    cfg.master_seed = 12;
    cfg.trials = 30;
    cfg.dim = 3;
    cfg.pair_source = PairSource::hermitian;
    const double alpha = 1.7;
    const ScalarFunction f = ScalarFunction::quadratic(alpha, -1.0, 2.0);
    const SuiteResult r = certify_operator_s_convexity(f, 1.0, cfg);
    CHECK(r.verdict() == "pass");

    RngStream rng(12, 0);
    auto [a, b] = draw_pair(cfg, rng);
    const HermitianMatrix slack = (apply_function(f, a) + apply_function(f, b)) * 0.5 -
                                  apply_function(f, segment_point(a, b, 0.5));
    const HermitianMatrix oracle = square_of(a - b) * (alpha / 4.0);
    CHECK((slack - oracle).spectral_norm() <=
          1e-12 * std::max(1.0, oracle.spectral_norm()));
  }
  SUBCASE("cubic is falsified over PSD pairs") {
    SuiteConfig cfg;
    cfg.master_seed = 7;
    cfg.trials = 100;
    cfg.dim = 2;
    cfg.pair_source = PairSource::psd;
    const SuiteResult r = certify_operator_s_convexity(ScalarFunction::cubic(), 1.0, cfg);
    CHECK(r.verdict() == "fail");
    CHECK(r.failure_count > 0);
    REQUIRE(!r.witnesses.empty());
    const TheoremWitness& w = r.witnesses.front();
    REQUIRE(w.a.has_value());
    REQUIRE(w.lambda.has_value());
    // Re-derive the violation from the stored witness.
    const ScalarFunction cube = ScalarFunction::cubic();
    const HermitianMatrix lhs = apply_function(cube, segment_point(*w.a, *w.b, *w.lambda));
    const HermitianMatrix rhs = apply_function(cube, *w.a) * std::pow(1.0 - *w.lambda, 1.0) +
                                apply_function(cube, *w.b) * std::pow(*w.lambda, 1.0);
    CHECK(min_eigenvalue(rhs - lhs) == doctest::Approx(w.min_eig).epsilon(1e-9));
    CHECK(w.min_eig < 0.0);
  }
  SUBCASE("the counterexample pair itself is refuted at the midpoint") {
    const ScalarFunction cube = ScalarFunction::cubic();
    const HermitianMatrix a = cubic_counterexample_a();
    const HermitianMatrix b = cubic_counterexample_b();
    const HermitianMatrix mid_rhs = (apply_function(cube, a) + apply_function(cube, b)) * 0.5;
    const HermitianMatrix mid_lhs = apply_function(cube, segment_point(a, b, 0.5));
    CHECK_FALSE(loewner_leq(mid_lhs, mid_rhs, 1e-8).is_psd);
  }
  SUBCASE("powers on qualified pairs pass") {
    SuiteConfig cfg;
    cfg.master_seed = 13;
    cfg.trials = 40;
    cfg.dim = 3;
    const SuiteResult r = certify_operator_s_convexity(ScalarFunction::power(0.5), 0.5, cfg);
    CHECK(r.verdict() == "pass");
    CHECK(r.min_slack >= -r.max_tolerance);
  }
}

TEST_CASE("subadditivity at t^s") {
  SUBCASE("A = B = I at s = 1/2: slack (2 - sqrt 2) I") {
    const InequalityReport rep =
        check_subadditivity(0.5, HermitianMatrix::identity(2), HermitianMatrix::identity(2));
    CHECK(rep.holds());
    CHECK(rep.sides[0].min_eigenvalue == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("commuting diagonal pair reduces to scalar subadditivity") {
    RealVector va(3), vb(3);
    va << 0.5, 2.0, 7.0;
    vb << 1.0, 0.25, 3.0;
    const HermitianMatrix a = HermitianMatrix::diagonal(va);
    const HermitianMatrix b = HermitianMatrix::diagonal(vb);
    const InequalityReport rep = check_subadditivity(0.5, a, b);
    CHECK(rep.holds());
    double worst = 1e300;
    for (int i = 0; i < 3; ++i) {
      worst = std::min(worst, std::sqrt(va(i)) + std::sqrt(vb(i)) - std::sqrt(va(i) + vb(i)));
    }
    CHECK(rep.sides[0].min_eigenvalue == doctest::Approx(worst).epsilon(1e-11));
  }
  SUBCASE("identity against random PSD always qualifies") {
    RngStream rng(14, 14);
    for (int i = 0; i < 10; ++i) {
      const HermitianMatrix b = random_hermitian(3, 0.0, 5.0, rng);
      CHECK(check_subadditivity(0.5, HermitianMatrix::identity(3), b).holds());
    }
  }
  SUBCASE("unqualified pair is a precondition error") {
    CHECK_THROWS_AS(
        check_subadditivity(0.5, cubic_counterexample_a(), cubic_counterexample_b()),
        PreconditionError);
  }
}

TEST_CASE("cubic counterexample reproduction") {
  const InequalityReport rep = reproduce_cubic_counterexample();
  CHECK(rep.holds());
  REQUIRE(rep.witness.has_value());

  double dev = -1.0, slack00 = 0.0, min_eig = 0.0;
  for (const auto& [k, v] : rep.quantities) {
    if (k == "max_entry_deviation") dev = v;
    if (k == "slack_00") slack00 = v;
    if (k == "slack_min_eigenvalue") min_eig = v;
  }
  CHECK(dev >= 0.0);
  CHECK(dev <= 1e-12);
  CHECK(slack00 == doctest::Approx(67.0 / 8.0).epsilon(1e-13));
  // 8 * slack has det = 67*17 - 34^2 = -17 and min eigenvalue (84 - sqrt 7124)/2.
  const HermitianMatrix slack8 = cubic_counterexample_slack() * 8.0;
  const double det =
      (slack8(0, 0) * slack8(1, 1) - slack8(0, 1) * slack8(1, 0)).real();
  CHECK(det == doctest::Approx(-17.0).epsilon(1e-12));
  CHECK(min_eig == doctest::Approx((84.0 - std::sqrt(7124.0)) / 16.0).epsilon(1e-10));

  // The witness vector realizes the negative direction.
  REQUIRE(rep.witness->x.has_value());
  const double form = cubic_counterexample_slack().quadratic_form(*rep.witness->x);
  CHECK(form == doctest::Approx(min_eig).epsilon(1e-10));
}

TEST_CASE("phi consistency suite") {
  SuiteConfig cfg;
  cfg.master_seed = 15;
  cfg.trials = 10;
  cfg.dim = 3;
  cfg.vectors_per_pair = 4;
  const SuiteResult r = run_phi_consistency_suite(ScalarFunction::power(0.5), 0.5, cfg);
  CHECK(r.verdict() == "pass");
  CHECK(r.failure_count == 0);
}

TEST_CASE("suite determinism across reruns and thread counts") {
  SuiteConfig cfg;
  cfg.master_seed = 99;
  cfg.trials = 24;
  cfg.dim = 3;
  const ScalarFunction f = ScalarFunction::power(0.5);

  const SuiteResult r1 = run_theorem6_suite(f, 0.5, cfg);
  const SuiteResult r2 = run_theorem6_suite(f, 0.5, cfg);
  cfg.threads = 4;
  const SuiteResult r4 = run_theorem6_suite(f, 0.5, cfg);

  const std::string j1 = suite_result_to_json(r1, false);
  CHECK(j1 == suite_result_to_json(r2, false));
  CHECK(j1 == suite_result_to_json(r4, false));

  cfg.master_seed = 100;
  cfg.threads = 1;
  const SuiteResult other = run_theorem6_suite(f, 0.5, cfg);
  CHECK(j1 != suite_result_to_json(other, false));
}

TEST_CASE("suite witness cap and report JSON shape") {
  SuiteConfig cfg;
  cfg.master_seed = 7;
  cfg.trials = 60;
  cfg.dim = 2;
  cfg.pair_source = PairSource::psd;
  cfg.witness_cap = 3;
  const SuiteResult r = certify_operator_s_convexity(ScalarFunction::cubic(), 1.0, cfg);
  CHECK(r.failure_count > 3);
  CHECK(r.witnesses.size() == 3);
  for (std::size_t i = 1; i < r.witnesses.size(); ++i) {
    CHECK(r.witnesses[i - 1].trial < r.witnesses[i].trial);
  }

  const nlohmann::json j = nlohmann::json::parse(suite_result_to_json(r));
  CHECK(j.at("theorem") == "operator-convexity");
  CHECK(j.at("seed") == 7);
  CHECK(j.at("trials") == 60);
  CHECK(j.at("dim") == 2);
  CHECK(j.at("verdict") == "fail");
  CHECK(j.at("witnesses").is_array());
  CHECK(j.at("witnesses").size() == 3);
  const auto& w = j.at("witnesses").at(0);
  CHECK(w.contains("trial"));
  CHECK(w.contains("lambda"));
  CHECK(w.contains("min_eig"));
  CHECK(w.at("A").contains("dim"));
  CHECK(w.at("B").contains("real"));
  CHECK(j.contains("meta"));
  CHECK(j.at("meta").contains("timestamp"));
}
