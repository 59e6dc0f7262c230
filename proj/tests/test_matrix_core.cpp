#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "json.hpp"
#include "ophh/errors.hpp"
#include "ophh/hermitian.hpp"
#include "ophh/rng.hpp"
#include "ophh/scalar_function.hpp"

using namespace ophh;

namespace {

HermitianMatrix mat2(double a00, double a01, double a10, double a11) {
  RealMatrix m(2, 2);
  m << a00, a01, a10, a11;
  return HermitianMatrix::from_real(m);
}

// Characteristic-polynomial eigenvalues of a real symmetric 2x2; the
// independent oracle for the frozen 2x2 expectations below.
std::pair<double, double> eig2x2(double a, double b, double d) {
  const double tr = a + d;
  const double det = a * d - b * b;
  const double disc = std::sqrt(tr * tr - 4.0 * det);
  return {(tr - disc) / 2.0, (tr + disc) / 2.0};
}

HermitianMatrix random_psd(int dim, RngStream& rng) {
  return random_hermitian(dim, 0.0, 5.0, rng);
}

}  // namespace

TEST_CASE("construction enforces and repairs Hermitian symmetry") {
  ComplexMatrix m(2, 2);
  m << Complex(1.0, 0.0), Complex(2.0, 1.0), Complex(2.0, -1.0 + 1e-14), Complex(3.0, 0.0);
  const HermitianMatrix h(m);
  CHECK(h(0, 1) == std::conj(h(1, 0)));
  CHECK(h(0, 0).imag() == 0.0);

  ComplexMatrix bad(2, 2);
  bad << 1.0, 2.0, 5.0, 3.0;
  CHECK_THROWS_AS(HermitianMatrix{bad}, InputError);

  ComplexMatrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(HermitianMatrix{rect}, InputError);
}

TEST_CASE("decompose: fixed spectra") {
  SUBCASE("identity has flat spectrum") {
    const SpectralDecomposition d = decompose(HermitianMatrix::identity(2));
    CHECK(d.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("diagonal case") {
    RealVector v(2);
    v << 4.0, 9.0;
    const SpectralDecomposition d = decompose(HermitianMatrix::diagonal(v));
    CHECK(d.eigenvalues(0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(d.eigenvalues(1) == doctest::Approx(9.0).epsilon(1e-14));
  }
  SUBCASE("characteristic polynomial oracle") {
    const auto [lo, hi] = eig2x2(3.0, -1.0, 1.0);  // t^2 - 4t + 2 -> 2 -/+ sqrt(2)
    CHECK(lo == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));
    const SpectralDecomposition d = decompose(mat2(3.0, -1.0, -1.0, 1.0));
    CHECK(d.eigenvalues(0) == doctest::Approx(lo).epsilon(1e-13));
    CHECK(d.eigenvalues(1) == doctest::Approx(hi).epsilon(1e-13));
  }
}

TEST_CASE("decompose surfaces solver failure diagnostically") {
  // NaN entries defeat the symmetry check (NaN comparisons are false) but
  // cannot pass the reconstruction-residual gate.
  ComplexMatrix m(2, 2);
  m.setConstant(std::numeric_limits<double>::quiet_NaN());
  const HermitianMatrix bad(m);
  CHECK_THROWS_AS(decompose(bad), ConvergenceError);
}

TEST_CASE("decompose invariants on random matrices") {
  RngStream rng(2024, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const int dim = 1 + static_cast<int>(rng.uniform(0.0, 7.0));
    const HermitianMatrix a = random_hermitian(dim, -10.0, 10.0, rng);
    const SpectralDecomposition d = decompose(a);
    for (Eigen::Index i = 1; i < d.eigenvalues.size(); ++i) {
      CHECK(d.eigenvalues(i - 1) <= d.eigenvalues(i));
    }
    const double ortho =
        (d.eigenvectors.adjoint() * d.eigenvectors - ComplexMatrix::Identity(dim, dim))
            .cwiseAbs()
            .maxCoeff();
    CHECK(ortho <= 1e-10);
    const ComplexMatrix rebuilt = d.eigenvectors *
                                  d.eigenvalues.cast<Complex>().asDiagonal() *
                                  d.eigenvectors.adjoint();
    const double scale = std::max(1.0, a.spectral_norm());
    CHECK((rebuilt - a.entries()).cwiseAbs().maxCoeff() <= 1e-10 * scale);
  }
}

TEST_CASE("apply_function: fixed values") {
  const HermitianMatrix a = mat2(3.0, -1.0, -1.0, 1.0);

  SUBCASE("identity function is the generator") {
    const HermitianMatrix out = apply_function(ScalarFunction::identity(), a);
    CHECK((out - a).max_abs_entry() <= 1e-12 * a.max_abs_entry());
  }
  SUBCASE("square root of a diagonal") {
    RealVector v(2);
    v << 4.0, 9.0;
    const HermitianMatrix out =
        apply_function(ScalarFunction::power(0.5), HermitianMatrix::diagonal(v));
    CHECK(out(0, 0).real() == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(out(1, 1).real() == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(std::abs(out(0, 1)) <= 1e-13);
  }
  SUBCASE("cube against direct multiplication") {
    const ComplexMatrix direct = a.entries() * a.entries() * a.entries();
    CHECK(direct(0, 0).real() == doctest::Approx(34.0));
    CHECK(direct(0, 1).real() == doctest::Approx(-14.0));
    CHECK(direct(1, 1).real() == doctest::Approx(6.0));
    const HermitianMatrix out = apply_function(ScalarFunction::cubic(), a);
    CHECK((out.entries() - direct).cwiseAbs().maxCoeff() <= 1e-11);
  }
  SUBCASE("eigenvalue outside the domain is a precondition error") {
    RealVector v(2);
    v << -1.0, 2.0;
    CHECK_THROWS_AS(apply_function(ScalarFunction::cubic(), HermitianMatrix::diagonal(v)),
                    PreconditionError);
    CHECK_THROWS_WITH_AS(apply_function(ScalarFunction::power(0.5), HermitianMatrix::diagonal(v)),
                         doctest::Contains("-1"), PreconditionError);
  }
}

TEST_CASE("functional calculus laws on random matrices") {
  RngStream rng(7, 3);
  const ScalarFunction registry[] = {
      ScalarFunction::power(0.5), ScalarFunction::power(1.0),
      ScalarFunction::quadratic(1.0, -2.0, 0.5), ScalarFunction::cubic(),
      ScalarFunction::affine(2.0, -1.0)};

  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 2 + static_cast<int>(rng.uniform(0.0, 4.0));
    const HermitianMatrix a = random_psd(dim, rng);
    const SpectralDecomposition d = decompose(a);

    for (const ScalarFunction& f : registry) {
      const HermitianMatrix fa = apply_function(f, a);

      // Spectral mapping: Sp(f(A)) = f(Sp(A)) as multisets.
      RealVector mapped(dim);
      for (int i = 0; i < dim; ++i) mapped(i) = f.eval(d.eigenvalues(i));
      std::sort(mapped.data(), mapped.data() + dim);
      const SpectralDecomposition df = decompose(fa);
      for (int i = 0; i < dim; ++i) {
        CHECK(df.eigenvalues(i) == doctest::Approx(mapped(i)).epsilon(1e-10));
      }

      // Norm law.
      CHECK(fa.spectral_norm() ==
            doctest::Approx(mapped.cwiseAbs().maxCoeff()).epsilon(1e-10));

      // Positivity transfer.
      if (mapped.minCoeff() >= 0.0) {
        CHECK(is_psd(fa, 1e-10 * std::max(1.0, fa.spectral_norm())).is_psd);
      }
    }

    // Unit and generator.
    const HermitianMatrix unit = apply_function(ScalarFunction::constant(1.0), a);
    CHECK((unit - HermitianMatrix::identity(dim)).max_abs_entry() <= 1e-12);
    const HermitianMatrix gen = apply_function(ScalarFunction::identity(), a);
    CHECK((gen - a).max_abs_entry() <= 1e-12 * std::max(1.0, a.max_abs_entry()));
  }
}

TEST_CASE("homomorphism: products that stay in the registry") {
  RngStream rng(99, 1);
  const HermitianMatrix a = random_psd(4, rng);
  struct Triple {
    ScalarFunction f, g, fg;
  };
  const Triple triples[] = {
      {ScalarFunction::power(0.5), ScalarFunction::power(0.5), ScalarFunction::identity()},
      {ScalarFunction::identity(), ScalarFunction::identity(),
       ScalarFunction::quadratic(1.0, 0.0, 0.0)},
      {ScalarFunction::quadratic(1.0, 0.0, 0.0), ScalarFunction::identity(),
       ScalarFunction::cubic()}};
  for (const Triple& t : triples) {
    const ComplexMatrix lhs = apply_function(t.fg, a).entries();
    const ComplexMatrix rhs =
        apply_function(t.f, a).entries() * apply_function(t.g, a).entries();
    const double scale = std::max(1.0, lhs.cwiseAbs().maxCoeff());
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10 * scale);
  }
}

TEST_CASE("min_eigenvalue fixed values") {
  CHECK(min_eigenvalue(HermitianMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-14));
  RealVector v(2);
  v << 0.0, 5.0;
  CHECK(min_eigenvalue(HermitianMatrix::diagonal(v)) == doctest::Approx(0.0).epsilon(1e-14));
  // det = 67*17 - 34^2 = -17 < 0, so the matrix is indefinite.
  const auto [lo, hi] = eig2x2(67.0, -34.0, 17.0);
  CHECK(lo == doctest::Approx((84.0 - std::sqrt(7124.0)) / 2.0).epsilon(1e-14));
  CHECK(min_eigenvalue(mat2(67.0, -34.0, -34.0, 17.0)) ==
        doctest::Approx(lo).epsilon(1e-12));
}

TEST_CASE("is_psd verdicts and witnesses") {
  CHECK(is_psd(HermitianMatrix::identity(2), 0.0).is_psd);
  CHECK(is_psd(HermitianMatrix::zero(3), 0.0).is_psd);
  CHECK_FALSE(is_psd(HermitianMatrix::zero(3), 0.0).witness_vector.has_value());

  const HermitianMatrix m = mat2(67.0 / 8.0, -34.0 / 8.0, -34.0 / 8.0, 17.0 / 8.0);
  const PsdVerdict v = is_psd(m, 1e-10);
  CHECK_FALSE(v.is_psd);
  REQUIRE(v.witness_vector.has_value());
  CHECK(std::fabs(v.witness_vector->norm() - 1.0) <= 1e-12);
  CHECK(m.quadratic_form(*v.witness_vector) ==
        doctest::Approx(v.min_eigenvalue).epsilon(1e-10));

  CHECK_THROWS_AS(is_psd(m, -1.0), InputError);

  // Verdict is monotone in the tolerance.
  RngStream rng(11, 4);
  for (int i = 0; i < 10; ++i) {
    const HermitianMatrix r = random_hermitian(3, -1.0, 1.0, rng);
    for (double tol : {0.0, 1e-6, 1e-2}) {
      if (is_psd(r, tol).is_psd) {
        CHECK(is_psd(r, 10.0 * tol + 1e-12).is_psd);
      }
    }
  }
}

TEST_CASE("loewner_leq") {
  const HermitianMatrix a = mat2(3.0, -1.0, -1.0, 1.0);
  CHECK(loewner_leq(a, a, 0.0).is_psd);  // reflexive even at tol = 0

  RngStream rng(5, 9);
  const HermitianMatrix b = random_psd(2, rng);
  CHECK(loewner_leq(HermitianMatrix::zero(2), b, 1e-12).is_psd);

  RealVector v1(2), v2(2);
  v1 << 2.0, 0.0;
  v2 << 1.0, 1.0;
  const PsdVerdict v =
      loewner_leq(HermitianMatrix::diagonal(v1), HermitianMatrix::diagonal(v2), 1e-12);
  CHECK_FALSE(v.is_psd);  // difference diag(-1, 1) is indefinite

  CHECK_THROWS_AS(loewner_leq(a, HermitianMatrix::identity(3), 0.0), InputError);

  // Near-antisymmetry: both directions at tolerance tol force closeness.
  for (int i = 0; i < 10; ++i) {
    const int dim = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
    const HermitianMatrix x = random_hermitian(dim, -2.0, 2.0, rng);
    const double tol = 1e-6;
    const HermitianMatrix y = x + random_hermitian(dim, -tol / 4.0, tol / 4.0, rng);
    if (loewner_leq(x, y, tol).is_psd && loewner_leq(y, x, tol).is_psd) {
      CHECK((x - y).spectral_norm() <= 2.0 * tol * dim);
    }
  }
}

TEST_CASE("random generators: determinism and contracts") {
  SUBCASE("random_hermitian eigenvalue range and forced spectrum") {
    RngStream rng(42, 0);
    const HermitianMatrix one = random_hermitian(1, -3.0, 7.0, rng);
    CHECK(one(0, 0).real() >= -3.0);
    CHECK(one(0, 0).real() <= 7.0);

    RngStream rng2(42, 1);
    const HermitianMatrix forced = random_hermitian(4, 2.5, 2.5, rng2);
    CHECK((forced - HermitianMatrix::identity(4) * 2.5).max_abs_entry() <= 1e-12);

    RngStream s1(123, 5), s2(123, 5);
    const HermitianMatrix m1 = random_hermitian(5, -1.0, 1.0, s1);
    const HermitianMatrix m2 = random_hermitian(5, -1.0, 1.0, s2);
    CHECK((m1 - m2).max_abs_entry() == 0.0);

    const SpectralDecomposition d = decompose(m1);
    CHECK(d.eigenvalues.minCoeff() >= -1.0 - 1e-12);
    CHECK(d.eigenvalues.maxCoeff() <= 1.0 + 1e-12);
  }

  SUBCASE("random_unit_vector norm and determinism") {
    RngStream rng(42, 7);
    const ComplexVector x1 = random_unit_vector(1, rng);
    CHECK(std::fabs(std::abs(x1(0)) - 1.0) <= 1e-14);
    for (int dim : {2, 5, 17}) {
      const ComplexVector x = random_unit_vector(dim, rng);
      CHECK(std::fabs(x.norm() - 1.0) <= 1e-14);
    }
    RngStream s1(9, 9), s2(9, 9);
    CHECK((random_unit_vector(6, s1) - random_unit_vector(6, s2)).norm() == 0.0);
  }

  SUBCASE("real field mode stays real") {
    RngStream rng(3, 3);
    const HermitianMatrix m = random_hermitian(4, -1.0, 1.0, rng, Field::real_entries);
    CHECK(m.entries().imag().cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("pair_qualifies") {
  RngStream rng(21, 0);
  const HermitianMatrix b = random_psd(3, rng);
  const double tol = 1e-10 * std::max(1.0, b.spectral_norm());

  // A = I: AB + BA = 2B, PSD by construction.
  CHECK(pair_qualifies(HermitianMatrix::identity(3), b, tol).is_psd);

  // Commuting PSD pair (shared eigenbasis): AB + BA = 2AB is PSD.
  auto [ca, cb] = random_qualified_pair(3, rng);
  CHECK(pair_qualifies(ca, cb, tol).is_psd);

  // The cubic counterexample pair is PSD but unqualified:
  // AB + BA = [[6,-1],[-1,0]], det = -1.
  const HermitianMatrix a = mat2(3.0, -1.0, -1.0, 1.0);
  const HermitianMatrix e2 = mat2(1.0, 0.0, 0.0, 0.0);
  const HermitianMatrix anti = anticommutator(a, e2);
  CHECK(anti(0, 0).real() == doctest::Approx(6.0));
  CHECK(anti(0, 1).real() == doctest::Approx(-1.0));
  CHECK(anti(1, 1).real() == doctest::Approx(0.0));
  CHECK_FALSE(pair_qualifies(a, e2, 1e-10).is_psd);

  // Non-PSD input is rejected.
  const HermitianMatrix neg = mat2(-1.0, 0.0, 0.0, 1.0);
  CHECK_THROWS_AS(pair_qualifies(neg, b.dim() == 2 ? b : HermitianMatrix::identity(2), 1e-10),
                  PreconditionError);
}

TEST_CASE("random_qualified_pair always qualifies and is deterministic") {
  for (int dim : {1, 2, 4, 6}) {
    RngStream rng(77, dim);
    auto [a, b] = random_qualified_pair(dim, rng);
    const double tol = 1e-10 * std::max({1.0, a.spectral_norm(), b.spectral_norm()});
    CHECK(is_psd(a, tol).is_psd);
    CHECK(is_psd(b, tol).is_psd);
    CHECK(pair_qualifies(a, b, tol).is_psd);
  }
  RngStream s1(101, 2), s2(101, 2);
  auto p1 = random_qualified_pair(3, s1);
  auto p2 = random_qualified_pair(3, s2);
  CHECK((p1.first - p2.first).max_abs_entry() == 0.0);
  CHECK((p1.second - p2.second).max_abs_entry() == 0.0);

  // Qualification is inherited by the scaled pairs ((1-t)A, tB).
  RngStream rng(55, 8);
  auto [a, b] = random_qualified_pair(3, rng);
  for (double t : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    CHECK(pair_qualifies(a * (1.0 - t), b * t, 1e-10).is_psd);
  }
}

TEST_CASE("matrix JSON round trip and validation") {
  SUBCASE("round trip is stable") {
    RngStream rng(13, 13);
    const HermitianMatrix m = random_hermitian(3, -2.0, 2.0, rng);
    const std::string text = matrix_to_json(m);
    const HermitianMatrix back = matrix_from_json(text);
    CHECK((m - back).max_abs_entry() == 0.0);
    CHECK(matrix_to_json(back) == text);
  }
  SUBCASE("imag defaults to zero") {
    const HermitianMatrix m =
        matrix_from_json(R"({"dim": 2, "real": [[1.0, 0.5], [0.5, 2.0]]})");
    CHECK(m(0, 1).imag() == 0.0);
    CHECK(m(0, 1).real() == doctest::Approx(0.5));
    // All-real matrices serialize without an imag block.
    CHECK(matrix_to_json(m).find("imag") == std::string::npos);
  }
  SUBCASE("hermitian violation is a load error") {
    CHECK_THROWS_AS(matrix_from_json(R"({"dim": 2, "real": [[1.0, 0.5], [0.7, 2.0]]})"),
                    InputError);
    CHECK_THROWS_AS(
        matrix_from_json(
            R"({"dim": 2, "real": [[1,0],[0,1]], "imag": [[0.5,0],[0,0]]})"),
        InputError);
  }
  SUBCASE("malformed input is a load error") {
    CHECK_THROWS_AS(matrix_from_json("not json"), InputError);
    CHECK_THROWS_AS(matrix_from_json(R"({"dim": 2})"), InputError);
    CHECK_THROWS_AS(matrix_from_json(R"({"dim": 2, "real": [[1,0]]})"), InputError);
    CHECK_THROWS_AS(matrix_from_json(R"({"dim": 0, "real": []})"), InputError);
  }
  SUBCASE("complex entries round trip") {
    ComplexMatrix c(2, 2);
    c << Complex(1.0, 0.0), Complex(0.5, -0.25), Complex(0.5, 0.25), Complex(2.0, 0.0);
    const HermitianMatrix m(c);
    const HermitianMatrix back = matrix_from_json(matrix_to_json(m));
    CHECK((m - back).max_abs_entry() == 0.0);
  }
}

// The cone of PSD operators commuting-positively with every PSD operator
// collapses to the nonnegative multiples of the identity in finite
// dimensions: any spectral gap admits a rank-one violator. The search
// below documents that finding; the library never assumes it.
TEST_CASE("rank-one probes refute AB+BA >= 0 for every non-scalar PSD A") {
  RngStream rng(2718, 0);
  for (int dim = 2; dim <= 4; ++dim) {
    for (int trial = 0; trial < 20; ++trial) {
      const HermitianMatrix a = random_psd(dim, rng);
      const SpectralDecomposition d = decompose(a);
      if (d.eigenvalues(dim - 1) - d.eigenvalues(0) < 1e-3) continue;  // nearly scalar
      bool refuted = false;
      for (int probe = 0; probe < 64 && !refuted; ++probe) {
        const ComplexVector x = random_unit_vector(dim, rng);
        const HermitianMatrix rank_one = hermitian_part(x * x.adjoint());
        refuted = !pair_qualifies(a, rank_one, 1e-12).is_psd;
      }
      CHECK(refuted);
    }
  }
}
