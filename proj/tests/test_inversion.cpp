#include <doctest.h>

#include <cmath>
#include <numbers>

#include "normctl/algebra.hpp"
#include "normctl/errors.hpp"
#include "normctl/generators.hpp"
#include "normctl/inversion.hpp"
#include "normctl/rng.hpp"

using namespace normctl;

namespace {

constexpr double kPi = std::numbers::pi;

TorusPolynomial peak(int n) {
  return TorusPolynomial::one() + TorusPolynomial::cosine(n, 0.5);
}

AlgebraPair approx_pair() {
  ApproxParams params;
  params.p = 2.0;
  params.weight = WeightFunction::pow_r(0.5);
  params.n_max = 8;
  return AlgebraPair::approx_space(params);
}

ComplexMatrix two_by_two() {
  ComplexMatrix a(2);
  a.at(0, 0) = 2.0;
  a.at(0, 1) = 1.0;
  a.at(1, 0) = 1.0;
  a.at(1, 1) = 2.0;
  return a;
}

}  // namespace

TEST_SUITE("inversion") {

TEST_CASE("identity inverts to itself in one term") {
  const auto pair = AlgebraPair::c1_in_c();
  const auto rep = neumann_invert(pair, AlgebraElement{TorusPolynomial::one()}, 1e-12);
  CHECK(rep.terms_used == 1);
  CHECK(rep.residual_B == 0.0);
  CHECK(rep.norm_A_inverse == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.norm_B_inverse == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.kappa == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.embedding_ratio == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("scalar multiples reduce to the one-term branch") {
  const auto pair = AlgebraPair::c1_in_c();
  const auto rep =
      neumann_invert(pair, AlgebraElement{TorusPolynomial::constant(2.0)}, 1e-12);
  CHECK(rep.terms_used == 1);
  CHECK(rep.norm_A_inverse == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep.kappa == doctest::Approx(1.0).epsilon(1e-12));
  const auto& inv = std::get<TorusPolynomial>(rep.inverse);
  CHECK(inv.coeff(0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(inv.support_size() == 1);
}

TEST_CASE("2x2 symmetric matrix inverts to the closed form") {
  const auto pair = approx_pair();
  const ComplexMatrix a = two_by_two();
  const auto rep = neumann_invert(pair, AlgebraElement{a}, 1e-12);
  // a^{-1} = (1/3) [[2,-1],[-1,2]]
  const auto& inv = std::get<ComplexMatrix>(rep.inverse);
  CHECK(inv.at(0, 0).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(inv.at(0, 1).real() == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
  CHECK(rep.kappa == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(rep.norm_B_inverse == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.residual_B <= rep.tail_bound * (1.0 + 1e-9));
  CHECK(rep.tail_bound <= 1e-12);
}

TEST_CASE("series tail bound controls the forward error against exact inverses") {
  // The stopping rule certifies ||inv - a^{-1}||_B <=
  // tail_bound * ||a*||_B / ||a* a||_B; verified against LU inverses.
  const auto pair = approx_pair();
  Rng rng(83);
  for (double tol : {1e-6, 1e-10}) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto gen = invertible_matrix(5, 2.0 + trial, rng);
      const auto rep = neumann_invert(pair, AlgebraElement{gen.a}, tol);
      const ComplexMatrix exact = lu_invert(gen.a);
      const ComplexMatrix diff = std::get<ComplexMatrix>(rep.inverse) - exact;
      const ComplexMatrix astar = gen.a.adjoint();
      const double scale =
          operator_norm(astar) / operator_norm(astar * gen.a);
      CHECK(operator_norm(diff) <= rep.tail_bound * scale * (1.0 + 1e-6) + 1e-15);
      CHECK(rep.tail_bound <= tol);
    }
  }
}

TEST_CASE("reduction element stays within its spectral window") {
  // c = e - a*a/||a*a||_B is positive with ||c||_B = 1 - 1/kappa^2.
  const ComplexMatrix a = two_by_two();
  const ComplexMatrix aa = a.adjoint() * a;
  const double s = operator_norm(aa);
  ComplexMatrix c = ComplexMatrix::identity(2) - aa.scaled(1.0 / s);
  const auto ev = hermitian_eigenvalues(c);
  const double kappa = 3.0;
  for (double lambda : ev) {
    CHECK(lambda >= -1e-12);
    CHECK(lambda <= 1.0 - 1.0 / (kappa * kappa) + 1e-12);
  }
  CHECK(operator_norm(c) == doctest::Approx(1.0 - 1.0 / (kappa * kappa)).epsilon(1e-10));
}

TEST_CASE("reduction norms: ambient exact, refined bounded by twice the ratio squared") {
  Rng rng(89);
  const auto pairs = {AlgebraPair::c1_in_c(), approx_pair()};
  for (const auto& pair : pairs) {
    for (int trial = 0; trial < 8; ++trial) {
      AlgebraElement a;
      if (pair.kind() == AlgebraPair::Kind::C1_in_C)
        a = AlgebraElement{invertible_torus(1.5 + trial, 6, rng)};
      else
        a = AlgebraElement{invertible_matrix(5, 1.5 + trial, rng).a};
      const auto rep = neumann_invert(pair, a, 1e-9);

      const AlgebraElement astar_a = pair.multiply(pair.adjoint(a), a);
      const double s = pair.norm_B(astar_a);
      const AlgebraElement e = pair.identity_like(a);
      AlgebraElement b;
      if (pair.kind() == AlgebraPair::Kind::C1_in_C)
        b = AlgebraElement{std::get<TorusPolynomial>(astar_a).scaled(1.0 / s)};
      else
        b = AlgebraElement{std::get<ComplexMatrix>(astar_a).scaled(1.0 / s)};
      AlgebraElement c;
      if (pair.kind() == AlgebraPair::Kind::C1_in_C)
        c = AlgebraElement{std::get<TorusPolynomial>(e) - std::get<TorusPolynomial>(b)};
      else
        c = AlgebraElement{std::get<ComplexMatrix>(e) - std::get<ComplexMatrix>(b)};

      const double kappa = rep.kappa;
      CHECK(pair.norm_B(c) <= 1.0 - 1.0 / (kappa * kappa) + 1e-9);
      if (pair.kind() == AlgebraPair::Kind::ApproxSpace_in_Matrices)
        CHECK(pair.norm_B(c) ==
              doctest::Approx(1.0 - 1.0 / (kappa * kappa)).epsilon(1e-9));
      const double ratio = rep.embedding_ratio;
      CHECK(pair.norm_A(c) <= 2.0 * ratio * ratio * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("series inverse matches the LU inverse on generated matrices") {
  const auto pair = approx_pair();
  Rng rng(97);
  for (int trial = 0; trial < 10; ++trial) {
    const double kappa = 1.2 + 3.0 * rng.uniform01();
    const auto gen = invertible_matrix(4 + trial % 3, kappa, rng);
    const auto rep = neumann_invert(pair, AlgebraElement{gen.a}, 1e-11);
    const ComplexMatrix diff = std::get<ComplexMatrix>(rep.inverse) - gen.exact_inverse;
    CHECK(operator_norm(diff) <= 1e-9 * operator_norm(gen.exact_inverse) + 1e-12);
    CHECK(rep.kappa == doctest::Approx(gen.kappa).epsilon(1e-9));
  }
}

TEST_CASE("torus inverse matches the pointwise oracle") {
  const auto pair = AlgebraPair::c1_in_c();
  const auto rep = neumann_invert(pair, AlgebraElement{peak(1)}, 1e-10);
  // Exact value: sup|1/f| + sup|f'/f^2| with the closed-form maximum.
  const double x = 1.0 - std::sqrt(3.0);
  const double h = std::sqrt(1.0 - x * x) / ((1.0 + 0.5 * x) * (1.0 + 0.5 * x));
  const double oracle = 2.0 + h * kPi;
  CHECK(rep.norm_A_inverse == doctest::Approx(oracle).epsilon(1e-4));
  CHECK(rep.norm_B_inverse == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rep.kappa == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("non-invertible inputs raise domain errors") {
  const auto pair = AlgebraPair::c1_in_c();
  // 1 + e_1 vanishes at t = 1/2.
  TorusPolynomial f = TorusPolynomial::one();
  f.set_coeff(1, 1.0);
  CHECK_THROWS_AS((void)neumann_invert(pair, AlgebraElement{f}, 1e-9), DomainError);

  const auto ap = approx_pair();
  ComplexMatrix s(2);
  s.at(0, 0) = 1.0;
  s.at(0, 1) = 2.0;
  s.at(1, 0) = 2.0;
  s.at(1, 1) = 4.0;
  CHECK_THROWS_AS((void)neumann_invert(ap, AlgebraElement{s}, 1e-9), DomainError);
}

TEST_CASE("a starved term budget raises a truncation error carrying the residual") {
  const auto pair = approx_pair();
  const ComplexMatrix a = two_by_two();  // kappa = 3, tail shrinks like (8/9)^K
  try {
    (void)neumann_invert(pair, AlgebraElement{a}, 1e-12, 1);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.achieved_residual > 1e-12);
    CHECK(e.achieved_residual < 1.0);
  }
}

TEST_CASE("condition numbers: peak family, diagonal, unitary") {
  const auto pair = AlgebraPair::c1_in_c();
  CHECK(condition_number(pair, AlgebraElement{peak(3)}) ==
        doctest::Approx(3.0).epsilon(1e-9));

  const auto ap = approx_pair();
  ComplexMatrix d(2);
  d.at(0, 0) = 5.0;
  d.at(1, 1) = 1.0;
  CHECK(condition_number(ap, AlgebraElement{d}) == doctest::Approx(5.0).epsilon(1e-9));

  Rng rng(101);
  const ComplexMatrix u = random_unitary(5, rng);
  CHECK(condition_number(ap, AlgebraElement{u}) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("coefficient-space inverse: exact Wiener norm of the peak family") {
  // || (1 + cos(2 pi n t)/2)^{-1} ||_{l1} = 2 exactly (geometric coefficients
  // with ratio 2 - sqrt(3)).
  for (int n : {1, 2}) {
    const auto res = series_inverse_l1(peak(n), 1e-10);
    CHECK(res.inverse.l1_norm() == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(res.l1_tail_estimate <= 1e-10);
    // Verify it really multiplies back to one.
    const TorusPolynomial check = peak(n) * res.inverse - TorusPolynomial::one();
    CHECK(check.l1_norm() < 1e-8);
  }
}

TEST_CASE("coefficient-space inverse refuses vanishing symbols") {
  TorusPolynomial f = TorusPolynomial::one();
  f.set_coeff(1, 1.0);
  CHECK_THROWS_AS((void)series_inverse_l1(f, 1e-8), DomainError);
}

TEST_CASE("generated torus elements respect the condition target") {
  const auto pair = AlgebraPair::c1_in_c();
  Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const double target = 1.2 + 10.0 * rng.uniform01();
    const TorusPolynomial a = invertible_torus(target, 8, rng);
    const double kappa = condition_number(pair, AlgebraElement{a});
    CHECK(kappa <= target * (1.0 + 1e-9));
    CHECK(kappa >= 1.0 - 1e-12);
  }
}

TEST_CASE("generated matrices carry their exact inverse and condition number") {
  Rng rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    const double kappa = 1.0 + 20.0 * rng.uniform01();
    const auto gen = invertible_matrix(6, kappa, rng);
    const ComplexMatrix residual =
        gen.a * gen.exact_inverse - ComplexMatrix::identity(6);
    CHECK(residual.max_abs_entry() < 1e-10);
    const auto ext = singular_extent(gen.a);
    CHECK(ext.max / ext.min == doctest::Approx(gen.kappa).epsilon(1e-8));
  }
}

TEST_CASE("exact matrix inversion round-trips through lu") {
  Rng rng(109);
  const auto gen = invertible_matrix(5, 7.0, rng);
  const ComplexMatrix inv = exact_invert_matrix(gen.a);
  CHECK((inv - gen.exact_inverse).max_abs_entry() < 1e-9);
}

}  // TEST_SUITE
