#include <doctest.h>

#include <cmath>
#include <numbers>

#include "normctl/errors.hpp"
#include "normctl/rng.hpp"
#include "normctl/torus_polynomial.hpp"

using namespace normctl;

namespace {

constexpr double kPi = std::numbers::pi;

TorusPolynomial peak(int n) {
  return TorusPolynomial::one() + TorusPolynomial::cosine(n, 0.5);
}

TorusPolynomial random_poly(int degree, Rng& rng) {
  TorusPolynomial f;
  for (int k = -degree; k <= degree; ++k) f.set_coeff(k, rng.unit_disc());
  return f;
}

}  // namespace

TEST_SUITE("torus") {

TEST_CASE("product is exact coefficient convolution: cos^2") {
  const TorusPolynomial c = TorusPolynomial::cosine(1, 1.0);
  const TorusPolynomial sq = c * c;
  // cos^2(2 pi t) = 1/2 + (1/4) e_2 + (1/4) e_{-2}
  CHECK(sq.coeff(0) == cdouble(0.5));
  CHECK(sq.coeff(2) == cdouble(0.25));
  CHECK(sq.coeff(-2) == cdouble(0.25));
  CHECK(sq.coeff(1) == cdouble(0.0));
  CHECK(sq.support_size() == 3);
}

TEST_CASE("evaluate matches the coefficient sum") {
  const TorusPolynomial a = peak(3);
  CHECK(a.evaluate(0.0).real() == doctest::Approx(1.5).epsilon(1e-15));
  // cos(2 pi * 3 * 1/6) = cos(pi) = -1
  CHECK(a.evaluate(1.0 / 6.0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(a.evaluate(0.25).imag() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("sup and inf of the peak family are 3/2 and 1/2") {
  for (int n : {1, 2, 5, 16}) {
    const TorusPolynomial a = peak(n);
    CHECK(sup_abs(a).value == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(inf_abs(a).value == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("refined extrema are sound against raw sampling and stable under oversampling") {
  Rng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const TorusPolynomial f = random_poly(1 + trial % 9, rng);
    const double sup1 = sup_abs(f, 64).value;
    const double sup2 = sup_abs(f, 128).value;
    const double inf1 = inf_abs(f, 64).value;
    const double inf2 = inf_abs(f, 128).value;
    // Doubling the grid must not move a polished extremum materially.
    CHECK(sup2 <= sup1 * (1.0 + 1e-8) + 1e-12);
    CHECK(sup1 <= sup2 * (1.0 + 1e-8) + 1e-12);
    CHECK(inf1 <= inf2 * (1.0 + 1e-8) + 1e-12);
    // Soundness: |f| at any probe point never exceeds the reported sup.
    for (int i = 0; i < 100; ++i) {
      const double t = rng.uniform01();
      CHECK(std::abs(f.evaluate(t)) <= sup1 * (1.0 + 1e-10) + 1e-12);
      CHECK(std::abs(f.evaluate(t)) >= inf1 * (1.0 - 1e-10) - 1e-12);
    }
  }
}

TEST_CASE("derivative multiplies coefficients by 2 pi i k") {
  const TorusPolynomial a = peak(4);
  const TorusPolynomial d = a.derivative();
  CHECK(d.coeff(0) == cdouble(0.0));
  CHECK(d.coeff(4).real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(d.coeff(4).imag() == doctest::Approx(2.0 * kPi * 4 * 0.25).epsilon(1e-15));
  CHECK(d.coeff(-4).imag() == doctest::Approx(-2.0 * kPi * 4 * 0.25).epsilon(1e-15));
  // sup |a_n'| = pi n for the peak family (amplitude 1/2).
  CHECK(sup_abs(d).value == doctest::Approx(kPi * 4).epsilon(1e-12));
}

TEST_CASE("evaluate012 derivatives agree with finite differences") {
  Rng rng(43);
  const TorusPolynomial f = random_poly(5, rng);
  const double t = 0.3728;
  cdouble f0, f1, f2;
  f.evaluate012(t, f0, f1, f2);
  const double h = 1e-6;
  const cdouble fd1 = (f.evaluate(t + h) - f.evaluate(t - h)) / (2.0 * h);
  const cdouble fd2 = (f.evaluate(t + h) - 2.0 * f0 + f.evaluate(t - h)) / (h * h);
  CHECK(std::abs(f1 - fd1) < 1e-4 * (1.0 + std::abs(f1)));
  CHECK(std::abs(f2 - fd2) < 1e-2 * (1.0 + std::abs(f2)));
  CHECK(f0 == f.evaluate(t));
}

TEST_CASE("norms: l1, graded l1, and their relations") {
  const TorusPolynomial a = peak(2);
  CHECK(a.l1_norm() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(a.graded_l1_norm() ==
        doctest::Approx(1.0 + 0.25 * (1 + 4 * kPi) * 2).epsilon(1e-14));
  Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const TorusPolynomial f = random_poly(6, rng);
    CHECK(sup_abs(f).value <= f.l1_norm() * (1.0 + 1e-12));
    CHECK(f.l1_norm() <= f.graded_l1_norm() * (1.0 + 1e-12));
    // Graded mass dominates sup|f| + sup|f'|.
    CHECK(sup_abs(f).value + sup_abs(f.derivative()).value <=
          f.graded_l1_norm() * (1.0 + 1e-12));
  }
}

TEST_CASE("prune and truncate account for exactly the removed graded mass") {
  Rng rng(53);
  TorusPolynomial f = random_poly(8, rng);
  f.set_coeff(3, 1e-15);
  f.set_coeff(-7, -2e-15);

  TorusPolynomial pruned = f;
  const double removed = pruned.prune_small(1e-12);
  CHECK(removed > 0.0);
  CHECK(pruned.graded_l1_norm() + removed == doctest::Approx(f.graded_l1_norm()).epsilon(1e-12));
  CHECK(pruned.coeff(3) == cdouble(0.0));

  TorusPolynomial cut = f;
  const double removed_cut = cut.truncate_support(4);
  CHECK(cut.degree() <= 4);
  CHECK(cut.graded_l1_norm() + removed_cut ==
        doctest::Approx(f.graded_l1_norm()).epsilon(1e-12));
}

TEST_CASE("adjoint conjugates and reflects coefficients") {
  TorusPolynomial f;
  f.set_coeff(2, cdouble(1.0, 3.0));
  f.set_coeff(-1, cdouble(0.5, -0.25));
  const TorusPolynomial g = f.adjoint();
  CHECK(g.coeff(-2) == cdouble(1.0, -3.0));
  CHECK(g.coeff(1) == cdouble(0.5, 0.25));
  // |f| = |f*| pointwise, so the sup norms agree.
  CHECK(sup_abs(g).value == doctest::Approx(sup_abs(f).value).epsilon(1e-12));
}

TEST_CASE("sup of |(1/f)'| matches the closed form for the peak family") {
  // For f = 1 + (1/2) cos(2 pi n t): |f'|/f^2 = pi n sqrt(1-x^2)/(1+x/2)^2
  // with x = cos(2 pi n t); the maximum sits at x = 1 - sqrt(3).
  const double x = 1.0 - std::sqrt(3.0);
  const double h = std::sqrt(1.0 - x * x) / ((1.0 + 0.5 * x) * (1.0 + 0.5 * x));
  for (int n : {1, 3, 8}) {
    const double measured = sup_inverse_derivative(peak(n)).value;
    CHECK(measured == doctest::Approx(h * kPi * n).epsilon(1e-9));
  }
}

TEST_CASE("scaled and arithmetic operators act coefficient-wise") {
  const TorusPolynomial a = peak(1);
  const TorusPolynomial twice = a + a;
  CHECK(twice.coeff(0) == cdouble(2.0));
  const TorusPolynomial zero = a - a;
  CHECK(zero.empty());
  const TorusPolynomial half = a.scaled(0.5);
  CHECK(half.coeff(1) == cdouble(0.125));
  CHECK(a.degree() == 1);
  CHECK(a.min_index() == -1);
  CHECK(a.max_index() == 1);
}

}  // TEST_SUITE
