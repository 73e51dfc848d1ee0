#include <doctest.h>

#include <cmath>
#include <complex>

#include "normctl/complex_matrix.hpp"
#include "normctl/errors.hpp"
#include "normctl/rng.hpp"

using namespace normctl;

namespace {

ComplexMatrix random_matrix(int n, Rng& rng) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = rng.unit_disc();
  return m;
}

// Independent operator-norm oracle: power iteration on a*a with a few
// hundred steps and a random start, returning sqrt of the Rayleigh quotient.
double power_iteration_norm(const ComplexMatrix& a, Rng& rng) {
  const ComplexMatrix h = a.adjoint() * a;
  const int n = a.dim();
  std::vector<cdouble> x(static_cast<size_t>(n));
  for (auto& v : x) v = rng.unit_disc();
  double lambda = 0.0;
  for (int it = 0; it < 400; ++it) {
    std::vector<cdouble> y(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y[static_cast<size_t>(i)] += h.at(i, j) * x[static_cast<size_t>(j)];
    double norm = 0.0;
    for (const auto& v : y) norm += std::norm(v);
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (auto& v : y) v /= norm;
    lambda = norm;
    x = std::move(y);
  }
  return std::sqrt(lambda);
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("jacobi eigenvalues of a 2x2 hermitian matrix") {
  ComplexMatrix a(2);
  a.at(0, 0) = 2.0;
  a.at(0, 1) = {0.0, 1.0};
  a.at(1, 0) = {0.0, -1.0};
  a.at(1, 1) = 2.0;
  const auto ev = hermitian_eigenvalues(a);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("jacobi eigenvalues are ascending and match the trace") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 6;
    ComplexMatrix m = random_matrix(n, rng);
    ComplexMatrix h = m + m.adjoint();  // hermitian by construction
    const auto ev = hermitian_eigenvalues(h);
    REQUIRE(static_cast<int>(ev.size()) == n);
    double trace = 0.0;
    for (int i = 0; i < n; ++i) trace += h.at(i, i).real();
    double sum = 0.0;
    for (size_t i = 0; i < ev.size(); ++i) {
      sum += ev[i];
      if (i > 0) CHECK(ev[i] >= ev[i - 1]);
    }
    CHECK(sum == doctest::Approx(trace).epsilon(1e-10));
  }
}

TEST_CASE("operator norm agrees with a power-iteration oracle") {
  Rng rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 7;
    const ComplexMatrix a = random_matrix(n, rng);
    const double jacobi = operator_norm(a);
    const double oracle = power_iteration_norm(a, rng);
    CHECK(jacobi == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("singular extent of a diagonal matrix is the extreme entries") {
  ComplexMatrix d(3);
  d.at(0, 0) = 5.0;
  d.at(1, 1) = {0.0, -2.0};  // modulus 2
  d.at(2, 2) = 0.5;
  const auto ext = singular_extent(d);
  CHECK(ext.max == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(ext.min == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(operator_norm(d) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(sigma_min(d) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("lu inverse multiplies back to the identity") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 6;
    ComplexMatrix a = random_matrix(n, rng);
    for (int i = 0; i < n; ++i) a.at(i, i) += 4.0;  // keep it comfortably invertible
    const ComplexMatrix inv = lu_invert(a);
    ComplexMatrix residual = a * inv - ComplexMatrix::identity(n);
    CHECK(residual.max_abs_entry() < 1e-11);
    residual = inv * a - ComplexMatrix::identity(n);
    CHECK(residual.max_abs_entry() < 1e-11);
  }
}

TEST_CASE("lu inverse rejects a singular matrix") {
  ComplexMatrix a(2);
  a.at(0, 0) = 1.0;
  a.at(0, 1) = 2.0;
  a.at(1, 0) = 2.0;
  a.at(1, 1) = 4.0;
  CHECK_THROWS_AS((void)lu_invert(a), DomainError);
  CHECK(sigma_min(a) < 1e-8);
}

TEST_CASE("band truncation keeps exactly the narrow diagonals") {
  ComplexMatrix a(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a.at(i, j) = cdouble(i + 1, j - i);

  const ComplexMatrix zero = truncate_band(a, 0);
  CHECK(zero.max_abs_entry() == 0.0);

  const ComplexMatrix diag = truncate_band(a, 1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j)
        CHECK(diag.at(i, j) == a.at(i, j));
      else
        CHECK(diag.at(i, j) == cdouble(0.0));
    }

  const ComplexMatrix full = truncate_band(a, 4);
  CHECK((full - a).max_abs_entry() == 0.0);
}

TEST_CASE("adjoint reverses products and preserves the operator norm") {
  Rng rng(31);
  const ComplexMatrix a = random_matrix(5, rng);
  const ComplexMatrix b = random_matrix(5, rng);
  const ComplexMatrix lhs = (a * b).adjoint();
  const ComplexMatrix rhs = b.adjoint() * a.adjoint();
  CHECK((lhs - rhs).max_abs_entry() < 1e-14);
  CHECK(operator_norm(a.adjoint()) == doctest::Approx(operator_norm(a)).epsilon(1e-10));
}

TEST_CASE("frobenius norm dominates the operator norm") {
  Rng rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    const ComplexMatrix a = random_matrix(4, rng);
    CHECK(operator_norm(a) <= a.frobenius_norm() * (1.0 + 1e-12));
  }
}

}  // TEST_SUITE
