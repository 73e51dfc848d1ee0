#include "normctl/generators.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "normctl/errors.hpp"

namespace normctl {

TorusPolynomial invertible_torus(double target_kappa, int max_degree, Rng& rng) {
  if (!(target_kappa > 1.0)) throw DomainError("invertible_torus requires kappa > 1");
  if (max_degree < 1) throw DomainError("invertible_torus requires max_degree >= 1");
  const double c0 = (target_kappa + 1.0) / (target_kappa - 1.0);
  TorusPolynomial a = TorusPolynomial::constant(c0);
  if (rng.uniform01() < 0.5) {
    const int n = rng.uniform_int(1, max_degree);
    // c0 + cos(2 pi n t): sup = c0+1 at t = 0 and inf = c0-1 at t = 1/(2n),
    // so the condition number is exactly target_kappa.
    a.set_coeff(n, a.coeff(n) + 0.5);
    a.set_coeff(-n, a.coeff(-n) + 0.5);
    return a;
  }
  const int d = rng.uniform_int(1, max_degree);
  std::vector<cdouble> raw;
  double mass = 0.0;
  for (int k = -d; k <= d; ++k) {
    const cdouble z = rng.unit_disc();
    raw.push_back(z);
    mass += std::abs(z);
  }
  if (mass == 0.0) mass = 1.0;
  // l1 mass 1 keeps sup|p| <= 1 whatever the phases do.
  int idx = 0;
  for (int k = -d; k <= d; ++k, ++idx) a.set_coeff(k, a.coeff(k) + raw[idx] / mass);
  return a;
}

ComplexMatrix random_unitary(int n, Rng& rng) {
  if (n < 1) throw DomainError("random_unitary requires n >= 1");
  ComplexMatrix q(n);
  for (int col = 0; col < n; ++col) {
    std::vector<cdouble> v(n);
    for (int attempt = 0;; ++attempt) {
      if (attempt > 64) throw NumericError("random_unitary could not draw an independent column");
      for (int i = 0; i < n; ++i) v[i] = rng.unit_disc();
      // Two Gram-Schmidt passes against the settled columns.
      for (int pass = 0; pass < 2; ++pass) {
        for (int prev = 0; prev < col; ++prev) {
          cdouble dot = 0.0;
          for (int i = 0; i < n; ++i) dot += std::conj(q.at(i, prev)) * v[i];
          for (int i = 0; i < n; ++i) v[i] -= dot * q.at(i, prev);
        }
      }
      double norm2 = 0.0;
      for (int i = 0; i < n; ++i) norm2 += std::norm(v[i]);
      if (norm2 > 1e-16) {
        const double inv = 1.0 / std::sqrt(norm2);
        for (int i = 0; i < n; ++i) q.at(i, col) = v[i] * inv;
        break;
      }
    }
  }
  return q;
}

GeneratedMatrix invertible_matrix(int n, double kappa, Rng& rng) {
  if (!(kappa >= 1.0)) throw DomainError("invertible_matrix requires kappa >= 1");
  if (n < 1) throw DomainError("invertible_matrix requires n >= 1");
  const ComplexMatrix u = random_unitary(n, rng);
  const ComplexMatrix v = random_unitary(n, rng);
  std::vector<double> sigma(n);
  for (int i = 0; i < n; ++i) {
    const double frac = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    sigma[i] = std::pow(kappa, -frac);
  }
  ComplexMatrix us = u;  // U diag(s)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) us.at(i, j) *= sigma[j];
  GeneratedMatrix out;
  out.a = us * v;
  ComplexMatrix sinv_ustar = u.adjoint();  // diag(1/s) U*
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sinv_ustar.at(i, j) /= sigma[i];
  out.exact_inverse = v.adjoint() * sinv_ustar;
  out.kappa = kappa;
  return out;
}

}  // namespace normctl
