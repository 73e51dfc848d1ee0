#include "normctl/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "normctl/errors.hpp"

namespace normctl {

namespace {

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim())
    throw StructuralError("matrix dimension mismatch: " + std::to_string(a.dim()) +
                          " vs " + std::to_string(b.dim()));
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix e(n);
  for (int i = 0; i < n; ++i) e.at(i, i) = 1.0;
  return e;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(j, i) = std::conj(at(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  check_same_dim(*this, rhs);
  ComplexMatrix r(n_);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      const cdouble aik = at(i, k);
      if (aik == cdouble{}) continue;
      for (int j = 0; j < n_; ++j) r.at(i, j) += aik * rhs.at(k, j);
    }
  }
  return r;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  check_same_dim(*this, rhs);
  ComplexMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(i, j) = at(i, j) + rhs.at(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  check_same_dim(*this, rhs);
  ComplexMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(i, j) = at(i, j) - rhs.at(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::scaled(cdouble s) const {
  ComplexMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(i, j) = s * at(i, j);
  return r;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cdouble& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs_entry() const {
  double m = 0.0;
  for (const cdouble& z : a_) m = std::max(m, std::abs(z));
  return m;
}

std::vector<double> hermitian_eigenvalues(ComplexMatrix a, double rel_tol, int max_sweeps) {
  const int n = a.dim();
  if (n == 0) return {};
  const double scale = a.frobenius_norm();
  if (scale == 0.0) return std::vector<double>(n, 0.0);

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * std::norm(a.at(i, j));
    return std::sqrt(s);
  };

  // Annihilate a[p][q] with the unitary that, after factoring out the phase of
  // a[p][q], reduces to the classical symmetric Jacobi rotation.
  auto rotate = [&](int p, int q) {
    const cdouble apq = a.at(p, q);
    const double g = std::abs(apq);
    if (g == 0.0) return;
    const double alpha = a.at(p, p).real();
    const double beta = a.at(q, q).real();
    const double tau = (beta - alpha) / (2.0 * g);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const cdouble phase = apq / g;
    const cdouble s = (t * c) * phase;   // complex sine folded with the phase
    const cdouble sb = std::conj(s);

    // A <- U* A U, U differing from the identity in the (p,q) block:
    // U[p][p]=c, U[p][q]=conj(s), U[q][p]=-s, U[q][q]=c.
    for (int i = 0; i < n; ++i) {
      const cdouble v = a.at(i, p);
      const cdouble w = a.at(i, q);
      a.at(i, p) = v * c - w * s;
      a.at(i, q) = v * sb + w * c;
    }
    for (int j = 0; j < n; ++j) {
      const cdouble v = a.at(p, j);
      const cdouble w = a.at(q, j);
      a.at(p, j) = c * v - sb * w;
      a.at(q, j) = s * v + c * w;
    }
    a.at(p, q) = 0.0;
    a.at(q, p) = 0.0;
    a.at(p, p) = a.at(p, p).real();
    a.at(q, q) = a.at(q, q).real();
  };

  const double target = rel_tol * scale;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= target) {
      std::vector<double> ev(n);
      for (int i = 0; i < n; ++i) ev[i] = a.at(i, i).real();
      std::sort(ev.begin(), ev.end());
      return ev;
    }
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) rotate(p, q);
  }
  throw NumericError("hermitian eigensolver did not converge in " +
                     std::to_string(max_sweeps) + " sweeps");
}

SingularExtent singular_extent(const ComplexMatrix& a) {
  const ComplexMatrix gram = a.adjoint() * a;
  std::vector<double> ev = hermitian_eigenvalues(gram);
  SingularExtent r;
  r.min = std::sqrt(std::max(0.0, ev.front()));
  r.max = std::sqrt(std::max(0.0, ev.back()));
  return r;
}

double operator_norm(const ComplexMatrix& a) { return singular_extent(a).max; }

double sigma_min(const ComplexMatrix& a) { return singular_extent(a).min; }

ComplexMatrix lu_invert(const ComplexMatrix& a) {
  const int n = a.dim();
  ComplexMatrix lu = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;

  const double pivot_floor = 1e-300;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(lu.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double cand = std::abs(lu.at(i, k));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (best <= pivot_floor) throw DomainError("matrix is singular to working precision");
    if (piv != k) {
      for (int j = 0; j < n; ++j) {
        std::swap(lu.at(piv, j), lu.at(k, j));
        std::swap(inv.at(piv, j), inv.at(k, j));
      }
    }
    const cdouble pivot = lu.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cdouble m = lu.at(i, k) / pivot;
      lu.at(i, k) = m;
      for (int j = k + 1; j < n; ++j) lu.at(i, j) -= m * lu.at(k, j);
      for (int j = 0; j < n; ++j) inv.at(i, j) -= m * inv.at(k, j);
    }
  }
  // Back substitution on each column of the permuted identity.
  for (int j = 0; j < n; ++j) {
    for (int i = n - 1; i >= 0; --i) {
      cdouble s = inv.at(i, j);
      for (int k = i + 1; k < n; ++k) s -= lu.at(i, k) * inv.at(k, j);
      inv.at(i, j) = s / lu.at(i, i);
    }
  }
  return inv;
}

ComplexMatrix truncate_band(const ComplexMatrix& a, int k) {
  if (k < 0) throw DomainError("band index must be nonnegative");
  const int n = a.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(i - j) < k) r.at(i, j) = a.at(i, j);
  return r;
}

}  // namespace normctl
