#pragma once

#include <complex>
#include <vector>

namespace normctl {

using cdouble = std::complex<double>;

// Dense square complex matrix, row-major. Desk-scale dimensions (n <= a few
// hundred), so everything below is direct O(n^2)/O(n^3) arithmetic.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

  static ComplexMatrix identity(int n);

  int dim() const { return n_; }

  cdouble& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const cdouble& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix scaled(cdouble s) const;

  double frobenius_norm() const;
  double max_abs_entry() const;

 private:
  int n_ = 0;
  std::vector<cdouble> a_;
};

// Eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi sweeps with
// complex rotations. Deterministic; converges quadratically once off-diagonal
// mass is small. Throws NumericError if the sweep budget is exhausted.
std::vector<double> hermitian_eigenvalues(ComplexMatrix a, double rel_tol = 1e-14,
                                          int max_sweeps = 64);

struct SingularExtent {
  double min = 0.0;
  double max = 0.0;
};

// Extreme singular values, computed from the eigenvalues of a*a.
SingularExtent singular_extent(const ComplexMatrix& a);

double operator_norm(const ComplexMatrix& a);  // largest singular value
double sigma_min(const ComplexMatrix& a);      // smallest singular value

// Inverse by LU factorization with partial pivoting. Throws DomainError when a
// pivot collapses (singular to working precision).
ComplexMatrix lu_invert(const ComplexMatrix& a);

// Keep entries with |i-j| < k, zero the rest. k=0 gives the zero matrix,
// k=1 the diagonal part.
ComplexMatrix truncate_band(const ComplexMatrix& a, int k);

}  // namespace normctl
