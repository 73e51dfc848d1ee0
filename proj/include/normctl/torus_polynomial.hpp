#pragma once

#include <complex>
#include <map>

namespace normctl {

using cdouble = std::complex<double>;

// Trigonometric polynomial f(t) = sum_k a_k e^{2 pi i k t} on the unit circle,
// stored as its (sparse) coefficient map. Products are exact coefficient
// convolutions; analysis norms are computed from sampled values elsewhere.
class TorusPolynomial {
 public:
  TorusPolynomial() = default;

  static TorusPolynomial one();
  static TorusPolynomial constant(cdouble v);
  // amplitude * cos(2 pi n t)
  static TorusPolynomial cosine(int n, double amplitude);

  bool empty() const { return coeffs_.empty(); }
  int support_size() const { return static_cast<int>(coeffs_.size()); }
  int degree() const;  // max |k| over the support; 0 when empty
  int min_index() const;
  int max_index() const;

  cdouble coeff(int k) const;
  void set_coeff(int k, cdouble v);  // v == 0 erases the entry
  const std::map<int, cdouble>& coeffs() const { return coeffs_; }

  TorusPolynomial adjoint() const;    // conj(a_{-k})
  TorusPolynomial derivative() const; // (2 pi i k) a_k

  TorusPolynomial operator*(const TorusPolynomial& rhs) const;
  TorusPolynomial operator+(const TorusPolynomial& rhs) const;
  TorusPolynomial operator-(const TorusPolynomial& rhs) const;
  TorusPolynomial scaled(cdouble s) const;

  cdouble evaluate(double t) const;
  // f, f', f'' at t in one pass (used by the extremum refinement).
  void evaluate012(double t, cdouble& f0, cdouble& f1, cdouble& f2) const;

  double l1_norm() const;  // sum |a_k|
  // sum (1 + 2 pi |k|) |a_k|: dominates both the sup norm of the polynomial
  // and of its derivative, so it is the right budget metric when dropping
  // coefficients.
  double graded_l1_norm() const;

  // Remove entries with |a_k| <= floor; returns the graded-l1 mass removed.
  double prune_small(double floor);
  // Remove entries with |k| > cap; returns the graded-l1 mass removed.
  double truncate_support(int cap);

 private:
  std::map<int, cdouble> coeffs_;
};

struct ExtremumResult {
  double value = 0.0;  // extremal |f|
  double arg = 0.0;    // a location attaining it (mod 1)
};

// sup / inf of |f(t)| over the circle: |f|^2 is sampled on
// oversampling*(degree+1) equispaced points, then every local extremum is
// polished by safeguarded Newton on d|f|^2/dt. The returned value is never
// below (for sup) / above (for inf) the best grid sample.
ExtremumResult sup_abs(const TorusPolynomial& f, int oversampling = 64,
                       double rel_tol = 1e-12);
ExtremumResult inf_abs(const TorusPolynomial& f, int oversampling = 64,
                       double rel_tol = 1e-12);

// sup over the circle of |f'(t)| / |f(t)|^2, which is the sup norm of the
// derivative of 1/f. Dense sampling plus golden-section polish on every local
// maximum; never below the best raw sample. Requires f to have no zeros
// (callers gate on inf_abs first; a zero would only inflate the sup).
ExtremumResult sup_inverse_derivative(const TorusPolynomial& f, int oversampling = 64);

}  // namespace normctl
