#pragma once

#include "normctl/algebra.hpp"

namespace normctl {

struct InverseReport {
  AlgebraElement inverse;
  int terms_used = 0;         // series terms summed (K+1)
  double residual_B = 0.0;    // measured ||e - a * inverse||_B
  double tail_bound = 0.0;    // geometric bound the stopping rule met
  double norm_A_inverse = 0.0;
  double norm_B_inverse = 0.0;  // ambient norm of the exact inverse
  double kappa = 0.0;           // ||a||_B * ||a^{-1}||_B
  double embedding_ratio = 0.0; // ||a||_A / ||a||_B
};

// Inverse through the normalized Hermitian reduction: with
// b = a*a / ||a*a||_B and c = e - b, the element c is positive with
// ||c||_B = 1 - 1/kappa^2 < 1, so sum_k c^k converges geometrically and
// a^{-1} = (sum_k c^k) a* / ||a*a||_B. The series length K is fixed up front
// by the geometric tail bound ||c||^{K+1}/(1-||c||) <= tol (never by the
// measured residual), and the partial sum is evaluated with O(log K)
// multiplications.
//
// Torus elements: products cap their coefficient support at
// degree(a)*(k_max+2) and shed machine-level coefficients against a graded-l1
// budget of tol/10; exceeding the budget or the series cap throws
// TruncationError. Non-invertible input (ambient lower bound below
// 1e-10*||a||_B) throws DomainError.
InverseReport neumann_invert(const AlgebraPair& pair, const AlgebraElement& a, double tol,
                             long long k_max = 1'000'000);

// LU-with-partial-pivoting inverse; the independent check for the series path.
ComplexMatrix exact_invert_matrix(const ComplexMatrix& a);

// ||a||_B * ||a^{-1}||_B (exact ambient norms, no series involved).
double condition_number(const AlgebraPair& pair, const AlgebraElement& a);

struct SeriesInverseResult {
  TorusPolynomial inverse;
  int terms = 0;
  double l1_tail_estimate = 0.0;  // coefficient mass unaccounted for
};

// 1/f as a coefficient sequence: geometric series for 1/(f conj(f)) followed
// by one multiplication with conj(f), with l1 tail control. Used where the
// coefficient-sum norm of an inverse is wanted.
SeriesInverseResult series_inverse_l1(const TorusPolynomial& f, double l1_tol,
                                      int max_terms = 100'000);

}  // namespace normctl
