#pragma once

#include <cstdint>
#include <vector>

#include "normctl/algebra.hpp"

namespace normctl {

// Coefficient tail mass psi(x) = sum over |j| >= x of |a_j|, defined for real
// x >= 0. Integer arguments give the usual tail; any x in (0,1] sums every
// nonzero frequency. Nonincreasing, psi(0) = coefficient-sum norm, 0 beyond
// the degree.
double tail_psi(const TorusPolynomial& a, double x);

struct TailFunction {
  TorusPolynomial source;
  double operator()(double x) const { return tail_psi(source, x); }
};

struct QuotientRuleReport {
  double norm_C_f = 0.0;        // sup |f|
  double norm_C1_f = 0.0;       // sup |f| + sup |f'|
  double norm_C_inv = 0.0;      // sup |1/f|
  double sup_inv_deriv = 0.0;   // sup |f'/f^2| = sup |(1/f)'|
  double lhs = 0.0;             // ||1/f||_C1
  double rhs = 0.0;             // (||f||_C1 ||1/f||_C + 1) ||1/f||_C
  double slack = 0.0;           // rhs - lhs
  bool holds = false;
};

// The elementary inverse estimate ||1/f||_C1 <= (||f||_C1 ||1/f||_C + 1) ||1/f||_C,
// both sides evaluated from refined extrema. Throws DomainError when f has a
// zero (relative floor 1e-10).
QuotientRuleReport quotient_rule_check(const TorusPolynomial& f);

// 1 + (1/2) cos(2 pi n t)
TorusPolynomial an_polynomial(int n);

struct AnFamilyRow {
  int n = 0;
  double norm_B = 0.0;          // expected 3/2
  double norm_A = 0.0;          // expected 3/2 + pi n
  double kappa = 0.0;           // expected 3
  double ratio = 0.0;           // norm_A / norm_B
  double ratio_formula = 0.0;   // (3 + 2 pi n) / 3
  double inv_norm_C = 0.0;      // sup |1/a_n| = 2
  double inv_norm_C1 = 0.0;     // measured ||a_n^{-1}||_C1
  double inv_C1_over_n = 0.0;
  double two_pi_n = 0.0;        // comparison line 2 pi n; the measured slope
                                // is what the suite asserts
  double product_bound_ln = 0.0;  // inversion bound at C = 1
};

// The family whose refined norm grows linearly in n while the ambient
// condition number stays pinned at 3: refined-norm control cannot be replaced
// by a condition-only function.
AnFamilyRow an_family_report(int n);

struct BaskakovReport {
  double sup_a = 0.0;
  double sup_ainv = 0.0;     // 1 / inf |a|
  double x_star = 0.0;       // 1 / (4 + 32 sup_a sup_ainv^2)
  double psi_literal = 0.0;  // tail_psi(a, x_star): every nonzero frequency
  double psi_indexed = 0.0;  // tail_psi(a, ceil(1/x_star)): reciprocal-index reading
  double rhs_literal = 0.0;  // 64 sup_a sup_ainv^2 psi_literal
  double rhs_indexed = 0.0;
  double lhs_series_l1 = 0.0;  // coefficient-sum norm of the series inverse
  bool holds_literal = false;
  bool holds_indexed = false;
  // psi vanished (constant input): the literal bound degenerates to 0 and
  // cannot dominate any inverse; recorded, not "fixed".
  bool degenerate_tail = false;
};

// Coefficient-sum bound for the inverse in terms of the tail function, with
// the tail argument read two ways (literal real argument, and index
// ceil(1/x)); both sides are reported and neither reading is silently
// preferred.
BaskakovReport baskakov_bound(const TorusPolynomial& a, double series_tol = 1e-10);

struct SunCheckConfig {
  double theta = 0.5;  // in [0, 1)
  int samples = 64;
  std::uint64_t seed = 1;
};

struct SunReport {
  double theta = 0.0;
  double C_theta = 0.0;  // max over the sample of ||a^2||_A / (2 ||a||_A^{1+theta} ||a||_B^{1-theta})
  int samples = 0;
  std::uint64_t seed = 0;
  int worst_index = -1;
};

// Empirical constant of the theta-interpolated square inequality
// ||a^2||_A <= 2 C_theta ||a||_A^{1+theta} ||a||_B^{1-theta}.
// Per element the ratio is nonincreasing in theta (the denominator gains a
// factor (||a||_A/||a||_B)^theta >= 1), so profiles over a shared sample
// stream are nonincreasing as well.
SunReport sun_theta_check(const AlgebraPair& pair, const SunCheckConfig& config);

// Same sample stream evaluated across a theta grid.
std::vector<SunReport> sun_theta_profile(const AlgebraPair& pair,
                                         const std::vector<double>& thetas, int samples,
                                         std::uint64_t seed);

}  // namespace normctl
