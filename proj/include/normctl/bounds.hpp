#pragma once

#include <optional>
#include <string>

namespace normctl {

// Parameters of the norm-control product
//   f(u, v, c) = prod_{k>=0} (1 + c u^k v^{2^k}),
// which converges iff v < 1 (for any u >= 1, c >= 0). When built from element
// data: u = 2C (C the pair's structure constant), v = 1 - 1/kappa^2, and
// c = 2 (||a||_A/||a||_B)^2 / v.
struct BoundInputs {
  double u = 2.0;
  double v = 0.5;
  double c = 1.0;

  // v from the balance index: ln(1/v) = ln(u) / 2^xi.
  static BoundInputs from_u_xi_c(double u, double xi, double c);
  static BoundInputs from_element_norms(double norm_A_a, double norm_B_a,
                                        double norm_B_ainv, double C);

  double xi() const;
};

// xi = log2(ln u / ln(1/v)): the index where the factors of f turn over
// (u^xi v^{2^xi} = 1). Requires u > 1 and 0 < v < 1.
double xi(double u, double v);

// ln f(u,v,c) with relative error <= eps. Evaluated term by term in log scale;
// v >= 1 with c > 0 throws DomainError (divergent product).
double product_f_ln(const BoundInputs& in, double eps = 1e-12);
// exp of the above; +inf when the product overflows a double.
double product_f(const BoundInputs& in, double eps = 1e-12);

// Every factor of f is at most 1 + c u^xi.
double max_factor_bound(const BoundInputs& in);

// Constant K = (ln 2 - 1/2)^{-1} of the cutoff inequality.
double cutoff_constant();

// Smallest integer M >= xi + 2 log2(max(xi, ln(Kc)/ln u)). At this M the
// factors beyond M multiply to at most e, equivalently
// 2^M ln(1/v) - M ln u >= ln(Kc). Requires xi >= 4 (callers below the
// asymptotic regime should evaluate the product directly instead).
int cutoff_M(const BoundInputs& in);

// Upper-tail estimate x^{a-1} e^{-x} / (1 - 1/ln 4) for the incomplete Gamma
// integral int_x^inf t^{a-1} e^{-t} dt, valid for a >= 1, x > 0, x >= 2(a-1).
double gamma_tail_estimate(double a_param, double x);

enum class Branch { condition_dominated, ratio_dominated };
const char* branch_name(Branch b);

struct AsfValue {
  double ln_value = 0.0;
  Branch branch = Branch::condition_dominated;
  double value() const;  // +inf on overflow
};

// Closed-form bound on ln f in the asymptotic regime ln u / ln(1/v) >= 16
// (xi >= 4) and c >= 1. Branch selection: condition_dominated when
// ln u / ln(1/v) >= (Kc)^{ln 2 / ln u}, otherwise ratio_dominated.
AsfValue asf_bound(const BoundInputs& in);
// Same split with the companion constants (prefactor exponent 4 ln^2 K/ln u,
// growth exponent 8/ln u) that the derivation itself produces for the ratio
// branch; kept alongside for cross-checks.
AsfValue asf_bound_proof_variant(const BoundInputs& in);

// ln of the inversion norm bound
//   ||a^{-1}||_A <= (||a||_A / ||a||_B^2) f(2C, v, 2 ratio^2 / v).
// At kappa = 1 the reduction terminates after one term, so the bound
// degenerates to the prefactor alone. When ratio >= 1/2 + C the alternative
// estimate c' = (1+2C) ratio / v is also evaluated and the smaller product is
// used.
double ncicstar_bound_ln(double norm_A_a, double norm_B_a, double norm_B_ainv, double C);
double ncicstar_bound(double norm_A_a, double norm_B_a, double norm_B_ainv, double C);

struct AsymptoticConstants {
  double u = 2.0;
  double K = 0.0;
  double gamma1_ln = 0.0;  // e * exp(8 ln u ln^2(ln u) / ln^2 2), stored as ln
  double gamma2 = 0.0;     // 16 ln u / ln^2 2
  double gamma3_ln = 0.0;  // e * exp(8 ln^2 K / ln u), stored as ln
  double gamma4 = 0.0;     // 4 / ln u

  static AsymptoticConstants from_u(double u);
};

// Scaled-condition threshold: the asymptotic regime needs
// kappa >= (1 - u^{-1/16})^{-1/2} (about 4.857 at u = 2); the closed forms
// below are stated for kappa >= 5.
double kappa_threshold(double u);

struct BoundReport {
  BoundInputs inputs;
  double xi = 0.0;
  std::optional<int> M;  // absent below the cutoff regime (xi < 4)

  double product_bound_ln = 0.0;
  double product_bound = 0.0;  // +inf if it overflows (see overflow flag)
  bool product_overflows = false;

  std::optional<double> asymptotic_bound_ln;  // absent when kappa < 5
  double asymptotic_bound = 0.0;
  bool asymptotic_overflows = false;
  Branch branch = Branch::condition_dominated;
  bool first_branch_sufficient = false;

  std::optional<double> measured_norm_A_inverse;
  double kappa = 0.0;
  double ratio = 0.0;  // ||a||_A / ||a||_B
};

// Closed-form asymptotic bound
//   ||a^{-1}||_A <= max{ gamma1 P e^{gamma2 ln^2(kappa^2)},
//                        gamma3 P e^{gamma4 ln^2(2 u^16 ratio^2)} },
// P = ||a||_A/||a||_B^2, u = 2C, reported with the exact product bound it
// dominates. Requires kappa >= 5. Also flags the condition-driven regime
// kappa^2 >= (ln u)^{-1} (10 ratio^2)^{ln 2/ln u} where the first branch alone
// suffices.
BoundReport theorem41_bound(double norm_A_a, double norm_B_a, double norm_B_ainv, double C);

// Convenience: product bound always, asymptotic part only when kappa >= 5.
BoundReport bound_report_for_element(double norm_A_a, double norm_B_a, double norm_B_ainv,
                                     double C);

// Two-variable control function h(x, y) = C1 x y^2 exp(C2 ln^2(xy)) on the
// region xy >= 1; increasing in both arguments there. The _ln form takes and
// returns logarithms, for constants too large to hold in a double.
double corollary_h(double x, double y, double C1, double C2);
double corollary_h_ln(double x, double y, double C1_ln, double C2);

struct CorollaryConstants {
  double C1_ln = 0.0;
  double C2 = 0.0;
};

// Constants that make h dominate the closed-form bound after substituting
// x >= ||a||_A, y >= ||a^{-1}||_B: C1 = max(gamma1, gamma3 e^{2 gamma4
// ln^2(2u^16)}), C2 = max(4 gamma2, 8 gamma4).
CorollaryConstants corollary_constants(double C);

struct IntroFormView {
  double gamma2_prime = 0.0;  // 4 * gamma2, paired with ln^2(kappa) instead of ln^2(kappa^2)
  double gamma5 = 0.0;        // 2 u^16
};

// The same asymptotic bound rearranged with ln^2 kappa in the exponent.
IntroFormView theorem_intro_view(double C);

}  // namespace normctl
