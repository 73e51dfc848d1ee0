#include "normctl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "normctl/errors.hpp"

namespace normctl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq(double x) { return x * x; }

// ln(1 + e^x) without overflow for large |x|.
double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

void check_common(const BoundInputs& in) {
  if (!(in.u >= 1.0)) throw DomainError("product parameter u must be >= 1");
  if (!(in.c >= 0.0)) throw DomainError("product parameter c must be >= 0");
  if (!(in.v >= 0.0)) throw DomainError("product parameter v must be >= 0");
}

}  // namespace

BoundInputs BoundInputs::from_u_xi_c(double u, double xi_value, double c) {
  if (!(u > 1.0)) throw DomainError("from_u_xi_c requires u > 1");
  BoundInputs in;
  in.u = u;
  in.v = std::exp(-std::log(u) * std::exp2(-xi_value));
  in.c = c;
  check_common(in);
  if (!(in.v < 1.0)) throw DomainError("from_u_xi_c produced v >= 1");
  return in;
}

BoundInputs BoundInputs::from_element_norms(double norm_A_a, double norm_B_a,
                                            double norm_B_ainv, double C) {
  if (!(norm_A_a > 0.0) || !(norm_B_a > 0.0) || !(norm_B_ainv > 0.0))
    throw DomainError("element norms must be positive");
  if (!(C >= 0.5)) throw DomainError("structure constant must be >= 1/2");
  if (norm_B_a * norm_B_ainv < 1.0 - 1e-9)
    throw DomainError("norm product ||a|| ||a^{-1}|| must be >= 1");
  const double kappa = std::max(1.0, norm_B_a * norm_B_ainv);
  const double v = (kappa - 1.0) * (kappa + 1.0) / (kappa * kappa);
  if (!(v > 0.0))
    throw DomainError("kappa = 1: the product parameters degenerate, handle upstream");
  const double ratio = std::max(1.0, norm_A_a / norm_B_a);
  BoundInputs in;
  in.u = 2.0 * C;
  in.v = v;
  in.c = 2.0 * ratio * ratio / v;
  return in;
}

double BoundInputs::xi() const { return normctl::xi(u, v); }

double xi(double u, double v) {
  if (!(u > 1.0)) throw DomainError("xi requires u > 1");
  if (!(v > 0.0 && v < 1.0)) throw DomainError("xi requires 0 < v < 1");
  return std::log2(std::log(u) / -std::log(v));
}

double product_f_ln(const BoundInputs& in, double eps) {
  check_common(in);
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (in.c == 0.0 || in.v == 0.0) return 0.0;
  if (!(in.v < 1.0)) throw DomainError("product diverges for v >= 1");

  const double ln_c = std::log(in.c);
  const double ln_u = std::log(in.u);
  const double ln_v = std::log(in.v);

  double sum = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const double pow2 = std::ldexp(1.0, std::min(k, 4000));
    const double term_ln = ln_c + k * ln_u + pow2 * ln_v;
    const double term = std::exp(term_ln);
    sum += softplus(term_ln);
    // Successive terms shrink by r = u v^{2^k} once r < 1, so the remaining
    // mass is at most term * r / (1 - r).
    const double r = std::exp(ln_u + pow2 * ln_v);
    if (r < 1.0) {
      const double tail = term * r / (1.0 - r);
      if (tail <= 0.5 * eps) return sum;
    }
  }
  throw NumericError("product_f_ln failed to converge in 20000 terms");
}

double product_f(const BoundInputs& in, double eps) {
  return std::exp(product_f_ln(in, eps));
}

double max_factor_bound(const BoundInputs& in) {
  check_common(in);
  if (in.c == 0.0 || in.v == 0.0) return 1.0;
  if (!(in.v < 1.0)) throw DomainError("max_factor_bound requires v < 1");
  if (in.u == 1.0) return 1.0 + in.c * in.v;  // factors decrease from k = 0
  const double t_ln = std::log(in.c) + xi(in.u, in.v) * std::log(in.u);
  if (t_ln > 700.0) return kInf;
  return 1.0 + std::exp(t_ln);
}

double cutoff_constant() { return 1.0 / (std::numbers::ln2 - 0.5); }

int cutoff_M(const BoundInputs& in) {
  check_common(in);
  if (!(in.c > 0.0)) throw DomainError("cutoff_M requires c > 0");
  if (!(in.v > 0.0 && in.v < 1.0)) throw DomainError("cutoff_M requires 0 < v < 1");
  const double x = xi(in.u, in.v);
  // Tolerant gate: u -> v -> xi roundtrips land a hair under an integral
  // target.
  if (!(x >= 4.0 - 1e-9)) throw DomainError("cutoff_M requires xi >= 4");

  const double ln_u = std::log(in.u);
  const double ln_v_inv = -std::log(in.v);
  const double ln_Kc = std::log(cutoff_constant() * in.c);
  const double arg = std::max(x, ln_Kc / ln_u);
  // The nudge keeps an analytically integral target (for example 8 at
  // u = 2, xi = 4, c = 1) from ceiling up on the last bit of rounding; the
  // guard loop below restores any shortfall the nudge could cause.
  int M = static_cast<int>(std::ceil(x + 2.0 * std::log2(arg) - 1e-9));

  // The tail beyond M multiplies to at most e iff
  // 2^M ln(1/v) - M ln(u) >= ln(Kc); the ceil above satisfies it in exact
  // arithmetic, the loop absorbs any rounding shortfall.
  for (int guard = 0; guard < 64; ++guard) {
    if (std::ldexp(1.0, M) * ln_v_inv - M * ln_u >= ln_Kc) return M;
    ++M;
  }
  throw NumericError("cutoff_M adjustment failed to settle");
}

double gamma_tail_estimate(double a_param, double x) {
  if (!(a_param >= 1.0)) throw DomainError("gamma_tail_estimate requires a >= 1");
  if (!(x > 0.0)) throw DomainError("gamma_tail_estimate requires x > 0");
  if (!(x >= 2.0 * (a_param - 1.0)))
    throw DomainError("gamma_tail_estimate requires x >= 2(a-1)");
  const double ln_lead = (a_param == 1.0) ? -x : (a_param - 1.0) * std::log(x) - x;
  return std::exp(ln_lead) / (1.0 - 1.0 / std::log(4.0));
}

const char* branch_name(Branch b) {
  return b == Branch::condition_dominated ? "condition_dominated" : "ratio_dominated";
}

double AsfValue::value() const { return std::exp(ln_value); }

namespace {

AsfValue asf_core(const BoundInputs& in, bool proof_variant) {
  check_common(in);
  if (!(in.u >= 2.0)) throw DomainError("asymptotic form requires u >= 2");
  if (!(in.c >= 1.0)) throw DomainError("asymptotic form requires c >= 1");
  if (!(in.v > 0.0 && in.v < 1.0)) throw DomainError("asymptotic form requires 0 < v < 1");
  const double ln_u = std::log(in.u);
  const double ln_v_inv = -std::log(in.v);
  const double regime = ln_u / ln_v_inv;
  if (!(regime >= 16.0 * (1.0 - 1e-12)))
    throw DomainError("asymptotic form requires ln(u)/ln(1/v) >= 16");

  const double K = cutoff_constant();
  const double ln2 = std::numbers::ln2;
  const bool condition_driven =
      std::log(regime) >= (ln2 / ln_u) * std::log(K * in.c);

  AsfValue out;
  if (condition_driven) {
    out.branch = Branch::condition_dominated;
    out.ln_value = 1.0 + 8.0 * ln_u * sq(std::log(ln_u)) / sq(ln2) +
                   (8.0 * ln_u / sq(ln2)) * sq(std::log(1.0 / ln_v_inv));
  } else {
    out.branch = Branch::ratio_dominated;
    const double a = proof_variant ? 4.0 : 8.0;
    const double b = proof_variant ? 8.0 : 4.0;
    out.ln_value = 1.0 + a * sq(std::log(K)) / ln_u + (b / ln_u) * sq(std::log(in.c));
  }
  return out;
}

}  // namespace

AsfValue asf_bound(const BoundInputs& in) { return asf_core(in, false); }

AsfValue asf_bound_proof_variant(const BoundInputs& in) { return asf_core(in, true); }

double ncicstar_bound_ln(double norm_A_a, double norm_B_a, double norm_B_ainv, double C) {
  if (!(norm_A_a > 0.0) || !(norm_B_a > 0.0) || !(norm_B_ainv > 0.0))
    throw DomainError("element norms must be positive");
  if (!(C >= 0.5)) throw DomainError("structure constant must be >= 1/2");
  // kappa >= 1 always holds for true norms; a measured product below 1 beyond
  // fp slack means the inputs are not norms of an element and its inverse.
  if (norm_B_a * norm_B_ainv < 1.0 - 1e-9)
    throw DomainError("norm product ||a|| ||a^{-1}|| must be >= 1");
  const double pref_ln = std::log(norm_A_a) - 2.0 * std::log(norm_B_a);
  const double kappa = std::max(1.0, norm_B_a * norm_B_ainv);
  const double v = (kappa - 1.0) * (kappa + 1.0) / (kappa * kappa);
  if (v == 0.0) return pref_ln;  // one-term reduction, product collapses to 1

  const double ratio = std::max(1.0, norm_A_a / norm_B_a);
  const double u = 2.0 * C;
  double best = product_f_ln({u, v, 2.0 * ratio * ratio / v});
  if (ratio >= 0.5 + C) {
    const double alt = product_f_ln({u, v, (1.0 + 2.0 * C) * ratio / v});
    best = std::min(best, alt);
  }
  return pref_ln + best;
}

double ncicstar_bound(double norm_A_a, double norm_B_a, double norm_B_ainv, double C) {
  return std::exp(ncicstar_bound_ln(norm_A_a, norm_B_a, norm_B_ainv, C));
}

AsymptoticConstants AsymptoticConstants::from_u(double u) {
  if (!(u >= 2.0)) throw DomainError("asymptotic constants require u >= 2");
  const double ln_u = std::log(u);
  const double ln2 = std::numbers::ln2;
  AsymptoticConstants g;
  g.u = u;
  g.K = cutoff_constant();
  g.gamma1_ln = 1.0 + 8.0 * ln_u * sq(std::log(ln_u)) / sq(ln2);
  g.gamma2 = 16.0 * ln_u / sq(ln2);
  g.gamma3_ln = 1.0 + 8.0 * sq(std::log(g.K)) / ln_u;
  g.gamma4 = 4.0 / ln_u;
  return g;
}

double kappa_threshold(double u) {
  if (!(u > 1.0)) throw DomainError("kappa_threshold requires u > 1");
  return 1.0 / std::sqrt(1.0 - std::pow(u, -1.0 / 16.0));
}

namespace {

void fill_product_part(BoundReport& rep, double norm_A_a, double norm_B_a,
                       double norm_B_ainv, double C) {
  rep.kappa = std::max(1.0, norm_B_a * norm_B_ainv);
  rep.ratio = std::max(1.0, norm_A_a / norm_B_a);
  const double v = (rep.kappa - 1.0) * (rep.kappa + 1.0) / (rep.kappa * rep.kappa);
  if (v == 0.0) {
    rep.inputs = {2.0 * C, 0.0, 0.0};
    rep.xi = -kInf;
  } else {
    rep.inputs = BoundInputs::from_element_norms(norm_A_a, norm_B_a, norm_B_ainv, C);
    rep.xi = rep.inputs.xi();
    if (rep.xi >= 4.0 - 1e-9) rep.M = cutoff_M(rep.inputs);
  }
  rep.product_bound_ln = ncicstar_bound_ln(norm_A_a, norm_B_a, norm_B_ainv, C);
  rep.product_bound = std::exp(rep.product_bound_ln);
  rep.product_overflows = !std::isfinite(rep.product_bound);
}

}  // namespace

BoundReport theorem41_bound(double norm_A_a, double norm_B_a, double norm_B_ainv,
                            double C) {
  if (!(C >= 1.0)) throw DomainError("closed-form bound requires C >= 1");
  const double kappa = norm_B_a * norm_B_ainv;
  if (!(kappa >= 5.0 * (1.0 - 1e-12)))
    throw DomainError("closed-form bound requires kappa >= 5");

  BoundReport rep;
  fill_product_part(rep, norm_A_a, norm_B_a, norm_B_ainv, C);

  const double u = 2.0 * C;
  const AsymptoticConstants g = AsymptoticConstants::from_u(u);
  const double pref_ln = std::log(norm_A_a) - 2.0 * std::log(norm_B_a);
  const double ln_u = std::log(u);

  const double branch1_ln = g.gamma1_ln + pref_ln + g.gamma2 * sq(std::log(rep.kappa * rep.kappa));
  const double arg2_ln = std::numbers::ln2 + 16.0 * ln_u + 2.0 * std::log(rep.ratio);
  const double branch2_ln = g.gamma3_ln + pref_ln + g.gamma4 * sq(arg2_ln);

  rep.asymptotic_bound_ln = std::max(branch1_ln, branch2_ln);
  rep.branch = branch1_ln >= branch2_ln ? Branch::condition_dominated
                                        : Branch::ratio_dominated;
  rep.asymptotic_bound = std::exp(*rep.asymptotic_bound_ln);
  rep.asymptotic_overflows = !std::isfinite(rep.asymptotic_bound);

  // Condition-driven regime: kappa^2 >= (ln u)^{-1} (10 ratio^2)^{ln 2/ln u}.
  const double lhs_ln = 2.0 * std::log(rep.kappa);
  const double rhs_ln =
      -std::log(ln_u) + (std::numbers::ln2 / ln_u) * std::log(10.0 * rep.ratio * rep.ratio);
  rep.first_branch_sufficient = lhs_ln >= rhs_ln;
  return rep;
}

BoundReport bound_report_for_element(double norm_A_a, double norm_B_a,
                                     double norm_B_ainv, double C) {
  const double kappa = norm_B_a * norm_B_ainv;
  if (C >= 1.0 && kappa >= 5.0)
    return theorem41_bound(norm_A_a, norm_B_a, norm_B_ainv, C);
  BoundReport rep;
  fill_product_part(rep, norm_A_a, norm_B_a, norm_B_ainv, C);
  return rep;
}

double corollary_h_ln(double x, double y, double C1_ln, double C2) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("corollary_h requires x, y > 0");
  if (!(x * y >= 1.0 - 1e-12)) throw DomainError("corollary_h requires x*y >= 1");
  if (!(C2 >= 0.0)) throw DomainError("corollary_h requires C2 >= 0");
  const double ln_xy = std::log(x) + std::log(y);
  return C1_ln + std::log(x) + 2.0 * std::log(y) + C2 * sq(ln_xy);
}

double corollary_h(double x, double y, double C1, double C2) {
  if (!(C1 > 0.0)) throw DomainError("corollary_h requires C1 > 0");
  return std::exp(corollary_h_ln(x, y, std::log(C1), C2));
}

CorollaryConstants corollary_constants(double C) {
  if (!(C >= 1.0)) throw DomainError("corollary constants require C >= 1");
  const double u = 2.0 * C;
  const AsymptoticConstants g = AsymptoticConstants::from_u(u);
  const double ln_2u16 = std::numbers::ln2 + 16.0 * std::log(u);
  CorollaryConstants out;
  out.C1_ln = std::max(g.gamma1_ln, g.gamma3_ln + 2.0 * g.gamma4 * sq(ln_2u16));
  out.C2 = std::max(4.0 * g.gamma2, 8.0 * g.gamma4);
  return out;
}

IntroFormView theorem_intro_view(double C) {
  if (!(C >= 1.0)) throw DomainError("intro view requires C >= 1");
  const double u = 2.0 * C;
  IntroFormView view;
  view.gamma2_prime = 4.0 * (16.0 * std::log(u) / sq(std::numbers::ln2));
  view.gamma5 = 2.0 * std::pow(u, 16.0);
  return view;
}

}  // namespace normctl
