#include "normctl/cases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "normctl/bounds.hpp"
#include "normctl/errors.hpp"
#include "normctl/inversion.hpp"
#include "normctl/rng.hpp"

namespace normctl {

double tail_psi(const TorusPolynomial& a, double x) {
  if (!(x >= 0.0)) throw DomainError("tail_psi: argument must be >= 0");
  double sum = 0.0;
  for (const auto& [k, coeff] : a.coeffs()) {
    const double dist = std::abs(static_cast<double>(k));
    if (dist >= x) sum += std::abs(coeff);
  }
  return sum;
}

QuotientRuleReport quotient_rule_check(const TorusPolynomial& f) {
  QuotientRuleReport rep;
  const auto sup = sup_abs(f);
  const auto inf = inf_abs(f);
  if (!(inf.value > 1e-10 * std::max(1.0, sup.value)))
    throw DomainError("quotient_rule_check: input vanishes on the circle");
  const auto dsup = sup_abs(f.derivative());
  const auto invd = sup_inverse_derivative(f);

  rep.norm_C_f = sup.value;
  rep.norm_C1_f = sup.value + dsup.value;
  rep.norm_C_inv = 1.0 / inf.value;
  rep.sup_inv_deriv = invd.value;
  rep.lhs = rep.norm_C_inv + rep.sup_inv_deriv;
  rep.rhs = (rep.norm_C1_f * rep.norm_C_inv + 1.0) * rep.norm_C_inv;
  rep.slack = rep.rhs - rep.lhs;
  rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12);
  return rep;
}

TorusPolynomial an_polynomial(int n) {
  if (n < 1) throw DomainError("an_polynomial: n must be >= 1");
  TorusPolynomial a = TorusPolynomial::one() + TorusPolynomial::cosine(n, 0.5);
  return a;
}

AnFamilyRow an_family_report(int n) {
  AnFamilyRow row;
  row.n = n;
  const TorusPolynomial a = an_polynomial(n);
  const AlgebraPair pair = AlgebraPair::c1_in_c();

  row.norm_B = pair.norm_B(a);
  row.norm_A = pair.norm_A(a);
  row.kappa = condition_number(pair, AlgebraElement{a});
  row.ratio = row.norm_A / row.norm_B;
  row.ratio_formula = (3.0 + 2.0 * std::numbers::pi * n) / 3.0;

  const auto inf = inf_abs(a);
  row.inv_norm_C = 1.0 / inf.value;
  row.inv_norm_C1 = row.inv_norm_C + sup_inverse_derivative(a).value;
  row.inv_C1_over_n = row.inv_norm_C1 / n;
  row.two_pi_n = 2.0 * std::numbers::pi * n;

  const auto ln = ncicstar_bound_ln(row.norm_A, row.norm_B, row.inv_norm_C, 1.0);
  row.product_bound_ln = ln;
  return row;
}

BaskakovReport baskakov_bound(const TorusPolynomial& a, double series_tol) {
  BaskakovReport rep;
  const auto sup = sup_abs(a);
  const auto inf = inf_abs(a);
  if (!(inf.value > 1e-10 * std::max(1.0, sup.value)))
    throw DomainError("baskakov_bound: input vanishes on the circle");

  rep.sup_a = sup.value;
  rep.sup_ainv = 1.0 / inf.value;
  const double cond2 = rep.sup_a * rep.sup_ainv * rep.sup_ainv;
  rep.x_star = 1.0 / (4.0 + 32.0 * cond2);
  rep.psi_literal = tail_psi(a, rep.x_star);
  rep.psi_indexed = tail_psi(a, std::ceil(1.0 / rep.x_star));
  rep.rhs_literal = 64.0 * cond2 * rep.psi_literal;
  rep.rhs_indexed = 64.0 * cond2 * rep.psi_indexed;

  const auto inv = series_inverse_l1(a, series_tol);
  rep.lhs_series_l1 = inv.inverse.l1_norm();

  rep.degenerate_tail = rep.psi_literal == 0.0;
  rep.holds_literal = rep.lhs_series_l1 <= rep.rhs_literal * (1.0 + 1e-12);
  rep.holds_indexed = rep.lhs_series_l1 <= rep.rhs_indexed * (1.0 + 1e-12);
  return rep;
}

SunReport sun_theta_check(const AlgebraPair& pair, const SunCheckConfig& config) {
  std::vector<double> thetas{config.theta};
  auto profile = sun_theta_profile(pair, thetas, config.samples, config.seed);
  return profile.front();
}

std::vector<SunReport> sun_theta_profile(const AlgebraPair& pair,
                                         const std::vector<double>& thetas, int samples,
                                         std::uint64_t seed) {
  for (double t : thetas) {
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("sun_theta_profile: theta must be in [0, 1)");
  }
  if (samples < 1) throw DomainError("sun_theta_profile: samples must be >= 1");

  // One shared sample stream: per-element ratios are exactly comparable
  // across thetas, so monotonicity of the profile is not blurred by
  // resampling.
  struct SampleNorms {
    double na = 0.0;
    double nb = 0.0;
    double nsq = 0.0;
  };
  std::vector<SampleNorms> sample_norms;
  sample_norms.reserve(static_cast<std::size_t>(samples));
  Rng rng(seed);
  RandomElementConfig cfg;
  for (int i = 0; i < samples; ++i) {
    const AlgebraElement a = random_element(pair, rng, cfg);
    SampleNorms sn;
    sn.na = pair.norm_A(a);
    sn.nb = pair.norm_B(a);
    sn.nsq = pair.norm_A(pair.multiply(a, a));
    sample_norms.push_back(sn);
  }

  std::vector<SunReport> out;
  out.reserve(thetas.size());
  for (double theta : thetas) {
    SunReport rep;
    rep.theta = theta;
    rep.samples = samples;
    rep.seed = seed;
    for (int i = 0; i < samples; ++i) {
      const auto& sn = sample_norms[static_cast<std::size_t>(i)];
      if (!(sn.na > 0.0) || !(sn.nb > 0.0)) continue;
      double ratio;
      if (theta == 0.0) {
        ratio = sn.nsq / (2.0 * sn.na * sn.nb);
      } else {
        // nsq / (2 na^{1+theta} nb^{1-theta}) in log space; na, nb, nsq are
        // all positive here.
        const double ln_ratio = std::log(sn.nsq) - std::log(2.0) -
                                (1.0 + theta) * std::log(sn.na) -
                                (1.0 - theta) * std::log(sn.nb);
        ratio = std::exp(ln_ratio);
      }
      if (ratio > rep.C_theta) {
        rep.C_theta = ratio;
        rep.worst_index = i;
      }
    }
    out.push_back(rep);
  }
  return out;
}

}  // namespace normctl
