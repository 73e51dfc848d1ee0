#include "normctl/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "normctl/errors.hpp"
#include "normctl/rng.hpp"

namespace normctl {

AlgebraElement element_multiply(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.index() != b.index()) throw StructuralError("cannot multiply elements of different kinds");
  if (std::holds_alternative<TorusPolynomial>(a))
    return std::get<TorusPolynomial>(a) * std::get<TorusPolynomial>(b);
  return std::get<ComplexMatrix>(a) * std::get<ComplexMatrix>(b);
}

AlgebraElement element_adjoint(const AlgebraElement& a) {
  if (std::holds_alternative<TorusPolynomial>(a)) return std::get<TorusPolynomial>(a).adjoint();
  return std::get<ComplexMatrix>(a).adjoint();
}

AlgebraElement element_identity_like(const AlgebraElement& a) {
  if (std::holds_alternative<TorusPolynomial>(a)) return TorusPolynomial::one();
  return ComplexMatrix::identity(std::get<ComplexMatrix>(a).dim());
}

bool element_is_torus(const AlgebraElement& a) {
  return std::holds_alternative<TorusPolynomial>(a);
}

AlgebraPair AlgebraPair::c1_in_c(C1Params params) {
  AlgebraPair p;
  p.kind_ = Kind::C1_in_C;
  p.c1_ = params;
  return p;
}

AlgebraPair AlgebraPair::approx_space(ApproxParams params) {
  if (!(params.p >= 1.0)) throw DomainError("approximation-space exponent p must be >= 1");
  if (params.n_max < 1) throw DomainError("n_max must be at least 1");
  AlgebraPair p;
  p.kind_ = Kind::ApproxSpace_in_Matrices;
  p.approx_ = params;
  return p;
}

std::string AlgebraPair::name() const {
  return kind_ == Kind::C1_in_C ? "C1_in_C" : "ApproxSpace_in_Matrices";
}

bool AlgebraPair::accepts(const AlgebraElement& a) const {
  return element_is_torus(a) == (kind_ == Kind::C1_in_C);
}

void AlgebraPair::require_element(const AlgebraElement& a) const {
  if (!accepts(a))
    throw StructuralError("element kind does not match pair " + name());
}

double AlgebraPair::norm_B(const AlgebraElement& a) const {
  require_element(a);
  if (kind_ == Kind::C1_in_C)
    return sup_abs(std::get<TorusPolynomial>(a), c1_.oversampling, c1_.rel_tol).value;
  return operator_norm(std::get<ComplexMatrix>(a));
}

double AlgebraPair::norm_A(const AlgebraElement& a) const {
  require_element(a);
  if (kind_ == Kind::C1_in_C) {
    const auto& f = std::get<TorusPolynomial>(a);
    return sup_abs(f, c1_.oversampling, c1_.rel_tol).value +
           sup_abs(f.derivative(), c1_.oversampling, c1_.rel_tol).value;
  }
  const auto& m = std::get<ComplexMatrix>(a);
  const bool p_inf = std::isinf(approx_.p);
  double acc = 0.0;
  for (int k = 0; k <= approx_.n_max; ++k) {
    const double term = approx_error(m, k) * approx_.weight(k);
    if (p_inf) {
      acc = std::max(acc, term);
    } else {
      acc += std::pow(term, approx_.p);
    }
  }
  return p_inf ? acc : std::pow(acc, 1.0 / approx_.p);
}

AlgebraElement AlgebraPair::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
  require_element(a);
  require_element(b);
  return element_multiply(a, b);
}

AlgebraElement AlgebraPair::adjoint(const AlgebraElement& a) const {
  require_element(a);
  return element_adjoint(a);
}

AlgebraElement AlgebraPair::identity_like(const AlgebraElement& a) const {
  require_element(a);
  return element_identity_like(a);
}

double approx_error(const ComplexMatrix& a, int k) {
  if (k < 0) throw DomainError("approximation order must be nonnegative");
  if (k == 0) return operator_norm(a);
  if (k >= a.dim()) return 0.0;
  return operator_norm(a - truncate_band(a, k));
}

AlgebraElement random_element(const AlgebraPair& pair, Rng& rng,
                              const RandomElementConfig& cfg) {
  if (pair.kind() == AlgebraPair::Kind::C1_in_C) {
    const int deg = cfg.max_degree > 0 ? rng.uniform_int(0, cfg.max_degree) : 0;
    TorusPolynomial f;
    for (int k = -deg; k <= deg; ++k) f.set_coeff(k, rng.unit_disc());
    return f;
  }
  ComplexMatrix m(cfg.dim);
  for (int i = 0; i < cfg.dim; ++i)
    for (int j = 0; j < cfg.dim; ++j) m.at(i, j) = rng.unit_disc();
  return m;
}

DiffNormCertificate measure_diff_constant(const AlgebraPair& pair, int samples,
                                          std::uint64_t seed, const RandomElementConfig& cfg) {
  if (samples < 1) throw DomainError("need at least one sample pair");
  Rng rng(seed);
  DiffNormCertificate cert;
  cert.sample_count = samples;
  cert.seed = seed;
  cert.pair_name = pair.name();

  for (int i = 0; i < samples; ++i) {
    const AlgebraElement a = random_element(pair, rng, cfg);
    const AlgebraElement b =
        (i % 8 == 7) ? element_identity_like(a) : random_element(pair, rng, cfg);
    const double na_A = pair.norm_A(a), na_B = pair.norm_B(a);
    const double nb_A = pair.norm_A(b), nb_B = pair.norm_B(b);
    const double denom = na_A * nb_B + nb_A * na_B;
    if (denom == 0.0) continue;  // both factors vanish
    const double ratio = pair.norm_A(pair.multiply(a, b)) / denom;
    if (ratio > cert.measured_C) {
      cert.measured_C = ratio;
      cert.worst_index = i;
    }
    if (na_A > 0.0) cert.min_embedding_ratio = std::min(cert.min_embedding_ratio, na_B / na_A);
    if (nb_A > 0.0) cert.min_embedding_ratio = std::min(cert.min_embedding_ratio, nb_B / nb_A);
  }
  return cert;
}

std::vector<double> beta_sequence(const AlgebraPair& pair, const AlgebraElement& c,
                                  int k_max, double certified_C) {
  pair.require_element(c);
  if (k_max < 0 || k_max > 10) throw DomainError("k_max out of range (0..10)");
  const double nb = pair.norm_B(c);
  if (nb <= 0.0) throw DomainError("beta sequence needs a nonzero element");

  // beta_n is scale invariant, so work with c/||c||_B: beta_n = ||chat^n||_A.
  AlgebraElement chat = element_is_torus(c)
                            ? AlgebraElement(std::get<TorusPolynomial>(c).scaled(1.0 / nb))
                            : AlgebraElement(std::get<ComplexMatrix>(c).scaled(1.0 / nb));
  const int n_top = 1 << k_max;
  std::vector<double> beta;
  beta.reserve(static_cast<size_t>(n_top));
  AlgebraElement power = chat;
  beta.push_back(pair.norm_A(power));
  for (int n = 2; n <= n_top; ++n) {
    power = element_multiply(power, chat);
    beta.push_back(pair.norm_A(power));
  }

  const double slack = 1.0 + 1e-9;
  auto b = [&](int n) { return beta[static_cast<size_t>(n - 1)]; };
  for (int m = 1; m < n_top; ++m)
    for (int n = 1; m + n <= n_top; ++n)
      if (b(m + n) > b(m) * b(n) * slack + 1e-300)
        throw NumericError("beta submultiplicativity violated at (" + std::to_string(m) + "," +
                           std::to_string(n) + ")");
  for (int k = 0; k <= k_max; ++k) {
    const double cap = std::pow(2.0 * certified_C, k) * b(1);
    if (b(1 << k) > cap * slack + 1e-300)
      throw NumericError("dyadic beta bound violated at k=" + std::to_string(k));
  }
  return beta;
}

SpectralRadiusCheck spectral_radius_check(const AlgebraPair& pair, const AlgebraElement& c,
                                          int k_max) {
  pair.require_element(c);
  if (k_max < 0 || k_max > 12) throw DomainError("k_max out of range (0..12)");
  const double nb = pair.norm_B(c);
  if (nb <= 0.0) throw DomainError("spectral radius check needs a nonzero element");

  SpectralRadiusCheck out;
  // Invariant: c^{2^k} = exp(log_scale) * q with ||q||_B = 1.
  AlgebraElement q = element_is_torus(c)
                         ? AlgebraElement(std::get<TorusPolynomial>(c).scaled(1.0 / nb))
                         : AlgebraElement(std::get<ComplexMatrix>(c).scaled(1.0 / nb));
  double log_scale = std::log(nb);
  for (int k = 0; k <= k_max; ++k) {
    const double pw = std::ldexp(1.0, -k);  // 2^{-k}
    out.root_B.push_back(std::exp(log_scale * pw));
    out.root_A.push_back(std::exp((log_scale + std::log(pair.norm_A(q))) * pw));
    if (k == k_max) break;
    q = element_multiply(q, q);
    const double nu = pair.norm_B(q);
    if (nu <= 0.0) {
      // Nilpotent: both sequences are exactly zero from here on.
      for (int j = k + 1; j <= k_max; ++j) {
        out.root_B.push_back(0.0);
        out.root_A.push_back(0.0);
      }
      break;
    }
    q = element_is_torus(q) ? AlgebraElement(std::get<TorusPolynomial>(q).scaled(1.0 / nu))
                            : AlgebraElement(std::get<ComplexMatrix>(q).scaled(1.0 / nu));
    log_scale = 2.0 * log_scale + std::log(nu);
  }
  out.gap = out.root_A.back() - out.root_B.back();
  return out;
}

}  // namespace normctl
