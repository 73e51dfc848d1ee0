#include "normctl/visibility.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "normctl/errors.hpp"
#include "normctl/inversion.hpp"
#include "normctl/parallel.hpp"
#include "normctl/rng.hpp"

namespace normctl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvertFloor = 1e-10;  // relative ambient lower-bound gate

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t idx) {
  // splitmix64 finalizer over the combined word; decorrelates per-trial
  // streams so the trial set is independent of evaluation order.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (idx + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

TorusPolynomial random_envelope_poly(Rng& rng, int max_degree, int envelope_slot) {
  static constexpr double kEnvelopes[3] = {0.5, 1.0, 2.0};
  const double s = kEnvelopes[envelope_slot % 3];
  const int d = rng.uniform_int(1, max_degree);
  TorusPolynomial f;
  for (int k = -d; k <= d; ++k)
    f.set_coeff(k, rng.unit_disc() / std::pow(1.0 + std::abs(k), s));
  return f;
}

TorusPolynomial peak_poly(int n) {
  TorusPolynomial f = TorusPolynomial::one();
  f.set_coeff(n, f.coeff(n) + 0.25);
  f.set_coeff(-n, f.coeff(-n) + 0.25);
  return f;
}

TorusPolynomial torus_candidate(int idx, std::uint64_t seed, int max_degree) {
  if (idx == 0) return TorusPolynomial::one();
  if (idx <= 8) return peak_poly(idx);  // 1 + (1/2) cos(2 pi n t)
  Rng rng(mix_seed(seed, static_cast<std::uint64_t>(idx)));
  return random_envelope_poly(rng, max_degree, idx);
}

struct CandidateNorms {
  bool invertible = false;
  double norm_A_g = 0.0;
  double inv_norm_B = 0.0;
  double inv_norm_A = 0.0;
};

// Exact-oracle norms for pair candidates: pointwise inverse for polynomials,
// LU inverse for matrices. No series truncation enters, so the objective is
// the A-norm of a genuine inverse.
CandidateNorms eval_pair_candidate(const AlgebraPair& pair, const AlgebraElement& g) {
  CandidateNorms out;
  if (pair.kind() == AlgebraPair::Kind::C1_in_C) {
    const auto& f = std::get<TorusPolynomial>(g);
    const double sup = sup_abs(f, pair.c1().oversampling, pair.c1().rel_tol).value;
    const double inf = inf_abs(f, pair.c1().oversampling, pair.c1().rel_tol).value;
    if (!(inf > kInvertFloor * sup) || sup == 0.0) return out;
    out.invertible = true;
    out.norm_A_g = pair.norm_A(g);
    out.inv_norm_B = 1.0 / inf;
    out.inv_norm_A = 1.0 / inf + sup_inverse_derivative(f, pair.c1().oversampling).value;
    return out;
  }
  const auto& m = std::get<ComplexMatrix>(g);
  const SingularExtent ext = singular_extent(m);
  if (!(ext.min > kInvertFloor * ext.max) || ext.max == 0.0) return out;
  out.invertible = true;
  const AlgebraElement inv = lu_invert(m);
  out.norm_A_g = pair.norm_A(g);
  out.inv_norm_B = pair.norm_B(inv);
  out.inv_norm_A = pair.norm_A(inv);
  return out;
}

struct SearchHooks {
  std::function<AlgebraElement(int)> candidate;
  std::function<CandidateNorms(const AlgebraElement&)> evaluate;
};

VisibilityEstimate run_search(double delta, int trials, std::uint64_t seed,
                              const SearchHooks& hooks) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
  if (trials < 1) throw DomainError("trials must be >= 1");

  VisibilityEstimate best;
  best.delta = delta;
  best.trials = trials;
  best.seed = seed;

  const double budget = 1.0 / delta;
  for (int idx = 0; idx < trials; ++idx) {
    const AlgebraElement g = hooks.candidate(idx);
    const CandidateNorms norms = hooks.evaluate(g);
    if (!norms.invertible) continue;
    if (!(norms.norm_A_g * norms.inv_norm_B <= budget * (1.0 + 1e-12))) continue;
    ++best.feasible_count;
    const double value = norms.inv_norm_A / (delta * norms.inv_norm_B);
    if (value > best.lower_bound) {
      best.lower_bound = value;
      // Boundary rescale: w = delta ||g^{-1}||_B g has ||w||_A <= 1 and
      // ||w^{-1}||_B = 1/delta exactly, with ||w^{-1}||_A equal to `value`.
      const double mu = delta * norms.inv_norm_B;
      if (std::holds_alternative<TorusPolynomial>(g))
        best.witness = std::get<TorusPolynomial>(g).scaled(mu);
      else
        best.witness = std::get<ComplexMatrix>(g).scaled(mu);
      best.witness_norm_A = mu * norms.norm_A_g;
      best.witness_inv_norm_B = 1.0 / delta;
    }
  }
  return best;
}

}  // namespace

VisibilityEstimate phi_lower_bound(const AlgebraPair& pair, double delta, int trials,
                                   std::uint64_t seed) {
  SearchHooks hooks;
  if (pair.kind() == AlgebraPair::Kind::C1_in_C) {
    hooks.candidate = [seed](int idx) -> AlgebraElement {
      return torus_candidate(idx, seed, 16);
    };
  } else {
    hooks.candidate = [seed](int idx) -> AlgebraElement {
      const int dim = 8;
      if (idx == 0) return ComplexMatrix::identity(dim);
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(idx)));
      // e + t M with small t: keeps a usable share of candidates feasible.
      const double t = rng.uniform(0.0, 1.0);
      ComplexMatrix m = ComplexMatrix::identity(dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m.at(i, j) += t * rng.unit_disc() / double(dim);
      return m;
    };
  }
  hooks.evaluate = [&pair](const AlgebraElement& g) { return eval_pair_candidate(pair, g); };
  return run_search(delta, trials, seed, hooks);
}

VisibilityEstimate phi_lower_bound(const WienerSurrogate& surrogate, double delta,
                                   int trials, std::uint64_t seed) {
  if (surrogate.max_degree < 1) throw DomainError("surrogate degree must be >= 1");
  SearchHooks hooks;
  hooks.candidate = [&surrogate, seed](int idx) -> AlgebraElement {
    return torus_candidate(idx, seed, surrogate.max_degree);
  };
  hooks.evaluate = [&surrogate, delta](const AlgebraElement& g) {
    CandidateNorms out;
    const auto& f = std::get<TorusPolynomial>(g);
    const double sup = sup_abs(f).value;
    const double inf = inf_abs(f).value;
    if (!(inf > kInvertFloor * sup) || sup == 0.0) return out;
    out.invertible = true;
    out.norm_A_g = f.l1_norm();
    out.inv_norm_B = 1.0 / inf;
    // Infeasible candidates never contribute a value, so skip the series for
    // them; this also keeps the search fast, because feasibility forces
    // l1/inf <= 1/delta < 2, under which the series converges quickly.
    if (!(out.norm_A_g * out.inv_norm_B <= (1.0 + 1e-12) / delta)) return out;
    // Coefficient-sum norm of the inverse through the controlled series; the
    // tail estimate is subtracted so the reported objective stays a lower
    // bound for the true norm.
    try {
      const SeriesInverseResult inv = series_inverse_l1(f, surrogate.series_l1_tol);
      out.inv_norm_A = std::max(0.0, inv.inverse.l1_norm() - inv.l1_tail_estimate);
    } catch (const TruncationError&) {
      out.invertible = false;
    }
    return out;
  };
  return run_search(delta, trials, seed, hooks);
}

PhiValue nikolski_phi_wiener(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0,1]");
  PhiValue out;
  if (delta <= 0.5) {
    out.kind = PhiKind::infinite;
    return out;
  }
  const double denom = 2.0 * delta * delta - 1.0;
  if (denom <= 0.0) {
    out.kind = PhiKind::unknown;
    return out;
  }
  out.kind = PhiKind::finite;
  out.value = 1.0 / denom;
  return out;
}

PhiValue control_h_from_phi(double norm_A_a, double norm_B_ainv,
                            const std::function<PhiValue(double)>& phi) {
  if (!(norm_A_a > 0.0) || !(norm_B_ainv > 0.0))
    throw DomainError("norms must be positive");
  const double x = norm_A_a * norm_B_ainv;
  if (!(x >= 1.0 - 1e-12))
    throw DomainError("control_h_from_phi requires ||a||_A ||a^{-1}||_B >= 1");
  PhiValue value = phi(std::min(1.0, 1.0 / x));
  if (value.kind == PhiKind::finite) value.value /= norm_A_a;
  return value;
}

double PseudospectrumResult::re_at(int i) const {
  return grid.re_min + (grid.re_max - grid.re_min) * i / (grid.resolution - 1);
}

double PseudospectrumResult::im_at(int j) const {
  return grid.im_min + (grid.im_max - grid.im_min) * j / (grid.resolution - 1);
}

PseudospectrumResult pseudospectrum(const ComplexMatrix& a, const PseudospectrumGrid& grid,
                                    double delta) {
  if (grid.resolution < 2) throw DomainError("pseudospectrum resolution must be >= 2");
  if (!(grid.re_max > grid.re_min) || !(grid.im_max > grid.im_min))
    throw DomainError("pseudospectrum rectangle is empty");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (a.dim() < 1) throw DomainError("empty matrix");

  PseudospectrumResult out;
  out.grid = grid;
  out.delta = delta;
  const int res = grid.resolution;
  out.resolvent_norm.assign(static_cast<size_t>(res) * res, 0.0);
  out.in_set.assign(static_cast<size_t>(res) * res, 0);

  parallel_for(res * res, [&](int cell) {
    const int j = cell / res;  // imaginary axis
    const int i = cell % res;
    const cdouble lambda(out.re_at(i), out.im_at(j));
    ComplexMatrix shifted = a.scaled(-1.0);
    for (int d = 0; d < a.dim(); ++d) shifted.at(d, d) += lambda;
    double rn;
    try {
      rn = operator_norm(lu_invert(shifted));
    } catch (const DomainError&) {
      rn = kInf;  // lambda is an eigenvalue to working precision
    }
    out.resolvent_norm[static_cast<size_t>(cell)] = rn;
    out.in_set[static_cast<size_t>(cell)] = rn > 1.0 / delta ? 1 : 0;
  });
  return out;
}

bool zero_outside_pseudospectrum_resolvent(const ComplexMatrix& a, double delta) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  double rn;
  try {
    rn = operator_norm(lu_invert(a));
  } catch (const DomainError&) {
    return false;  // 0 is in the spectrum itself
  }
  return !(rn > 1.0 / delta);
}

bool zero_outside_pseudospectrum_sigma(const ComplexMatrix& a, double delta) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  return sigma_min(a) >= delta;
}

}  // namespace normctl
