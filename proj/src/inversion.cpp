#include "normctl/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "normctl/errors.hpp"

namespace normctl {

namespace {

constexpr double kInvertibilityFloor = 1e-10;  // relative to ||a||_B

// Shared support/budget policy for torus series work. Every product is capped
// to the fixed support window and stripped of machine-level coefficients; the
// graded-l1 mass removed is charged against a single budget for the whole run.
struct TorusSeriesScrubber {
  int support_cap;
  double budget;  // abort once spent exceeds this
  double spent = 0.0;

  void scrub(TorusPolynomial& f) {
    spent += f.truncate_support(support_cap);
    const double floor = 1e-17 * f.l1_norm();
    if (floor > 0.0) spent += f.prune_small(floor);
    if (spent > budget)
      throw TruncationError(
          "coefficient support budget exhausted (discarded graded-l1 mass " +
              std::to_string(spent) + " exceeds " + std::to_string(budget) + ")",
          spent);
  }
};

// Partial geometric sum G(n) = sum_{k=0}^{n-1} c^k by binary splitting:
// G(2m) = G(m) + c^m G(m), G(2m+1) = G(2m) + c^{2m}. The scrub hook lets the
// torus path keep supports in check; matrices pass a no-op.
template <typename Elem, typename Mul, typename Add, typename Scrub>
Elem geometric_partial_sum(const Elem& c, const Elem& e, long long n, Mul mul, Add add,
                           Scrub scrub) {
  Elem g = e;
  if (n <= 1) return g;
  int top = 63;
  while (((n >> top) & 1LL) == 0) --top;
  Elem p = c;
  for (int i = top - 1; i >= 0; --i) {
    Elem gp = mul(g, p);
    scrub(gp);
    g = add(g, gp);
    Elem p2 = mul(p, p);
    scrub(p2);
    p = std::move(p2);
    if ((n >> i) & 1LL) {
      g = add(g, p);
      Elem pc = mul(p, c);
      scrub(pc);
      p = std::move(pc);
    }
  }
  return g;
}

long long series_length_for(double q, double tol) {
  if (q <= 0.0) return 1;
  // smallest K+1 with q^{K+1}/(1-q) <= tol
  const double need = (std::log(tol) + std::log1p(-q)) / std::log(q);
  if (need <= 1.0) return 1;
  if (need > 9e18) throw DomainError("series length overflows");
  return static_cast<long long>(std::ceil(need));
}

}  // namespace

InverseReport neumann_invert(const AlgebraPair& pair, const AlgebraElement& a, double tol,
                             long long k_max) {
  pair.require_element(a);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (k_max < 0) throw DomainError("series cap must be nonnegative");

  const double na_B = pair.norm_B(a);
  if (na_B <= 0.0) throw DomainError("zero element is not invertible");

  // Exact ambient data of the inverse before any series work.
  double lower = 0.0;  // min |a| on the circle / smallest singular value
  if (element_is_torus(a)) {
    lower = inf_abs(std::get<TorusPolynomial>(a), pair.c1().oversampling, pair.c1().rel_tol).value;
  } else {
    lower = sigma_min(std::get<ComplexMatrix>(a));
  }
  if (!(lower > kInvertibilityFloor * na_B))
    throw DomainError("element is not invertible at working precision (lower bound " +
                      std::to_string(lower) + ")");

  InverseReport rep;
  rep.norm_B_inverse = 1.0 / lower;
  rep.kappa = na_B * rep.norm_B_inverse;
  const double na_A = pair.norm_A(a);
  rep.embedding_ratio = na_A / na_B;

  const AlgebraElement astar = element_adjoint(a);
  const AlgebraElement asa = element_multiply(astar, a);
  const double nasa = pair.norm_B(asa);

  // ||c||_B = 1 - kappa^{-2} exactly (c is positive with spectrum in
  // [0, 1 - kappa^{-2}]); the analytic value drives the stopping rule.
  const double q = 1.0 - 1.0 / (rep.kappa * rep.kappa);
  const long long n_terms = series_length_for(q, tol);
  rep.tail_bound = q <= 0.0 ? 0.0 : std::pow(q, static_cast<double>(n_terms)) / (1.0 - q);
  if (n_terms - 1 > k_max)
    throw TruncationError("series needs " + std::to_string(n_terms) +
                              " terms, cap is k_max=" + std::to_string(k_max),
                          q <= 0.0 ? 0.0
                                   : std::pow(q, static_cast<double>(k_max) + 1.0) / (1.0 - q));
  rep.terms_used = static_cast<int>(std::min<long long>(n_terms, 1LL << 30));

  if (element_is_torus(a)) {
    const auto& fa = std::get<TorusPolynomial>(a);
    const auto& fasa = std::get<TorusPolynomial>(asa);
    TorusPolynomial c = TorusPolynomial::one() - fasa.scaled(1.0 / nasa);
    TorusSeriesScrubber scrubber{std::max(1, fa.degree()) *
                                     static_cast<int>(std::min<long long>(k_max, 100'000) + 2),
                                 tol / 10.0};
    auto mul = [](const TorusPolynomial& x, const TorusPolynomial& y) { return x * y; };
    auto add = [](const TorusPolynomial& x, const TorusPolynomial& y) { return x + y; };
    auto scrub = [&](TorusPolynomial& x) { scrubber.scrub(x); };
    TorusPolynomial s =
        geometric_partial_sum(c, TorusPolynomial::one(), n_terms, mul, add, scrub);
    TorusPolynomial inv = (s * std::get<TorusPolynomial>(astar)).scaled(1.0 / nasa);
    scrubber.scrub(inv);
    rep.residual_B =
        sup_abs(TorusPolynomial::one() - fa * inv, pair.c1().oversampling, pair.c1().rel_tol)
            .value;
    rep.inverse = std::move(inv);
  } else {
    const auto& ma = std::get<ComplexMatrix>(a);
    const auto& masa = std::get<ComplexMatrix>(asa);
    const int n = ma.dim();
    ComplexMatrix c = ComplexMatrix::identity(n) - masa.scaled(1.0 / nasa);
    auto mul = [](const ComplexMatrix& x, const ComplexMatrix& y) { return x * y; };
    auto add = [](const ComplexMatrix& x, const ComplexMatrix& y) { return x + y; };
    auto scrub = [](ComplexMatrix&) {};
    ComplexMatrix s =
        geometric_partial_sum(c, ComplexMatrix::identity(n), n_terms, mul, add, scrub);
    ComplexMatrix inv = (s * std::get<ComplexMatrix>(astar)).scaled(1.0 / nasa);
    rep.residual_B = operator_norm(ComplexMatrix::identity(n) - ma * inv);
    rep.inverse = std::move(inv);
  }
  rep.norm_A_inverse = pair.norm_A(rep.inverse);
  return rep;
}

ComplexMatrix exact_invert_matrix(const ComplexMatrix& a) { return lu_invert(a); }

double condition_number(const AlgebraPair& pair, const AlgebraElement& a) {
  pair.require_element(a);
  if (element_is_torus(a)) {
    const auto& f = std::get<TorusPolynomial>(a);
    const double hi = sup_abs(f, pair.c1().oversampling, pair.c1().rel_tol).value;
    const double lo = inf_abs(f, pair.c1().oversampling, pair.c1().rel_tol).value;
    if (!(lo > kInvertibilityFloor * hi)) throw DomainError("element is not invertible");
    return hi / lo;
  }
  const SingularExtent ext = singular_extent(std::get<ComplexMatrix>(a));
  if (!(ext.min > kInvertibilityFloor * ext.max)) throw DomainError("element is not invertible");
  return ext.max / ext.min;
}

SeriesInverseResult series_inverse_l1(const TorusPolynomial& f, double l1_tol, int max_terms) {
  if (!(l1_tol > 0.0)) throw DomainError("tolerance must be positive");
  const double hi = sup_abs(f).value;
  if (hi <= 0.0) throw DomainError("zero element is not invertible");
  const double lo = inf_abs(f).value;
  if (!(lo > kInvertibilityFloor * hi)) throw DomainError("element is not invertible");

  // 1/f = conj(f) / (f conj(f)); the denominator g is strictly positive, so
  // 1/g = (1/s) sum_k (e - g/s)^k with s = sup g converges in sup norm, and in
  // the coefficient-sum norm as well (with a lag; the loop watches the actual
  // term masses).
  const TorusPolynomial g = f * f.adjoint();
  const double s = sup_abs(g).value;
  const TorusPolynomial r = TorusPolynomial::one() - g.scaled(1.0 / s);

  TorusPolynomial acc = TorusPolynomial::one();
  TorusPolynomial term = r;
  int used = 1;
  double tail = 0.0;
  std::vector<double> recent;
  const double target = l1_tol * s / std::max(1.0, f.l1_norm());
  for (int k = 1; k <= max_terms; ++k) {
    const double mass = term.l1_norm();
    recent.push_back(mass);
    if (recent.size() > 4) recent.erase(recent.begin());
    if (mass < target) {
      // Tail estimate from the observed contraction of the last few terms.
      double ratio = 0.0;
      for (size_t i = 1; i < recent.size(); ++i)
        if (recent[i - 1] > 0.0) ratio = std::max(ratio, recent[i] / recent[i - 1]);
      if (ratio < 1.0) {
        tail = mass * ratio / (1.0 - ratio);
        acc = acc + term;
        ++used;
        break;
      }
    }
    acc = acc + term;
    ++used;
    if (k == max_terms)
      throw TruncationError("coefficient-series inverse did not settle within " +
                                std::to_string(max_terms) + " terms",
                            mass);
    term = term * r;
    term.prune_small(1e-18 * std::max(1.0, term.l1_norm()));
  }

  SeriesInverseResult out;
  out.inverse = (f.adjoint() * acc).scaled(1.0 / s);
  out.terms = used;
  out.l1_tail_estimate = (tail + 1e-18) * f.l1_norm() / s;
  out.inverse.prune_small(0.0);
  return out;
}

}  // namespace normctl
