#include "normctl/torus_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "normctl/errors.hpp"

namespace normctl {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TorusPolynomial TorusPolynomial::one() { return constant(1.0); }

TorusPolynomial TorusPolynomial::constant(cdouble v) {
  TorusPolynomial f;
  f.set_coeff(0, v);
  return f;
}

TorusPolynomial TorusPolynomial::cosine(int n, double amplitude) {
  TorusPolynomial f;
  f.set_coeff(n, amplitude / 2.0);
  f.set_coeff(-n, amplitude / 2.0);
  return f;
}

int TorusPolynomial::degree() const {
  if (coeffs_.empty()) return 0;
  return std::max(std::abs(coeffs_.begin()->first), std::abs(coeffs_.rbegin()->first));
}

int TorusPolynomial::min_index() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
int TorusPolynomial::max_index() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

cdouble TorusPolynomial::coeff(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? cdouble{} : it->second;
}

void TorusPolynomial::set_coeff(int k, cdouble v) {
  if (v == cdouble{}) {
    coeffs_.erase(k);
  } else {
    coeffs_[k] = v;
  }
}

TorusPolynomial TorusPolynomial::adjoint() const {
  TorusPolynomial r;
  for (const auto& [k, v] : coeffs_) r.coeffs_[-k] = std::conj(v);
  return r;
}

TorusPolynomial TorusPolynomial::derivative() const {
  TorusPolynomial r;
  for (const auto& [k, v] : coeffs_) {
    if (k != 0) r.coeffs_[k] = cdouble(0.0, kTwoPi * k) * v;
  }
  return r;
}

TorusPolynomial TorusPolynomial::operator*(const TorusPolynomial& rhs) const {
  TorusPolynomial r;
  if (coeffs_.empty() || rhs.coeffs_.empty()) return r;
  // Dense accumulator over the (contiguous) index range of the product keeps
  // the double loop free of map lookups.
  const int lo = min_index() + rhs.min_index();
  const int hi = max_index() + rhs.max_index();
  std::vector<cdouble> buf(static_cast<size_t>(hi - lo + 1));
  for (const auto& [ka, va] : coeffs_)
    for (const auto& [kb, vb] : rhs.coeffs_) buf[static_cast<size_t>(ka + kb - lo)] += va * vb;
  for (int k = lo; k <= hi; ++k) {
    const cdouble v = buf[static_cast<size_t>(k - lo)];
    if (v != cdouble{}) r.coeffs_[k] = v;
  }
  return r;
}

TorusPolynomial TorusPolynomial::operator+(const TorusPolynomial& rhs) const {
  TorusPolynomial r = *this;
  for (const auto& [k, v] : rhs.coeffs_) {
    const cdouble s = r.coeff(k) + v;
    r.set_coeff(k, s);
  }
  return r;
}

TorusPolynomial TorusPolynomial::operator-(const TorusPolynomial& rhs) const {
  TorusPolynomial r = *this;
  for (const auto& [k, v] : rhs.coeffs_) {
    const cdouble s = r.coeff(k) - v;
    r.set_coeff(k, s);
  }
  return r;
}

TorusPolynomial TorusPolynomial::scaled(cdouble s) const {
  TorusPolynomial r;
  if (s == cdouble{}) return r;
  for (const auto& [k, v] : coeffs_) r.coeffs_[k] = s * v;
  return r;
}

cdouble TorusPolynomial::evaluate(double t) const {
  cdouble acc{};
  for (const auto& [k, v] : coeffs_) acc += v * std::polar(1.0, kTwoPi * k * t);
  return acc;
}

void TorusPolynomial::evaluate012(double t, cdouble& f0, cdouble& f1, cdouble& f2) const {
  f0 = f1 = f2 = cdouble{};
  for (const auto& [k, v] : coeffs_) {
    const cdouble term = v * std::polar(1.0, kTwoPi * k * t);
    const cdouble d(0.0, kTwoPi * k);
    f0 += term;
    f1 += d * term;
    f2 += d * d * term;
  }
}

double TorusPolynomial::l1_norm() const {
  double s = 0.0;
  for (const auto& [k, v] : coeffs_) {
    (void)k;
    s += std::abs(v);
  }
  return s;
}

double TorusPolynomial::graded_l1_norm() const {
  double s = 0.0;
  for (const auto& [k, v] : coeffs_) s += (1.0 + kTwoPi * std::abs(k)) * std::abs(v);
  return s;
}

double TorusPolynomial::prune_small(double floor) {
  double removed = 0.0;
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (std::abs(it->second) <= floor) {
      removed += (1.0 + kTwoPi * std::abs(it->first)) * std::abs(it->second);
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }
  return removed;
}

double TorusPolynomial::truncate_support(int cap) {
  if (cap < 0) throw DomainError("support cap must be nonnegative");
  double removed = 0.0;
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (std::abs(it->first) > cap) {
      removed += (1.0 + kTwoPi * std::abs(it->first)) * std::abs(it->second);
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }
  return removed;
}

namespace {

// |f|^2 and its first two t-derivatives.
struct Gval {
  double g, dg, ddg;
};

Gval eval_g(const TorusPolynomial& f, double t) {
  cdouble f0, f1, f2;
  f.evaluate012(t, f0, f1, f2);
  Gval r;
  r.g = std::norm(f0);
  r.dg = 2.0 * (std::conj(f0) * f1).real();
  r.ddg = 2.0 * (std::norm(f1) + (std::conj(f0) * f2).real());
  return r;
}

// Polish one bracketed extremum of g = |f|^2. Newton on dg when the curvature
// has the right sign and the step stays inside the bracket; bisection on the
// uphill/downhill half otherwise.
double refine_extremum(const TorusPolynomial& f, bool maximize, double lo, double hi,
                       double t0) {
  double t = t0;
  double best = eval_g(f, t).g;
  for (int iter = 0; iter < 100 && hi - lo > 1e-15; ++iter) {
    const Gval v = eval_g(f, t);
    if (maximize) {
      best = std::max(best, v.g);
    } else {
      best = std::min(best, v.g);
    }
    // Shrink the bracket using the slope: for a max, the slope points toward
    // the extremum; for a min, away from it.
    const bool uphill = v.dg > 0.0;
    double nlo = lo, nhi = hi;
    if (maximize == uphill) {
      nlo = t;
    } else {
      nhi = t;
    }
    double tn;
    const bool curvature_ok = maximize ? (v.ddg < 0.0) : (v.ddg > 0.0);
    if (curvature_ok && v.ddg != 0.0) {
      tn = t - v.dg / v.ddg;
      if (!(tn > nlo && tn < nhi)) tn = 0.5 * (nlo + nhi);
    } else {
      tn = 0.5 * (nlo + nhi);
    }
    lo = nlo;
    hi = nhi;
    if (std::abs(tn - t) < 1e-16) break;
    t = tn;
  }
  const double final_g = eval_g(f, t).g;
  return maximize ? std::max(best, final_g) : std::min(best, final_g);
}

ExtremumResult extremum_abs(const TorusPolynomial& f, bool maximize, int oversampling,
                            double rel_tol) {
  (void)rel_tol;  // refinement iterates to bracket exhaustion, well below 1e-12
  ExtremumResult res;
  if (f.empty()) return res;
  if (oversampling < 4) throw DomainError("oversampling must be at least 4");

  const int n = f.degree();
  const int m = oversampling * (n + 1);

  // Sample g = |f|^2 via a shared table of m-th roots of unity; exact phases,
  // no recurrence drift.
  std::vector<cdouble> root(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) root[static_cast<size_t>(j)] = std::polar(1.0, kTwoPi * j / m);
  std::vector<double> g(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    cdouble acc{};
    for (const auto& [k, v] : f.coeffs()) {
      const long long idx = ((static_cast<long long>(k) * j) % m + m) % m;
      acc += v * root[static_cast<size_t>(idx)];
    }
    g[static_cast<size_t>(j)] = std::norm(acc);
  }

  int best_j = 0;
  for (int j = 1; j < m; ++j) {
    const bool better = maximize ? g[static_cast<size_t>(j)] > g[static_cast<size_t>(best_j)]
                                 : g[static_cast<size_t>(j)] < g[static_cast<size_t>(best_j)];
    if (better) best_j = j;
  }
  double best_g = g[static_cast<size_t>(best_j)];
  double best_t = static_cast<double>(best_j) / m;

  const double h = 1.0 / m;
  for (int j = 0; j < m; ++j) {
    const double gj = g[static_cast<size_t>(j)];
    const double gp = g[static_cast<size_t>((j + m - 1) % m)];
    const double gn = g[static_cast<size_t>((j + 1) % m)];
    const bool local = maximize ? (gj >= gp && gj >= gn) : (gj <= gp && gj <= gn);
    if (!local) continue;
    const double t0 = static_cast<double>(j) / m;
    const double refined = refine_extremum(f, maximize, t0 - h, t0 + h, t0);
    const bool better = maximize ? refined > best_g : refined < best_g;
    if (better) {
      best_g = refined;
      best_t = t0;
    }
  }

  res.value = std::sqrt(std::max(0.0, best_g));
  res.arg = best_t - std::floor(best_t);
  return res;
}

}  // namespace

ExtremumResult sup_abs(const TorusPolynomial& f, int oversampling, double rel_tol) {
  return extremum_abs(f, true, oversampling, rel_tol);
}

ExtremumResult inf_abs(const TorusPolynomial& f, int oversampling, double rel_tol) {
  return extremum_abs(f, false, oversampling, rel_tol);
}

ExtremumResult sup_inverse_derivative(const TorusPolynomial& f, int oversampling) {
  if (f.empty()) throw DomainError("sup_inverse_derivative of the zero polynomial");
  if (oversampling < 4) throw DomainError("oversampling must be at least 4");

  const auto ratio_at = [&f](double t) {
    cdouble f0, f1, f2;
    f.evaluate012(t, f0, f1, f2);
    const double denom = std::norm(f0);
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(f1) / denom;
  };

  const int m = oversampling * (f.degree() + 1);
  std::vector<double> g(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) g[static_cast<size_t>(j)] = ratio_at(static_cast<double>(j) / m);

  double best = 0.0;
  double best_t = 0.0;
  for (int j = 0; j < m; ++j) {
    if (g[static_cast<size_t>(j)] > best) {
      best = g[static_cast<size_t>(j)];
      best_t = static_cast<double>(j) / m;
    }
  }

  // Golden-section polish on every local maximum bracket.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double h = 1.0 / m;
  for (int j = 0; j < m; ++j) {
    const double gj = g[static_cast<size_t>(j)];
    if (!(gj >= g[static_cast<size_t>((j + m - 1) % m)] &&
          gj >= g[static_cast<size_t>((j + 1) % m)]))
      continue;
    double lo = static_cast<double>(j) / m - h;
    double hi = static_cast<double>(j) / m + h;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double v1 = ratio_at(x1);
    double v2 = ratio_at(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
      if (v1 < v2) {
        lo = x1;
        x1 = x2;
        v1 = v2;
        x2 = lo + invphi * (hi - lo);
        v2 = ratio_at(x2);
      } else {
        hi = x2;
        x2 = x1;
        v2 = v1;
        x1 = hi - invphi * (hi - lo);
        v1 = ratio_at(x1);
      }
    }
    const double mid = 0.5 * (lo + hi);
    const double vm = ratio_at(mid);
    if (vm > best) {
      best = vm;
      best_t = mid;
    }
    if (v1 > best) {
      best = v1;
      best_t = x1;
    }
    if (v2 > best) {
      best = v2;
      best_t = x2;
    }
  }

  ExtremumResult res;
  res.value = best;
  res.arg = best_t - std::floor(best_t);
  return res;
}

}  // namespace normctl
