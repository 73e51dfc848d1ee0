#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "normctl/complex_matrix.hpp"
#include "normctl/torus_polynomial.hpp"
#include "normctl/weight.hpp"

namespace normctl {

using AlgebraElement = std::variant<TorusPolynomial, ComplexMatrix>;

// Element-level operations that do not depend on which norm pair is in play.
AlgebraElement element_multiply(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement element_adjoint(const AlgebraElement& a);
AlgebraElement element_identity_like(const AlgebraElement& a);
bool element_is_torus(const AlgebraElement& a);

struct C1Params {
  int oversampling = 64;
  double rel_tol = 1e-12;
};

struct ApproxParams {
  double p = 2.0;  // may be infinity
  WeightFunction weight;
  int n_max = 8;
};

// A dense subalgebra norm sitting inside an ambient sup/operator norm:
//  - C1_in_C: trig polynomials, ambient sup norm, refined norm
//    sup|f| + sup|f'|.
//  - ApproxSpace_in_Matrices: complex matrices, ambient operator norm,
//    refined norm built from banded-truncation approximation errors,
//    (sum_k E_k(a)^p w(k)^p)^{1/p} over k = 0..n_max (max-form when p = inf).
// Both refined norms give the identity norm 1 and dominate the ambient norm.
class AlgebraPair {
 public:
  enum class Kind { C1_in_C, ApproxSpace_in_Matrices };

  static AlgebraPair c1_in_c(C1Params params = {});
  static AlgebraPair approx_space(ApproxParams params);

  Kind kind() const { return kind_; }
  const C1Params& c1() const { return c1_; }
  const ApproxParams& approx() const { return approx_; }
  std::string name() const;

  bool accepts(const AlgebraElement& a) const;
  void require_element(const AlgebraElement& a) const;

  double norm_B(const AlgebraElement& a) const;
  double norm_A(const AlgebraElement& a) const;

  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement adjoint(const AlgebraElement& a) const;
  AlgebraElement identity_like(const AlgebraElement& a) const;

 private:
  Kind kind_ = Kind::C1_in_C;
  C1Params c1_;
  ApproxParams approx_;
};

// E_k(a) = ||a - T_k(a)||_op where T_k keeps the entries with |i-j| < k.
// E_0(a) = ||a||_op; E_k vanishes once k reaches the bandwidth of a.
double approx_error(const ComplexMatrix& a, int k);

struct DiffNormCertificate {
  double measured_C = 0.0;        // max over sampled pairs of the norm ratio
  int sample_count = 0;
  std::uint64_t seed = 0;
  int worst_index = -1;           // sample index attaining measured_C
  double min_embedding_ratio = 1.0;  // min ||a||_B / ||a||_A over the sample
  std::string pair_name;
};

struct RandomElementConfig {
  int max_degree = 16;  // torus elements: degree drawn from 0..max_degree
  int dim = 8;          // matrix elements
};

// Draw an element of the pair's algebra: i.i.d. coefficients/entries, uniform
// on the complex unit disc; torus degree uniform on 0..max_degree.
AlgebraElement random_element(const AlgebraPair& pair, class Rng& rng,
                              const RandomElementConfig& cfg = {});

// Empirical structure constant of ||ab||_A <= C(||a||_A ||b||_B + ||b||_A ||a||_B)
// over `samples` random pairs (every eighth right factor is the identity, which
// probes the constant's lower end). Deterministic given the seed.
DiffNormCertificate measure_diff_constant(const AlgebraPair& pair, int samples,
                                          std::uint64_t seed,
                                          const RandomElementConfig& cfg = {});

// beta_n = ||c^n||_A / ||c||_B^n for n = 1..2^k_max (computed on the
// normalized element, so no over/underflow). Checks, with certified constant
// C: beta_{m+n} <= beta_m beta_n and beta_{2^k} <= (2C)^k beta_1; a violation
// beyond rounding slack throws NumericError.
std::vector<double> beta_sequence(const AlgebraPair& pair, const AlgebraElement& c,
                                  int k_max, double certified_C);

struct SpectralRadiusCheck {
  std::vector<double> root_A;  // ||c^{2^k}||_A^{1/2^k}, k = 0..k_max
  std::vector<double> root_B;
  double gap = 0.0;            // root_A - root_B at k_max
};

// Dyadic-power root sequences for both norms; they squeeze toward the ambient
// spectral radius. Powers are renormalized at each squaring and tracked in log
// scale, so deep levels neither overflow nor drown in denormals.
SpectralRadiusCheck spectral_radius_check(const AlgebraPair& pair, const AlgebraElement& c,
                                          int k_max);

}  // namespace normctl
