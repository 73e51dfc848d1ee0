#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "normctl/algebra.hpp"

namespace normctl {

// Best lower bound found for the visibility constant
//   phi(delta) = sup { ||a^{-1}||_A : ||a||_A <= 1, ||a^{-1}||_B <= 1/delta }.
// The witness is rescaled so its constraints sit on the boundary:
// ||witness||_A <= 1 and ||witness^{-1}||_B = 1/delta exactly.
struct VisibilityEstimate {
  double delta = 0.0;
  double lower_bound = 0.0;  // ||witness^{-1}||_A; 0 if no candidate qualified
  AlgebraElement witness;
  int trials = 0;
  int feasible_count = 0;
  std::uint64_t seed = 0;
  double witness_norm_A = 0.0;
  double witness_inv_norm_B = 0.0;
};

// Seeded random search. The candidate stream starts with the constant/identity
// element (always feasible, value 1/delta), then cosine-peak polynomials where
// the element kind allows, then random elements with coefficient envelopes
// (1+|k|)^{-s}, s cycling over {1/2, 1, 2}. A candidate g is feasible iff
// ||g||_A ||g^{-1}||_B <= 1/delta (the criterion is scale invariant), and then
// contributes ||g^{-1}||_A / (delta ||g^{-1}||_B). Inverse norms come from
// exact oracles (pointwise for polynomials, LU for matrices), so every
// reported bound is attained by a concrete element.
VisibilityEstimate phi_lower_bound(const AlgebraPair& pair, double delta, int trials,
                                   std::uint64_t seed);

// Wiener-style surrogate used only for visibility search: coefficient-sum
// norm over sup norm at finite degree. This pair has no norm control, which
// is exactly why it is interesting here; the inversion and bound modules do
// not accept it. The inverse's coefficient-sum norm is evaluated by the
// l1-controlled series and therefore slightly underestimates, keeping the
// reported value a true lower bound.
struct WienerSurrogate {
  int max_degree = 16;
  double series_l1_tol = 1e-8;
};

VisibilityEstimate phi_lower_bound(const WienerSurrogate& surrogate, double delta,
                                   int trials, std::uint64_t seed);

enum class PhiKind { finite, infinite, unknown };

struct PhiValue {
  PhiKind kind = PhiKind::finite;
  double value = 0.0;  // meaningful only when kind == finite
};

// Closed form for the coefficient-sum algebra: (2 delta^2 - 1)^{-1} for
// delta > 1/sqrt(2); infinite for delta <= 1/2; unknown on (1/2, 1/sqrt(2)].
PhiValue nikolski_phi_wiener(double delta);

// Norm control pulled out of a visibility function:
// ||a^{-1}||_A <= phi(1 / (||a||_A ||a^{-1}||_B)) / ||a||_A.
// Markers (infinite/unknown) propagate. Requires ||a||_A ||a^{-1}||_B >= 1.
PhiValue control_h_from_phi(double norm_A_a, double norm_B_ainv,
                            const std::function<PhiValue(double)>& phi);

struct PseudospectrumGrid {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;
  int resolution = 2;  // points per axis, >= 2
};

struct PseudospectrumResult {
  PseudospectrumGrid grid;
  double delta = 0.0;
  // Row-major over (im index, re index): ||(lambda - a)^{-1}||_op, +inf where
  // lambda is an eigenvalue to working precision.
  std::vector<double> resolvent_norm;
  std::vector<std::uint8_t> in_set;  // resolvent_norm > 1/delta

  double re_at(int i) const;
  double im_at(int j) const;
};

// Resolvent norms on the grid; membership by threshold. Masks for growing
// delta on the same value grid are nested by construction.
PseudospectrumResult pseudospectrum(const ComplexMatrix& a, const PseudospectrumGrid& grid,
                                    double delta);

// Both sides of the origin-membership equivalence, computed through
// independent routes: the resolvent norm at 0 via LU inversion, and sigma_min
// via the Jacobi eigensolver. 0 lies outside the delta-pseudospectrum iff
// sigma_min >= delta.
bool zero_outside_pseudospectrum_resolvent(const ComplexMatrix& a, double delta);
bool zero_outside_pseudospectrum_sigma(const ComplexMatrix& a, double delta);

}  // namespace normctl
