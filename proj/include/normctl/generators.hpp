#pragma once

#include "normctl/complex_matrix.hpp"
#include "normctl/rng.hpp"
#include "normctl/torus_polynomial.hpp"

namespace normctl {

// Invertible trigonometric polynomial with condition number at most
// target_kappa. The construction is c0 + p where c0 = (kappa+1)/(kappa-1) and
// sup|p| <= 1, so inf|a| >= c0 - 1 > 0. With probability 1/2 the perturbation
// is a single unit cosine, which attains the target condition number exactly.
TorusPolynomial invertible_torus(double target_kappa, int max_degree, Rng& rng);

// Unitary from Gram-Schmidt on unit-disc random entries (redraws a column on
// near-dependence, re-orthogonalizes once for stability).
ComplexMatrix random_unitary(int n, Rng& rng);

struct GeneratedMatrix {
  ComplexMatrix a;
  ComplexMatrix exact_inverse;
  double kappa = 1.0;  // prescribed sigma_max / sigma_min (sigma_max = 1)
};

// a = U diag(s) V with log-spaced singular values 1 ... 1/kappa, so the
// condition number is exact by construction and the inverse is known in
// closed form.
GeneratedMatrix invertible_matrix(int n, double kappa, Rng& rng);

}  // namespace normctl
