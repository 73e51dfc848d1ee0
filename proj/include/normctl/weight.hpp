#pragma once

#include <cmath>
#include <string>

#include "normctl/errors.hpp"

namespace normctl {

// Weight on approximation orders: w(0) = 1, w >= 1, subadditive. Three rules
// cover the uses here: flat, (1+k)^r with 0 < r <= 1, and 1+k.
struct WeightFunction {
  enum class Rule { One, PowR, Linear };

  Rule rule = Rule::One;
  double r = 1.0;  // exponent for Rule::PowR

  static WeightFunction flat() { return {Rule::One, 1.0}; }
  static WeightFunction pow_r(double r) {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("weight exponent must lie in (0,1]");
    return {Rule::PowR, r};
  }
  static WeightFunction linear() { return {Rule::Linear, 1.0}; }

  double operator()(int k) const {
    if (k < 0) throw DomainError("weight argument must be nonnegative");
    switch (rule) {
      case Rule::One:
        return 1.0;
      case Rule::PowR:
        return std::pow(1.0 + k, r);
      case Rule::Linear:
        return 1.0 + k;
    }
    return 1.0;
  }

  // w(m+n) <= w(m) + w(n) for all m+n <= limit.
  bool subadditive_on(int limit) const {
    for (int m = 0; m <= limit; ++m)
      for (int n = 0; m + n <= limit; ++n)
        if ((*this)(m + n) > (*this)(m) + (*this)(n) + 1e-12) return false;
    return true;
  }

  std::string name() const {
    switch (rule) {
      case Rule::One:
        return "one";
      case Rule::PowR:
        return "one_plus_k_pow_r";
      case Rule::Linear:
        return "one_plus_k";
    }
    return "?";
  }
};

}  // namespace normctl
