#pragma once

#include <cstdint>

#include "maxtail/distributions.hpp"
#include "maxtail/quadrature.hpp"

namespace maxtail {

// Expected moment mass beyond the sample maximum for arbitrary models,
// computed by integrating the partial moment against the law of the maximum.

struct HiddenTailEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  long long inner_evals = 0;
  long long outer_evals = 0;
  bool converged = false;
};

// Which law of the maximum to integrate against.
enum class MaxLaw {
  exact,    // n f(K) F(K)^(n-1), any model
  frechet,  // max-stable limit, power-law tails only
};

// integral_K^inf x^p phi(x) dx for the standard normal, via the upper
// incomplete gamma function: 2^(p/2 - 1) Gamma((p+1)/2, K^2/2) / sqrt(pi).
// Requires p >= 0 and K >= 0.
double gaussian_hidden_moment(double p, double K);

// integral_K^inf x^p f(x) dx for any supported model.  Closed form for
// Pareto and the standard normal, adaptive quadrature otherwise.  For the
// Gaussian with K < 0 the sign of x^p matters, so non-integer p is rejected
// there; integer p folds the negative part in analytically for the standard
// normal.
double partial_moment(const DistributionModel& model, double p, double K,
                      const QuadratureConfig& config = {});

// E over the sample maximum M_n of the moment mass above max(M_n, K_lower).
// K_lower = -inf averages over the whole support of the maximum.  The inner
// integral runs at 10x tighter tolerance than the outer one; error_estimate
// combines both levels and converged reports whether every stage met its
// tolerance.
HiddenTailEstimate expected_hidden_generic(const DistributionModel& model,
                                           std::int64_t n, double p,
                                           double K_lower,
                                           const QuadratureConfig& config = {},
                                           MaxLaw law = MaxLaw::exact);

// Closed form for the standard normal at p = 0 when the tail mass is
// measured above |M_n| rather than M_n: (1 - 2^(-n)) / (n + 1).
double gaussian_invisible_tail_p0(std::int64_t n);

// Quadrature companion to gaussian_invisible_tail_p0: integrates the
// survival mass above the absolute maximum against the exact law of the
// maximum of n standard normals.
HiddenTailEstimate expected_survival_above_abs_max(
    std::int64_t n, const QuadratureConfig& config = {});

}  // namespace maxtail
