#pragma once

#include <cstdint>

#include "maxtail/distributions.hpp"

namespace maxtail {

// Moment mass above and below the sample maximum for a survival-form power
// law with tail index alpha and lower bound scale L.  All moment functions
// require alpha > p; the p-th moment does not exist otherwise.
//
// Splitting E(X^p) at an observed maximum K >= L gives
//   below K:  (alpha / (alpha - p)) * L^p * (1 - (K/L)^(p-alpha))
//   above K:  (alpha / (alpha - p)) * L^p * (K/L)^(p-alpha)
// and the two add up to the full moment alpha * L^p / (alpha - p).
struct HiddenMomentLaw {
  PowerLawTail tail;
  MomentQuery query;
};

void validate(const HiddenMomentLaw& law);

// Moment mass above a fixed threshold K >= L.
double hidden_moment_given_max(const PowerLawTail& tail, double p, double K);

// Moment mass below a fixed threshold K >= L.
double observed_moment(const PowerLawTail& tail, double p, double K);

// Full p-th moment, alpha * L^p / (alpha - p).
double total_moment(const PowerLawTail& tail, double p);

// Distribution of Z = moment mass above the maximum of n draws, with the
// maximum in its large-n max-stable law.  Z is a monotone transform of the
// maximum, so density, CDF and quantile all have closed forms.  For p = 0
// the law collapses to Exponential(n) for every alpha and L.
double hidden_density(const HiddenMomentLaw& law, double z);
double hidden_cdf(const HiddenMomentLaw& law, double z);
double hidden_quantile(const HiddenMomentLaw& law, double q);

// Mean of Z: L^p * n^(p/alpha - 1) * Gamma(1 - p/alpha), and exactly 1/n
// when p = 0.
double expected_hidden_moment(const HiddenMomentLaw& law);

// Expected unseen share of the mean, E(Z) / E(X) at p = 1.  Requires
// alpha > 1; scale-free.  Tends to 1 as alpha -> 1 and to 0 as n grows.
double hidden_mean_fraction(const PowerLawTail& tail, std::int64_t n);

// E(Z at p = 1) / sd(X).  Requires alpha > 2; scale-free.
double hidden_mean_to_sd(const PowerLawTail& tail, std::int64_t n);

}  // namespace maxtail
