#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "maxtail/rng.hpp"

namespace maxtail {

// Survival-form power law: P(X > x) = (scale / x)^alpha for x >= scale.
struct PowerLawTail {
  double alpha = 1.0;  // tail index, > 0
  double scale = 1.0;  // lower support bound, > 0
};

struct Pareto {
  PowerLawTail tail;
};

struct Gaussian {
  double mean = 0.0;
  double sd = 1.0;  // > 0
};

struct Lognormal {
  double mu = 0.0;
  double sigma = 1.0;  // > 0
};

using DistributionModel = std::variant<Pareto, Gaussian, Lognormal>;

// Sample size and moment order for max-conditional moment questions.
struct MomentQuery {
  std::int64_t n = 1;  // observations per sample, >= 1
  double p = 0.0;      // moment order, >= 0
};

void validate(const PowerLawTail& tail);
void validate(const DistributionModel& model);
void validate(const MomentQuery& query);

double pdf(const DistributionModel& model, double x);
double cdf(const DistributionModel& model, double x);
double survival(const DistributionModel& model, double x);

// Density of the sample maximum in the large-n max-stable regime for a
// power-law tail: alpha * n * K^(-alpha-1) * scale^alpha *
// exp(-n * (scale/K)^alpha).  Integrates to 1 over K > 0.
double frechet_max_pdf(const PowerLawTail& tail, std::int64_t n, double K);

// Finite-sample density of the maximum of n iid draws:
// n * pdf(K) * cdf(K)^(n-1).
double exact_max_pdf(const DistributionModel& model, std::int64_t n, double K);

// Quantile of the power law as a function of the survival probability
// u in (0, 1]: x = scale * u^(-1/alpha).
double pareto_inverse_survival(const PowerLawTail& tail, double u);

// Draw `count` iid variates by inverse transform (Pareto, Lognormal) or
// Box-Muller (Gaussian).  Consumes the stream deterministically.
std::vector<double> sample(const DistributionModel& model, SplitMix64& rng,
                           std::int64_t count);

// One standard normal variate; consumes two stream values.
double standard_normal(SplitMix64& rng);

}  // namespace maxtail
