#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maxtail/distributions.hpp"

namespace maxtail {

// Seeded, reproducible sampling experiments.  Every trial owns an
// independent random stream derived from (seed, trial index), so the
// produced values are bit-for-bit identical for any worker count.

struct SimulationPlan {
  DistributionModel model;
  std::int64_t n = 1;       // draws per trial
  double p = 0.0;           // moment order
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct SimulationReport {
  double empirical_mean = 0.0;
  double empirical_se = 0.0;
  std::optional<double> analytic_mean;  // power-law models only
  std::optional<double> ks_statistic;   // power-law models only
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

// Per-trial moment mass above the trial maximum: draw n variates, take the
// maximum K, evaluate integral_K^inf x^p f(x) dx analytically (power law,
// standard normal) or by quadrature (lognormal, shifted gaussian).
std::vector<double> simulate_hidden_moment_values(const SimulationPlan& plan);

// Summary of simulate_hidden_moment_values: mean, standard error, and for
// power-law models the analytic mean of the max-stable limit law plus the
// KS distance between the simulated values and that law's CDF.
SimulationReport simulate_hidden_moments(const SimulationPlan& plan);

// Per-trial survival mass above the trial maximum, survival(max of n).  For
// every continuous model this has the law of the minimum of n uniforms.
std::vector<double> simulate_exceedance_law(const DistributionModel& model,
                                            std::int64_t n,
                                            std::int64_t trials,
                                            std::uint64_t seed,
                                            int workers = 1);

}  // namespace maxtail
