#include "maxtail/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "maxtail/generic_hidden.hpp"
#include "maxtail/pareto_hidden.hpp"
#include "maxtail/quadrature.hpp"
#include "maxtail/statistics.hpp"

namespace maxtail {

namespace {

void validate_common(const DistributionModel& model, std::int64_t n,
                     std::int64_t trials, int workers) {
  validate(model);
  if (n < 1) {
    throw std::invalid_argument("sample size n must be at least 1");
  }
  if (trials < 1) {
    throw std::invalid_argument("trial count must be at least 1");
  }
  if (workers < 1) {
    throw std::invalid_argument("worker count must be at least 1");
  }
}

// Maximum of n draws from one trial stream.  The power-law branch tracks the
// smallest raw word and applies the (monotone) inverse transform once, which
// is bitwise identical to transforming every draw but does a single pow.
double trial_max(const DistributionModel& model, SplitMix64& rng,
                 std::int64_t n) {
  if (const Pareto* par = std::get_if<Pareto>(&model)) {
    std::uint64_t min_raw = std::numeric_limits<std::uint64_t>::max();
    for (std::int64_t i = 0; i < n; ++i) {
      min_raw = std::min(min_raw, rng.next_u64());
    }
    const double u = static_cast<double>((min_raw >> 11) + 1) * 0x1.0p-53;
    return par->tail.scale * std::pow(u, -1.0 / par->tail.alpha);
  }
  double zmax = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < n; ++i) {
    zmax = std::max(zmax, standard_normal(rng));
  }
  if (const Gaussian* gau = std::get_if<Gaussian>(&model)) {
    return gau->mean + gau->sd * zmax;
  }
  const Lognormal& ln = std::get<Lognormal>(model);
  return std::exp(ln.mu + ln.sigma * zmax);
}

// Fills values[t] for t in [0, trials) with per_trial(t), split across
// workers in contiguous blocks.  Exceptions are rethrown on the caller.
template <class PerTrial>
std::vector<double> run_trials(std::int64_t trials, int workers,
                               PerTrial per_trial) {
  std::vector<double> values(static_cast<std::size_t>(trials));
  if (workers == 1) {
    for (std::int64_t t = 0; t < trials; ++t) {
      values[static_cast<std::size_t>(t)] = per_trial(t);
    }
    return values;
  }

  const std::int64_t chunk = (trials + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = static_cast<std::int64_t>(w) * chunk;
    const std::int64_t end = std::min(trials, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end]() {
      try {
        for (std::int64_t t = begin; t < end; ++t) {
          values[static_cast<std::size_t>(t)] = per_trial(t);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return values;
}

}  // namespace

std::vector<double> simulate_hidden_moment_values(const SimulationPlan& plan) {
  validate_common(plan.model, plan.n, plan.trials, plan.workers);
  if (!(plan.p >= 0.0) || !std::isfinite(plan.p)) {
    throw std::invalid_argument("moment order p must be non-negative");
  }
  if (const Pareto* par = std::get_if<Pareto>(&plan.model)) {
    if (!(par->tail.alpha > plan.p)) {
      throw std::domain_error("tail index must exceed moment order");
    }
  }
  if (std::holds_alternative<Gaussian>(plan.model) && plan.p > 0.0 &&
      std::floor(plan.p) != plan.p) {
    throw std::invalid_argument(
        "gaussian simulations need integer moment order p");
  }

  const QuadratureConfig inner_cfg;
  auto per_trial = [&plan, &inner_cfg](std::int64_t t) {
    SplitMix64 rng = trial_stream(plan.seed, static_cast<std::uint64_t>(t));
    const double K = trial_max(plan.model, rng, plan.n);
    if (const Pareto* par = std::get_if<Pareto>(&plan.model)) {
      return hidden_moment_given_max(par->tail, plan.p, K);
    }
    return partial_moment(plan.model, plan.p, K, inner_cfg);
  };
  return run_trials(plan.trials, plan.workers, per_trial);
}

SimulationReport simulate_hidden_moments(const SimulationPlan& plan) {
  std::vector<double> values = simulate_hidden_moment_values(plan);

  SimulationReport report;
  report.trials = plan.trials;
  report.seed = plan.seed;

  const double count = static_cast<double>(values.size());
  report.empirical_mean = compensated_sum(values) / count;
  if (values.size() > 1) {
    NeumaierSum sq;
    for (double v : values) {
      const double d = v - report.empirical_mean;
      sq.add(d * d);
    }
    const double variance = sq.value() / (count - 1.0);
    report.empirical_se = std::sqrt(variance / count);
  }

  if (const Pareto* par = std::get_if<Pareto>(&plan.model)) {
    const HiddenMomentLaw law{par->tail, {plan.n, plan.p}};
    report.analytic_mean = expected_hidden_moment(law);
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    report.ks_statistic = ks_statistic(
        sorted, [&law](double z) { return hidden_cdf(law, z); });
  }
  return report;
}

std::vector<double> simulate_exceedance_law(const DistributionModel& model,
                                            std::int64_t n,
                                            std::int64_t trials,
                                            std::uint64_t seed, int workers) {
  validate_common(model, n, trials, workers);
  auto per_trial = [&model, n, seed](std::int64_t t) {
    SplitMix64 rng = trial_stream(seed, static_cast<std::uint64_t>(t));
    const double K = trial_max(model, rng, n);
    return survival(model, K);
  };
  return run_trials(trials, workers, per_trial);
}

}  // namespace maxtail
