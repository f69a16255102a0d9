#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "maxtail/generic_hidden.hpp"
#include "maxtail/montecarlo.hpp"
#include "maxtail/pareto_hidden.hpp"
#include "maxtail/statistics.hpp"
#include "test_support.hpp"

using namespace maxtail;
using testsupport::exp_vs_beta_gap;
using testsupport::ks_crit_1pct;
using testsupport::ks_crit_two_sample_1pct;
using testsupport::ks_two_sample;

namespace {

double pareto_exact_mean(double alpha, double L, std::int64_t n, double p) {
  const double nn = static_cast<double>(n);
  return std::pow(L, p) * std::exp(std::lgamma(1.0 - p / alpha) +
                                   std::lgamma(nn + 1.0) -
                                   std::lgamma(nn + 2.0 - p / alpha));
}

std::vector<double> sorted_copy(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("worker count never changes the values") {
  SimulationPlan plan;
  plan.model = Pareto{{2.0, 1.0}};
  plan.n = 20;
  plan.p = 1.0;
  plan.trials = 4003;  // odd count so blocks split unevenly
  plan.seed = 99;

  plan.workers = 1;
  const std::vector<double> serial = simulate_hidden_moment_values(plan);
  const SimulationReport serial_report = simulate_hidden_moments(plan);
  for (int workers : {2, 3, 8}) {
    plan.workers = workers;
    CAPTURE(workers);
    CHECK(simulate_hidden_moment_values(plan) == serial);
    const SimulationReport r = simulate_hidden_moments(plan);
    CHECK(r.empirical_mean == serial_report.empirical_mean);
    CHECK(r.empirical_se == serial_report.empirical_se);
    CHECK(r.ks_statistic == serial_report.ks_statistic);
  }
}

TEST_CASE("same seed repeats, different seed does not") {
  SimulationPlan plan;
  plan.model = Gaussian{0.0, 1.0};
  plan.n = 5;
  plan.p = 0.0;
  plan.trials = 1000;
  plan.seed = 7;
  const std::vector<double> a = simulate_hidden_moment_values(plan);
  CHECK(simulate_hidden_moment_values(plan) == a);
  plan.seed = 8;
  CHECK(simulate_hidden_moment_values(plan) != a);
}

TEST_CASE("pareto hidden mean matches the finite-sample expectation") {
  SimulationPlan plan;
  plan.model = Pareto{{2.0, 1.0}};
  plan.n = 100;
  plan.p = 1.0;
  plan.trials = 100000;
  plan.seed = 20260819;
  plan.workers = 2;
  const SimulationReport r = simulate_hidden_moments(plan);

  const double exact = pareto_exact_mean(2.0, 1.0, 100, 1.0);
  CHECK(std::fabs(r.empirical_mean - exact) < 3.0 * r.empirical_se);

  // The max-stable limit value sits slightly above at finite n; allow its
  // bias on top of the sampling band.
  const double limit = 0.17724538509055160;
  REQUIRE(r.analytic_mean.has_value());
  CHECK(*r.analytic_mean == doctest::Approx(limit).epsilon(1e-12));
  CHECK(std::fabs(r.empirical_mean - limit) <
        (limit - exact) + 3.0 * r.empirical_se);

  REQUIRE(r.ks_statistic.has_value());
  // Sampling the exact law, testing against the limit law: the KS distance
  // stays within the law gap (O(1/n)) plus the sampling band.
  CHECK(*r.ks_statistic < 2.0 / 100.0 + ks_crit_1pct(plan.trials));
}

TEST_CASE("survival mass above the max follows the minimum-of-uniforms law") {
  // For p = 0 the simulated values are survival(max of n), whose law is
  // exactly Beta(1, n) for every continuous model: mean 1/(n+1), CDF
  // 1 - (1-z)^n.  The exponential form n e^{-nz} is only the large-n limit.
  const std::int64_t n = 50;
  const std::int64_t trials = 100000;
  const double crit = ks_crit_1pct(trials);

  std::vector<std::vector<double>> samples;
  for (double alpha : {1.5, 3.0}) {
    SimulationPlan plan;
    plan.model = Pareto{{alpha, 1.0}};
    plan.n = n;
    plan.p = 0.0;
    plan.trials = trials;
    plan.seed = 424242;
    plan.workers = 2;
    const std::vector<double> values = simulate_hidden_moment_values(plan);
    const SimulationReport r = simulate_hidden_moments(plan);
    CAPTURE(alpha);

    const double se = r.empirical_se;
    CHECK(std::fabs(r.empirical_mean - 1.0 / 51.0) < 3.0 * se);
    // Against the limit-law mean 1/n, the exact-law bias 1/(n(n+1)) adds in.
    CHECK(std::fabs(r.empirical_mean - 0.02) < 1.0 / (50.0 * 51.0) + 3.0 * se);

    const std::vector<double> sorted = sorted_copy(values);
    const double ks_beta = ks_statistic(sorted, [&](double z) {
      return 1.0 - std::pow(1.0 - z, static_cast<double>(n));
    });
    CHECK(ks_beta < crit);

    const double ks_exp = ks_statistic(sorted, [&](double z) {
      return -std::expm1(-static_cast<double>(n) * z);
    });
    CHECK(ks_exp < exp_vs_beta_gap(n) + crit);
    // The exponential approximation is measurably worse than the exact law.
    CHECK(ks_exp > ks_beta);

    samples.push_back(sorted);
  }
  // The p = 0 law carries no trace of the tail index.
  CHECK(ks_two_sample(samples[0], samples[1]) <
        ks_crit_two_sample_1pct(trials));
}

TEST_CASE("gaussian survival mass obeys the same rank law") {
  SimulationPlan plan;
  plan.model = Gaussian{0.0, 1.0};
  plan.n = 4;
  plan.p = 0.0;
  plan.trials = 100000;
  plan.seed = 1234;
  plan.workers = 2;
  const SimulationReport r = simulate_hidden_moments(plan);
  CHECK(std::fabs(r.empirical_mean - 0.2) < 3.0 * r.empirical_se);
  CHECK_FALSE(r.analytic_mean.has_value());
  CHECK_FALSE(r.ks_statistic.has_value());
}

TEST_CASE("small-n bias against the limit law is visible but bounded") {
  SimulationPlan plan;
  plan.model = Pareto{{2.0, 1.0}};
  plan.n = 10;
  plan.p = 1.0;
  plan.trials = 100000;
  plan.seed = 5150;
  plan.workers = 2;
  const SimulationReport r = simulate_hidden_moments(plan);
  const double exact = pareto_exact_mean(2.0, 1.0, 10, 1.0);
  REQUIRE(r.analytic_mean.has_value());
  const double limit = *r.analytic_mean;
  CHECK(std::fabs(r.empirical_mean - exact) < 3.0 * r.empirical_se);
  // At n = 10 the limit form overshoots by about 3%; the empirical mean
  // lands below it by more than the sampling noise alone.
  CHECK(limit > exact);
  if (r.empirical_mean >= limit) {
    WARN_MESSAGE(false, "empirical mean landed above the limit value");
  }
  CHECK(std::fabs(r.empirical_mean - limit) < (limit - exact) + 3.0 * r.empirical_se);
}

TEST_CASE("exceedance probabilities are uniform for a single draw") {
  for (const DistributionModel& model :
       {DistributionModel{Pareto{{2.0, 1.0}}},
        DistributionModel{Gaussian{0.0, 1.0}}}) {
    const std::vector<double> u =
        simulate_exceedance_law(model, 1, 100000, 777, 2);
    const std::vector<double> sorted = sorted_copy(u);
    const double ks = ks_statistic(sorted, [](double z) { return z; });
    CHECK(ks < ks_crit_1pct(100000));
  }
}

TEST_CASE("exceedance law at n = 10 across models") {
  const std::int64_t trials = 100000;
  std::vector<std::vector<double>> samples;
  for (const DistributionModel& model :
       {DistributionModel{Pareto{{2.0, 1.0}}},
        DistributionModel{Gaussian{0.0, 1.0}}}) {
    const std::vector<double> u =
        simulate_exceedance_law(model, 10, trials, 31337, 2);
    const std::vector<double> sorted = sorted_copy(u);
    NeumaierSum sum;
    for (double v : sorted) sum.add(v);
    const double mean = sum.value() / static_cast<double>(trials);
    // SE of Beta(1, 10): sqrt(n/((n+1)^2 (n+2))) / sqrt(T).
    const double se =
        std::sqrt(10.0 / (11.0 * 11.0 * 12.0)) / std::sqrt(double(trials));
    CHECK(std::fabs(mean - 1.0 / 11.0) < 3.0 * se);
    CHECK(std::fabs(mean - 0.1) < 1.0 / 110.0 + 3.0 * se);
    const double ks = ks_statistic(sorted, [](double z) {
      return 1.0 - std::pow(1.0 - z, 10.0);
    });
    CHECK(ks < ks_crit_1pct(trials));
    samples.push_back(sorted);
  }
  CHECK(ks_two_sample(samples[0], samples[1]) <
        ks_crit_two_sample_1pct(trials));
}

TEST_CASE("lognormal hidden mean agrees with the quadrature value") {
  SimulationPlan plan;
  plan.model = Lognormal{0.0, 1.0};
  plan.n = 100;
  plan.p = 1.0;
  plan.trials = 20000;
  plan.seed = 1007;
  plan.workers = 2;
  const SimulationReport r = simulate_hidden_moments(plan);
  const double expected = 0.1350510104563849;
  CHECK(std::fabs(r.empirical_mean - expected) < 3.0 * r.empirical_se);
  CHECK_FALSE(r.analytic_mean.has_value());
}

TEST_CASE("plan validation") {
  SimulationPlan plan;
  plan.model = Pareto{{2.0, 1.0}};
  plan.n = 10;
  plan.p = 2.0;  // moment order at the tail index: undefined
  plan.trials = 10;
  CHECK_THROWS_AS(simulate_hidden_moment_values(plan), std::domain_error);
  plan.p = 1.0;
  plan.trials = 0;
  CHECK_THROWS_AS(simulate_hidden_moment_values(plan), std::invalid_argument);
  plan.trials = 10;
  plan.n = 0;
  CHECK_THROWS_AS(simulate_hidden_moment_values(plan), std::invalid_argument);
  plan.n = 10;
  plan.workers = 0;
  CHECK_THROWS_AS(simulate_hidden_moment_values(plan), std::invalid_argument);
  plan.workers = 1;
  plan.model = Gaussian{0.0, 1.0};
  plan.p = 1.5;
  CHECK_THROWS_AS(simulate_hidden_moment_values(plan), std::invalid_argument);
  CHECK_THROWS_AS(simulate_exceedance_law(plan.model, 1, 0, 0),
                  std::invalid_argument);
}
