#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace testsupport {

inline double rel_err(double value, double reference) {
  return std::fabs(value - reference) / std::fabs(reference);
}

// Composite Simpson rule; deliberately naive so it shares nothing with the
// adaptive integrator under test.
template <class F>
double simpson(F f, double a, double b, int panels = 4096) {
  const double h = (b - a) / panels;
  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < panels; i += 2) odd += f(a + i * h);
  for (int i = 2; i < panels; i += 2) even += f(a + i * h);
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

// Pearson statistic for the probability-integral transform of `draws`
// against `cdf`, using equiprobable bins.
template <class Cdf>
double chi_square_pit(const std::vector<double>& draws, Cdf cdf, int bins) {
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (double d : draws) {
    const double u = cdf(d);
    int b = static_cast<int>(u * bins);
    if (b < 0) b = 0;
    if (b >= bins) b = bins - 1;
    counts[static_cast<std::size_t>(b)] += 1.0;
  }
  const double expected = static_cast<double>(draws.size()) / bins;
  double chi2 = 0.0;
  for (double c : counts) {
    const double d = c - expected;
    chi2 += d * d / expected;
  }
  return chi2;
}

// 0.1% critical value of chi-square with 99 degrees of freedom.
inline constexpr double kChiSquareCrit99 = 148.23035916510173;

// 1% one-sample Kolmogorov-Smirnov critical value.
inline double ks_crit_1pct(double trials) { return 1.63 / std::sqrt(trials); }

// 1% two-sample critical value for equal sample sizes.
inline double ks_crit_two_sample_1pct(double trials) {
  return 1.63 * std::sqrt(2.0 / trials);
}

// Two-sample Kolmogorov-Smirnov statistic; inputs must be sorted.
inline double ks_two_sample(const std::vector<double>& a,
                            const std::vector<double>& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: empty sample");
  }
  double d = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    const double fa = static_cast<double>(i) / static_cast<double>(a.size());
    const double fb = static_cast<double>(j) / static_cast<double>(b.size());
    const double gap = std::fabs(fa - fb);
    if (gap > d) d = gap;
  }
  return d;
}

// sup over z of |exp(-n z) - (1 - z)^n|: the distance between the limiting
// exponential law and the exact min-of-uniforms law at sample size n.
inline double exp_vs_beta_gap(std::int64_t n) {
  const double nd = static_cast<double>(n);
  const double hi = std::min(1.0, 20.0 / nd);
  const int grid = 400000;
  double best = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double z = hi * static_cast<double>(i) / grid;
    const double gap = std::fabs(std::exp(-nd * z) - std::pow(1.0 - z, nd));
    if (gap > best) best = gap;
  }
  return best;
}

}  // namespace testsupport
