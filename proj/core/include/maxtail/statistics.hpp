#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace maxtail {

// Neumaier variant of Kahan summation; keeps long reductions accurate to a
// few ulp regardless of term ordering or magnitude spread.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(const std::vector<double>& values) {
  NeumaierSum s;
  for (double v : values) s.add(v);
  return s.value();
}

// One-sample Kolmogorov-Smirnov statistic against a model CDF.  The sample
// must already be sorted ascending.
template <class Cdf>
double ks_statistic(const std::vector<double>& sorted_sample, Cdf&& cdf) {
  if (sorted_sample.empty()) {
    throw std::invalid_argument("ks_statistic: empty sample");
  }
  const double n = static_cast<double>(sorted_sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_sample.size(); ++i) {
    const double f = cdf(sorted_sample[i]);
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    if (hi > d) d = hi;
    if (lo > d) d = lo;
  }
  return d;
}

}  // namespace maxtail
