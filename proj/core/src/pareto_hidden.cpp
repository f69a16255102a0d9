#include "maxtail/pareto_hidden.hpp"

#include <cmath>
#include <stdexcept>

#include "maxtail/special_functions.hpp"

namespace maxtail {

namespace {

constexpr double kExpUnderflow = 745.0;

void require_alpha_exceeds_p(double alpha, double p) {
  if (!(alpha > p)) {
    throw std::domain_error("tail index must exceed moment order");
  }
}

void require_order(double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument("moment order p must be non-negative");
  }
}

// Z is supported on z > 0.  Substituting the max-stable law through the
// moment map gives a Weibull-type law in w = (alpha-p) z / (alpha L^alpha)
// with shape beta = alpha / (alpha - p):
//   CDF(z) = 1 - exp(-n L^alpha w^beta),  pdf(z) = n w^(beta-1) exp(...).
double w_of_z(const HiddenMomentLaw& law, double z, double la) {
  return (law.tail.alpha - law.query.p) * z / (law.tail.alpha * la);
}

}  // namespace

void validate(const HiddenMomentLaw& law) {
  validate(law.tail);
  validate(law.query);
  require_alpha_exceeds_p(law.tail.alpha, law.query.p);
}

double hidden_moment_given_max(const PowerLawTail& tail, double p, double K) {
  validate(tail);
  require_order(p);
  require_alpha_exceeds_p(tail.alpha, p);
  if (!(K >= tail.scale)) {
    throw std::domain_error("threshold K must be at least the tail scale");
  }
  const double alpha = tail.alpha;
  return alpha / (alpha - p) * std::pow(tail.scale, p) *
         std::pow(K / tail.scale, p - alpha);
}

double observed_moment(const PowerLawTail& tail, double p, double K) {
  validate(tail);
  require_order(p);
  require_alpha_exceeds_p(tail.alpha, p);
  if (!(K >= tail.scale)) {
    throw std::domain_error("threshold K must be at least the tail scale");
  }
  const double alpha = tail.alpha;
  return alpha / (alpha - p) * std::pow(tail.scale, p) *
         (1.0 - std::pow(K / tail.scale, p - alpha));
}

double total_moment(const PowerLawTail& tail, double p) {
  validate(tail);
  require_order(p);
  require_alpha_exceeds_p(tail.alpha, p);
  return tail.alpha / (tail.alpha - p) * std::pow(tail.scale, p);
}

double hidden_density(const HiddenMomentLaw& law, double z) {
  validate(law);
  const double n = static_cast<double>(law.query.n);
  if (!(z > 0.0)) return 0.0;
  if (law.query.p == 0.0) {
    // Parameter-free case: Z = survival mass above the max.
    const double t = n * z;
    if (t > kExpUnderflow) return 0.0;
    return n * std::exp(-t);
  }
  const double alpha = law.tail.alpha;
  const double p = law.query.p;
  const double la = std::pow(law.tail.scale, alpha);
  const double w = w_of_z(law, z, la);
  const double beta = alpha / (alpha - p);
  const double t = n * la * std::pow(w, beta);
  if (t > kExpUnderflow) return 0.0;
  return n * std::pow(w, beta - 1.0) * std::exp(-t);
}

double hidden_cdf(const HiddenMomentLaw& law, double z) {
  validate(law);
  const double n = static_cast<double>(law.query.n);
  if (!(z > 0.0)) return 0.0;
  if (law.query.p == 0.0) {
    return -std::expm1(-n * z);
  }
  const double alpha = law.tail.alpha;
  const double p = law.query.p;
  const double la = std::pow(law.tail.scale, alpha);
  const double w = w_of_z(law, z, la);
  const double beta = alpha / (alpha - p);
  return -std::expm1(-n * la * std::pow(w, beta));
}

double hidden_quantile(const HiddenMomentLaw& law, double q) {
  validate(law);
  if (!(q >= 0.0) || !(q < 1.0)) {
    throw std::domain_error("quantile level must lie in [0, 1)");
  }
  const double n = static_cast<double>(law.query.n);
  if (law.query.p == 0.0) {
    return -std::log1p(-q) / n;
  }
  const double alpha = law.tail.alpha;
  const double p = law.query.p;
  const double la = std::pow(law.tail.scale, alpha);
  const double beta = alpha / (alpha - p);
  const double w = std::pow(-std::log1p(-q) / (n * la), 1.0 / beta);
  return alpha * la * w / (alpha - p);
}

double expected_hidden_moment(const HiddenMomentLaw& law) {
  validate(law);
  const double n = static_cast<double>(law.query.n);
  if (law.query.p == 0.0) {
    return 1.0 / n;
  }
  const double alpha = law.tail.alpha;
  const double p = law.query.p;
  return std::pow(law.tail.scale, p) * std::pow(n, p / alpha - 1.0) *
         gamma(1.0 - p / alpha);
}

double hidden_mean_fraction(const PowerLawTail& tail, std::int64_t n) {
  validate(tail);
  if (n < 1) {
    throw std::invalid_argument("sample size n must be at least 1");
  }
  if (!(tail.alpha > 1.0)) {
    throw std::domain_error("tail index must exceed 1 for a finite mean");
  }
  const double alpha = tail.alpha;
  return std::pow(static_cast<double>(n), 1.0 / alpha - 1.0) *
         gamma(1.0 - 1.0 / alpha) * (alpha - 1.0) / alpha;
}

double hidden_mean_to_sd(const PowerLawTail& tail, std::int64_t n) {
  validate(tail);
  if (n < 1) {
    throw std::invalid_argument("sample size n must be at least 1");
  }
  if (!(tail.alpha > 2.0)) {
    throw std::domain_error("tail index must exceed 2 for a finite variance");
  }
  // sd(X) = L sqrt(alpha) / ((alpha - 1) sqrt(alpha - 2)); the scale cancels
  // against the hidden mean, so the ratio is computed scale-free.
  const double alpha = tail.alpha;
  const double mean_term = std::pow(static_cast<double>(n), 1.0 / alpha - 1.0) *
                           gamma(1.0 - 1.0 / alpha);
  return mean_term * (alpha - 1.0) * std::sqrt(alpha - 2.0) /
         std::sqrt(alpha);
}

}  // namespace maxtail
