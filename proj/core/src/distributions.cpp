#include "maxtail/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "maxtail/special_functions.hpp"

namespace maxtail {

namespace {

constexpr double kInvSqrtTwoPi = 0.3989422804014327;
constexpr double kInvSqrtTwo = 0.7071067811865476;
constexpr double kTwoPi = 6.283185307179586;

// exp(-t) is zero in double arithmetic beyond this point.
constexpr double kExpUnderflow = 745.0;

double gaussian_z(const Gaussian& g, double x) { return (x - g.mean) / g.sd; }

}  // namespace

void validate(const PowerLawTail& tail) {
  if (!(tail.alpha > 0.0) || !std::isfinite(tail.alpha)) {
    throw std::invalid_argument("tail index alpha must be positive");
  }
  if (!(tail.scale > 0.0) || !std::isfinite(tail.scale)) {
    throw std::invalid_argument("tail scale must be positive");
  }
}

void validate(const DistributionModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          validate(m.tail);
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          if (!(m.sd > 0.0) || !std::isfinite(m.sd) || !std::isfinite(m.mean)) {
            throw std::invalid_argument("gaussian sd must be positive");
          }
        } else {
          if (!(m.sigma > 0.0) || !std::isfinite(m.sigma) ||
              !std::isfinite(m.mu)) {
            throw std::invalid_argument("lognormal sigma must be positive");
          }
        }
      },
      model);
}

void validate(const MomentQuery& query) {
  if (query.n < 1) {
    throw std::invalid_argument("sample size n must be at least 1");
  }
  if (!(query.p >= 0.0) || !std::isfinite(query.p)) {
    throw std::invalid_argument("moment order p must be non-negative");
  }
}

double pdf(const DistributionModel& model, double x) {
  validate(model);
  return std::visit(
      [x](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          const double alpha = m.tail.alpha;
          const double scale = m.tail.scale;
          if (x < scale) return 0.0;
          return (alpha / scale) * std::pow(scale / x, alpha + 1.0);
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          const double z = gaussian_z(m, x);
          return kInvSqrtTwoPi / m.sd * std::exp(-0.5 * z * z);
        } else {
          if (x <= 0.0) return 0.0;
          const double z = (std::log(x) - m.mu) / m.sigma;
          return kInvSqrtTwoPi / (m.sigma * x) * std::exp(-0.5 * z * z);
        }
      },
      model);
}

double cdf(const DistributionModel& model, double x) {
  validate(model);
  return std::visit(
      [x](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          if (x <= m.tail.scale) return 0.0;
          return 1.0 - std::pow(m.tail.scale / x, m.tail.alpha);
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          return 0.5 * erfc(-gaussian_z(m, x) * kInvSqrtTwo);
        } else {
          if (x <= 0.0) return 0.0;
          const double z = (std::log(x) - m.mu) / m.sigma;
          return 0.5 * erfc(-z * kInvSqrtTwo);
        }
      },
      model);
}

double survival(const DistributionModel& model, double x) {
  validate(model);
  return std::visit(
      [x](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          if (x <= m.tail.scale) return 1.0;
          return std::pow(m.tail.scale / x, m.tail.alpha);
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          return 0.5 * erfc(gaussian_z(m, x) * kInvSqrtTwo);
        } else {
          if (x <= 0.0) return 1.0;
          const double z = (std::log(x) - m.mu) / m.sigma;
          return 0.5 * erfc(z * kInvSqrtTwo);
        }
      },
      model);
}

double frechet_max_pdf(const PowerLawTail& tail, std::int64_t n, double K) {
  validate(tail);
  if (n < 1) {
    throw std::invalid_argument("sample size n must be at least 1");
  }
  if (K <= 0.0) return 0.0;
  const double y = std::pow(tail.scale / K, tail.alpha);
  const double t = static_cast<double>(n) * y;
  if (t > kExpUnderflow) return 0.0;
  return tail.alpha * static_cast<double>(n) / K * y * std::exp(-t);
}

double exact_max_pdf(const DistributionModel& model, std::int64_t n,
                     double K) {
  if (n < 1) {
    throw std::invalid_argument("sample size n must be at least 1");
  }
  const double f = pdf(model, K);
  if (n == 1) return f;
  if (f == 0.0) return 0.0;
  const double c = cdf(model, K);
  if (c == 0.0) return 0.0;
  return static_cast<double>(n) * f * std::pow(c, static_cast<double>(n - 1));
}

double pareto_inverse_survival(const PowerLawTail& tail, double u) {
  validate(tail);
  if (!(u > 0.0) || !(u <= 1.0)) {
    throw std::domain_error("survival probability must lie in (0, 1]");
  }
  return tail.scale * std::pow(u, -1.0 / tail.alpha);
}

double standard_normal(SplitMix64& rng) {
  const double u1 = rng.next_unit();
  const double u2 = rng.next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::vector<double> sample(const DistributionModel& model, SplitMix64& rng,
                           std::int64_t count) {
  validate(model);
  if (count < 0) {
    throw std::invalid_argument("sample count must be non-negative");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));

  if (const Pareto* par = std::get_if<Pareto>(&model)) {
    for (std::int64_t i = 0; i < count; ++i) {
      out.push_back(pareto_inverse_survival(par->tail, rng.next_unit()));
    }
    return out;
  }
  if (const Gaussian* gau = std::get_if<Gaussian>(&model)) {
    for (std::int64_t i = 0; i < count; ++i) {
      out.push_back(gau->mean + gau->sd * standard_normal(rng));
    }
    return out;
  }
  const Lognormal& ln = std::get<Lognormal>(model);
  for (std::int64_t i = 0; i < count; ++i) {
    out.push_back(std::exp(ln.mu + ln.sigma * standard_normal(rng)));
  }
  return out;
}

}  // namespace maxtail
