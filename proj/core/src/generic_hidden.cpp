#include "maxtail/generic_hidden.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "maxtail/pareto_hidden.hpp"
#include "maxtail/special_functions.hpp"

namespace maxtail {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

bool is_nonneg_integer(double p) {
  return p >= 0.0 && std::isfinite(p) && std::floor(p) == p;
}

// E(X^p) of the standard normal for even integer p: (p-1)!!.
double gaussian_even_total_moment(double p) {
  double m = 1.0;
  for (double k = p - 1.0; k >= 2.0; k -= 2.0) m *= k;
  return m;
}

bool is_standard(const Gaussian& g) { return g.mean == 0.0 && g.sd == 1.0; }

void require_order(double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw std::domain_error("moment order p must be non-negative");
  }
}

struct InnerUsage {
  long long evals = 0;
  double max_error = 0.0;
  bool converged = true;
};

double partial_moment_tracked(const DistributionModel& model, double p,
                              double K, const QuadratureConfig& config,
                              InnerUsage* usage) {
  require_order(p);
  validate(model);

  if (const Pareto* par = std::get_if<Pareto>(&model)) {
    const double lower = std::max(K, par->tail.scale);
    return hidden_moment_given_max(par->tail, p, lower);
  }

  if (p == 0.0) {
    return survival(model, K);
  }

  if (const Gaussian* gau = std::get_if<Gaussian>(&model)) {
    if (is_standard(*gau)) {
      if (K >= 0.0) {
        return gaussian_hidden_moment(p, K);
      }
      if (!is_nonneg_integer(p)) {
        throw std::domain_error(
            "partial_moment: non-integer p needs K >= 0 for gaussian models");
      }
      const double upper_part = gaussian_hidden_moment(p, -K);
      if (std::fmod(p, 2.0) == 1.0) {
        // Odd p: the two tails cancel except for the symmetric remainder.
        return upper_part;
      }
      return gaussian_even_total_moment(p) - upper_part;
    }
    if (K < 0.0 && !is_nonneg_integer(p)) {
      throw std::domain_error(
          "partial_moment: non-integer p needs K >= 0 for gaussian models");
    }
    long long evals = 0;
    auto integrand = [&](double x) {
      ++evals;
      return std::pow(x, p) * pdf(model, x);
    };
    const QuadratureResult r = integrate(
        integrand, K, std::numeric_limits<double>::infinity(), config);
    if (usage != nullptr) {
      usage->evals += evals;
      usage->max_error = std::max(usage->max_error, r.error_estimate);
      usage->converged = usage->converged && r.converged;
    }
    return r.value;
  }

  const double lower = std::max(K, 0.0);
  long long evals = 0;
  auto integrand = [&](double x) {
    ++evals;
    return std::pow(x, p) * pdf(model, x);
  };
  const QuadratureResult r = integrate(
      integrand, lower, std::numeric_limits<double>::infinity(), config);
  if (usage != nullptr) {
    usage->evals += evals;
    usage->max_error = std::max(usage->max_error, r.error_estimate);
    usage->converged = usage->converged && r.converged;
  }
  return r.value;
}

}  // namespace

double gaussian_hidden_moment(double p, double K) {
  require_order(p);
  if (std::isnan(K) || K < 0.0) {
    throw std::domain_error("gaussian_hidden_moment requires K >= 0");
  }
  if (std::isinf(K)) return 0.0;
  return std::exp2(0.5 * p - 1.0) *
         upper_incomplete_gamma(0.5 * (p + 1.0), 0.5 * K * K) / kSqrtPi;
}

double partial_moment(const DistributionModel& model, double p, double K,
                      const QuadratureConfig& config) {
  return partial_moment_tracked(model, p, K, config, nullptr);
}

HiddenTailEstimate expected_hidden_generic(const DistributionModel& model,
                                           std::int64_t n, double p,
                                           double K_lower,
                                           const QuadratureConfig& config,
                                           MaxLaw law) {
  validate(model);
  require_order(p);
  if (n < 1) {
    throw std::invalid_argument("sample size n must be at least 1");
  }
  if (std::isnan(K_lower)) {
    throw std::invalid_argument("K_lower must not be NaN");
  }

  QuadratureConfig inner = config;
  inner.abs_tol = 0.1 * config.abs_tol;
  inner.rel_tol = 0.1 * config.rel_tol;

  const double inf = std::numeric_limits<double>::infinity();
  HiddenTailEstimate est;
  InnerUsage usage;
  long long outer_evals = 0;

  if (law == MaxLaw::frechet) {
    const Pareto* par = std::get_if<Pareto>(&model);
    if (par == nullptr) {
      throw std::invalid_argument(
          "max-stable outer law requires a power-law model");
    }
    const PowerLawTail tail = par->tail;
    if (!(tail.alpha > p)) {
      throw std::domain_error("tail index must exceed moment order");
    }
    const double coeff = tail.alpha / (tail.alpha - p) * std::pow(tail.scale, p);
    const double lower = std::max(K_lower, 0.0);
    auto integrand = [&](double K) {
      ++outer_evals;
      const double fm = frechet_max_pdf(tail, n, K);
      if (fm == 0.0) return 0.0;
      // Power-law moment mass above K, extended below the support bound.
      const double mu = coeff * std::pow(K / tail.scale, p - tail.alpha);
      return mu * fm;
    };
    const QuadratureResult r = integrate(integrand, lower, inf, config);
    est.value = r.value;
    est.error_estimate = r.error_estimate;
    est.outer_evals = outer_evals;
    est.inner_evals = 0;
    est.converged = r.converged;
    return est;
  }

  double lower = K_lower;
  if (const Pareto* par = std::get_if<Pareto>(&model)) {
    lower = std::max(lower, par->tail.scale);
  } else if (std::holds_alternative<Lognormal>(model)) {
    lower = std::max(lower, 0.0);
  } else if (const Gaussian* gau = std::get_if<Gaussian>(&model)) {
    if (p > 0.0 && !is_nonneg_integer(p) && lower < 0.0) {
      throw std::domain_error(
          "expected_hidden_generic: non-integer p needs K_lower >= 0 for "
          "gaussian models");
    }
    (void)gau;
  }

  auto integrand = [&](double K) {
    ++outer_evals;
    const double fm = exact_max_pdf(model, n, K);
    if (fm == 0.0) return 0.0;
    return partial_moment_tracked(model, p, K, inner, &usage) * fm;
  };
  const QuadratureResult r = integrate(integrand, lower, inf, config);
  est.value = r.value;
  est.error_estimate = r.error_estimate + usage.max_error;
  est.outer_evals = outer_evals;
  est.inner_evals = usage.evals;
  est.converged = r.converged && usage.converged;
  return est;
}

double gaussian_invisible_tail_p0(std::int64_t n) {
  if (n < 1) {
    throw std::invalid_argument("sample size n must be at least 1");
  }
  return (1.0 - std::exp2(-static_cast<double>(n))) /
         static_cast<double>(n + 1);
}

HiddenTailEstimate expected_survival_above_abs_max(
    std::int64_t n, const QuadratureConfig& config) {
  if (n < 1) {
    throw std::invalid_argument("sample size n must be at least 1");
  }
  const DistributionModel model = Gaussian{0.0, 1.0};
  long long outer_evals = 0;
  auto integrand = [&](double K) {
    ++outer_evals;
    const double folded =
        exact_max_pdf(model, n, K) + exact_max_pdf(model, n, -K);
    if (folded == 0.0) return 0.0;
    return gaussian_hidden_moment(0.0, K) * folded;
  };
  const QuadratureResult r = integrate(
      integrand, 0.0, std::numeric_limits<double>::infinity(), config);
  HiddenTailEstimate est;
  est.value = r.value;
  est.error_estimate = r.error_estimate;
  est.outer_evals = outer_evals;
  est.inner_evals = 0;
  est.converged = r.converged;
  return est;
}

}  // namespace maxtail
