#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "maxtail/statistics.hpp"

// Globally adaptive Gauss-Kronrod 7-15 quadrature.  The interval with the
// largest error estimate is bisected until the total estimate drops below
// max(abs_tol, rel_tol * |value|) or the subdivision budget runs out.
// Semi-infinite ranges are folded onto finite ones through a change of
// variables; all evaluation nodes stay strictly inside the open interval, so
// integrable endpoint behaviour is tolerated.
//
// The final value is a compensated sum over panels ordered by left endpoint,
// which makes the result independent of the refinement order.

namespace maxtail {

enum class InfiniteMap {
  rational,  // x = a + u / (1 - u); heavy algebraic tails
  exp,       // x = a - log(1 - u); exponential-type decay
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 200;
  InfiniteMap infinite_map = InfiniteMap::rational;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod nodes on [-1, 1] (positive half) and the embedded
// 7-point Gauss rule weights.
constexpr double kXgk[8] = {
    0.99145537112081263920685469752633, 0.94910791234275852452618968404785,
    0.86486442335976907278971278864098, 0.74153118559939443986386477328079,
    0.58608723546769113029414483825873, 0.40584515137739716690660641207696,
    0.20778495500789846760068940377324, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496373200805897, 0.06309209262997855329070066318921,
    0.10479001032225018383987632254152, 0.14065325971552591874518959051024,
    0.16900472663926790282658342659855, 0.19035057806478540991325640242101,
    0.20443294007529889241416199923465, 0.20948214108472782801299917489171};
constexpr double kWg[4] = {
    0.12948496616886969327061143267908, 0.27970539148927666790146777142378,
    0.38183005050511894495036977548898, 0.41795918367346938775510204081633};

struct PanelEstimate {
  double value;
  double error;
};

template <class F>
PanelEstimate gk15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double halfwidth = 0.5 * (b - a);

  const double fc = f(center);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::fabs(fc);

  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = halfwidth * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double fsum = fv1[j] + fv2[j];
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
    if (j % 2 == 1) {
      resg += kWg[j / 2] * fsum;
    }
  }

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc +=
        kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
  }
  resasc *= halfwidth;
  resabs *= halfwidth;

  double err = std::fabs((resk - resg) * halfwidth);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps = 2.220446049250313e-16;
  const double uflow = 2.2250738585072014e-308;
  if (resabs > uflow / (50.0 * eps)) {
    err = std::max(eps * 50.0 * resabs, err);
  }
  return {resk * halfwidth, err};
}

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

template <class F>
QuadratureResult adaptive_gk15(F f, double a, double b,
                               const QuadratureConfig& cfg) {
  std::vector<Panel> panels;
  {
    const PanelEstimate e = gk15(f, a, b);
    panels.push_back({a, b, e.value, e.error});
  }

  const auto worse = [](const Panel& lhs, const Panel& rhs) {
    return lhs.error < rhs.error;
  };

  QuadratureResult out;
  std::vector<Panel> ordered;
  while (true) {
    // Canonical left-to-right compensated sums, independent of heap order.
    ordered.assign(panels.begin(), panels.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const Panel& lhs, const Panel& rhs) { return lhs.a < rhs.a; });
    NeumaierSum value_sum;
    NeumaierSum error_sum;
    for (const Panel& panel : ordered) {
      value_sum.add(panel.value);
      error_sum.add(panel.error);
    }
    out.value = value_sum.value();
    out.error_estimate = error_sum.value();

    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(out.value));
    if (out.error_estimate <= tol) {
      out.converged = true;
      return out;
    }
    if (out.subdivisions_used >= cfg.max_subdivisions) {
      out.converged = false;
      return out;
    }

    std::pop_heap(panels.begin(), panels.end(), worse);
    const Panel worst = panels.back();
    panels.pop_back();

    const double mid = 0.5 * (worst.a + worst.b);
    const PanelEstimate left = gk15(f, worst.a, mid);
    const PanelEstimate right = gk15(f, mid, worst.b);
    panels.push_back({worst.a, mid, left.value, left.error});
    std::push_heap(panels.begin(), panels.end(), worse);
    panels.push_back({mid, worst.b, right.value, right.error});
    std::push_heap(panels.begin(), panels.end(), worse);
    ++out.subdivisions_used;
  }
}

template <class F>
auto guard_evaluations(F& f) {
  return [&f](double x) {
    const double fx = f(x);
    if (std::isnan(fx)) {
      throw std::domain_error("integrate: integrand returned NaN");
    }
    if (std::isinf(fx)) {
      throw std::domain_error("integrate: integrand returned infinity");
    }
    return fx;
  };
}

}  // namespace detail

template <class F>
QuadratureResult integrate(F&& f, double lower, double upper,
                           const QuadratureConfig& cfg = {}) {
  if (std::isnan(lower) || std::isnan(upper) || !(lower < upper)) {
    throw std::invalid_argument("integrate: requires lower < upper");
  }
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol >= 0.0) ||
      cfg.max_subdivisions < 0) {
    throw std::invalid_argument("integrate: invalid tolerance configuration");
  }

  auto g = detail::guard_evaluations(f);

  const bool lower_inf = std::isinf(lower);
  const bool upper_inf = std::isinf(upper);

  if (!lower_inf && !upper_inf) {
    return detail::adaptive_gk15(g, lower, upper, cfg);
  }

  if (lower_inf && upper_inf) {
    // Split at zero and integrate the two halves separately.
    QuadratureConfig half = cfg;
    half.abs_tol = 0.5 * cfg.abs_tol;
    QuadratureResult neg = integrate(f, lower, 0.0, half);
    QuadratureResult pos = integrate(f, 0.0, upper, half);
    QuadratureResult out;
    out.value = neg.value + pos.value;
    out.error_estimate = neg.error_estimate + pos.error_estimate;
    out.subdivisions_used = neg.subdivisions_used + pos.subdivisions_used;
    out.converged =
        neg.converged && pos.converged &&
        out.error_estimate <=
            std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(out.value));
    return out;
  }

  // One infinite endpoint: map onto u in (0, 1).  Reflection handles the
  // lower-infinite case with the same two maps.
  const double anchor = lower_inf ? upper : lower;
  const double sign = lower_inf ? -1.0 : 1.0;

  // Nodes rounding onto u = 1 would send x to infinity; treat them as the
  // zero limit of an integrable tail instead of evaluating f there.
  if (cfg.infinite_map == InfiniteMap::rational) {
    auto mapped = [&g, anchor, sign](double u) {
      const double den = 1.0 - u;
      const double x = anchor + sign * u / den;
      const double jac = 1.0 / (den * den);
      if (!std::isfinite(x) || !std::isfinite(jac)) return 0.0;
      return g(x) * jac;
    };
    return detail::adaptive_gk15(mapped, 0.0, 1.0, cfg);
  }
  auto mapped = [&g, anchor, sign](double u) {
    const double den = 1.0 - u;
    const double x = anchor - sign * std::log1p(-u);
    const double jac = 1.0 / den;
    if (!std::isfinite(x) || !std::isfinite(jac)) return 0.0;
    return g(x) * jac;
  };
  return detail::adaptive_gk15(mapped, 0.0, 1.0, cfg);
}

}  // namespace maxtail
