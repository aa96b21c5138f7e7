#pragma once

#include <cmath>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "crmhe/errors.hpp"

namespace crmhe {

struct Tolerances {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  // Survival level (relative to the survival at the lower limit) the
  // integration must pass before tail extrapolation is allowed.
  double tail_survival_cutoff = 1e-12;
};

struct IntegralEstimate {
  double value = 0.0;
  double abs_error = 0.0;
};

namespace detail {

inline boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule() {
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  return rule;
}

template <class F>
IntegralEstimate tanh_sinh_segment(const F& f, double a, double b, double rel_tol) {
  double error = 0.0;
  double l1 = 0.0;
  // Integrate over [0, b - a]: abscissae near a large left endpoint would
  // otherwise round onto it.
  auto shifted = [&](double u) { return f(a + u); };
  double v = tanh_sinh_rule().integrate(shifted, 0.0, b - a, rel_tol, &error, &l1);
  return {v, error};
}

}  // namespace detail

/// Integrates a non-negative, non-increasing integrand g over [from, right].
///
/// Bounded ranges use a single tanh-sinh pass (endpoint singularities such as
/// the (b - x)^p edge of a uniform law are handled by the rule). Unbounded
/// ranges are covered by segments whose widths double, starting with
/// `first_width`. Once the segments pass `x_pass` the run stops either when a
/// segment contributes below tolerance or when successive contributions
/// shrink at a stable geometric ratio r < 1, in which case the remainder is
/// closed with the geometric extension c r / (1 - r). Contributions that do
/// not shrink past `x_pass` mean the integral diverges.
template <class F>
IntegralEstimate integrate_decreasing(const F& g, double from, double right, double first_width,
                                      double x_pass, const Tolerances& tol) {
  const double seg_tol = std::max(tol.rel_tol * 1e-2, 1e-14);
  if (std::isfinite(right)) {
    if (!(right > from)) return {};
    return detail::tanh_sinh_segment(g, from, right, seg_tol);
  }

  double width = (std::isfinite(first_width) && first_width > 0.0) ? first_width : 1.0;
  double a = from;
  double sum = 0.0;
  double err = 0.0;
  double c_prev = -1.0;
  double c_prev2 = -1.0;
  int non_shrinking = 0;
  constexpr int kMaxSegments = 900;
  for (int j = 0; j < kMaxSegments; ++j) {
    double b = a + width;
    IntegralEstimate seg = detail::tanh_sinh_segment(g, a, b, seg_tol);
    if (!std::isfinite(seg.value)) {
      throw DivergentEntropy("survival-power integrand is not finite on [" + std::to_string(a) +
                             ", " + std::to_string(b) + "]");
    }
    sum += seg.value;
    err += seg.abs_error;
    const double c = seg.value;
    const double target = tol.abs_tol + tol.rel_tol * std::abs(sum);

    if (b >= x_pass) {
      if (c <= 1e-3 * target) return {sum, err + c};
      if (c_prev > 0.0 && c_prev2 > 0.0) {
        double r = c / c_prev;
        double r_prev = c_prev / c_prev2;
        if (r >= 1.0) {
          if (++non_shrinking >= 8) {
            throw DivergentEntropy("tail mass is not shrinking under successive doublings");
          }
        } else {
          non_shrinking = 0;
          if (r_prev < 1.0) {
            double ext = c * r / (1.0 - r);
            double ext_alt = c * r_prev / (1.0 - r_prev);
            double ext_err = std::abs(ext - ext_alt);
            if (ext_err <= 0.1 * target) return {sum + ext, err + ext_err};
          }
        }
      }
    }
    c_prev2 = c_prev;
    c_prev = c;
    a = b;
    width *= 2.0;
  }
  throw DivergentEntropy("tail of the survival-power integral did not converge after " +
                         std::to_string(kMaxSegments) + " doublings");
}

}  // namespace crmhe
