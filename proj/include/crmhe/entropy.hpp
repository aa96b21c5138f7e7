#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "crmhe/distributions.hpp"
#include "crmhe/errors.hpp"
#include "crmhe/quadrature.hpp"

namespace crmhe {

// Where the static integral starts. `zero` integrates over [0, inf) with the
// survival equal to 1 left of the support, which is the definition for a
// non-negative lifetime. `support_left` starts at the left end of the
// support; under it the shift-invariant affine relation holds for every
// shift and the pareto1 value is k / (a(2 - alpha) - 1).
enum class Origin { zero, support_left };

enum class Method { closed_form, quadrature };

inline const char* method_name(Method m) {
  return m == Method::closed_form ? "closed_form" : "quadrature";
}

struct EntropyQuery {
  double alpha = 1.5;
  double t = 0.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double tail_survival_cutoff = 1e-12;
  Origin origin = Origin::zero;

  Tolerances tolerances() const { return {rel_tol, abs_tol, tail_survival_cutoff}; }
};

struct EntropyValue {
  double value = 0.0;
  Method method = Method::closed_form;
  double estimated_abs_error = 0.0;
};

inline void validate_alpha(double alpha) {
  if (!(std::isfinite(alpha) && alpha > 0.0 && alpha < 2.0 && alpha != 1.0)) {
    throw DomainError("alpha must lie in (0,2) excluding 1");
  }
}

inline void validate_truncation(const Distribution& dist, double t) {
  if (!(std::isfinite(t) && t >= 0.0)) throw DomainError("t must be a finite non-negative number");
  if (t >= dist.support_right()) {
    throw DomainError("survival is zero at t = " + std::to_string(t) + " for " + dist.describe());
  }
}

/// Throws DivergentEntropy when the integral of survival^power over an
/// unbounded support diverges. The message names the violated condition.
inline void check_integrability(const Distribution& dist, double power) {
  auto fail = [&](const std::string& condition, double value) {
    std::ostringstream os;
    os << "divergent entropy integral for " << dist.describe() << ": " << condition << " = "
       << value << " must be positive";
    throw DivergentEntropy(os.str());
  };
  std::visit(detail::overloaded{
      [&](const family::ParetoI& d) {
        double m = d.shape * power - 1.0;
        if (!(m > 0.0)) fail("a(2-alpha)-1", m);
      },
      [&](const family::ParetoII& d) {
        double m = d.shape * power - 1.0;
        if (!(m > 0.0)) fail("b(2-alpha)-1", m);
      },
      [&](const family::Gpd& d) {
        double m = power * (1.0 + d.shape) - d.shape;
        if (!(m > 0.0)) fail("(2-alpha)(1+a)-a", m);
      },
      [](const auto&) {}}, dist.params());
}

/// Closed form of  integral_{lower}^{inf} (S(x)/S(t))^power dx  where lower is
/// t (Origin::zero) or max(t, support_left) (Origin::support_left).
/// Returns nullopt when the special-function evaluation is not representable.
inline std::optional<double> survival_power_integral_closed(const Distribution& dist, double power,
                                                            double t, Origin origin) {
  check_integrability(dist, power);
  validate_truncation(dist, t);
  const double left = dist.support_left();
  const double lead = origin == Origin::zero ? std::max(left - t, 0.0) : 0.0;
  const double from = std::max(t, left);
  std::optional<double> body = std::visit(detail::overloaded{
      [&](const family::Uniform& d) -> std::optional<double> {
        return (d.high - from) / (power + 1.0);
      },
      [&](const family::Exponential& d) -> std::optional<double> {
        return 1.0 / (d.rate * power);
      },
      [&](const family::ParetoI& d) -> std::optional<double> {
        return from / (d.shape * power - 1.0);
      },
      [&](const family::ParetoII& d) -> std::optional<double> {
        return (d.scale + from) / (d.shape * power - 1.0);
      },
      [&](const family::Gpd& d) -> std::optional<double> {
        return (d.scale + d.shape * from) / (power * (1.0 + d.shape) - d.shape);
      },
      [&](const family::Weibull& d) -> std::optional<double> {
        double c = power * std::pow(from / d.scale, d.shape);
        double v = d.scale * std::pow(power, -1.0 / d.shape) / d.shape *
                   detail::scaled_upper_gamma(1.0 / d.shape, c);
        if (!std::isfinite(v)) return std::nullopt;
        return v;
      }}, dist.params());
  if (!body) return std::nullopt;
  return lead + *body;
}

/// Same integral by numerical quadrature. Only the survival function (in log
/// form) and the quantile are consulted, never the closed forms.
inline IntegralEstimate survival_power_integral_quadrature(const Distribution& dist, double power,
                                                           double t, Origin origin,
                                                           const Tolerances& tol) {
  check_integrability(dist, power);
  validate_truncation(dist, t);
  const double left = dist.support_left();
  const double lead = origin == Origin::zero ? std::max(left - t, 0.0) : 0.0;
  const double from = std::max(t, left);
  const double log_ref = dist.log_survival(from);
  auto g = [&](double x) {
    double ls = dist.log_survival(x) - log_ref;
    return ls == -kInf ? 0.0 : std::exp(power * std::min(ls, 0.0));
  };
  const double s_ref = std::exp(log_ref);
  double width = 1.0;
  double x_pass = from;
  if (!dist.bounded()) {
    width = dist.upper_quantile(0.5 * s_ref) - from;
    double level = std::max(tol.tail_survival_cutoff * s_ref, 1e-300);
    x_pass = dist.upper_quantile(level);
  }
  IntegralEstimate body = integrate_decreasing(g, from, dist.support_right(), width, x_pass, tol);
  body.value += lead;
  return body;
}

namespace detail {

inline EntropyValue from_integral(double integral, double error, double alpha, Method m) {
  return {(integral - 1.0) / (alpha - 1.0), m, error / std::abs(alpha - 1.0)};
}

}  // namespace detail

/// Static measure from the closed forms (all six families; Weibull via Gamma).
inline EntropyValue crmhe_closed_form(const Distribution& dist, double alpha,
                                      Origin origin = Origin::zero) {
  validate_alpha(alpha);
  auto integral = survival_power_integral_closed(dist, 2.0 - alpha, 0.0, origin);
  if (!integral) throw DomainError("closed form not representable for " + dist.describe());
  return detail::from_integral(*integral, 0.0, alpha, Method::closed_form);
}

inline EntropyValue crmhe_quadrature(const Distribution& dist, const EntropyQuery& q) {
  validate_alpha(q.alpha);
  IntegralEstimate r =
      survival_power_integral_quadrature(dist, 2.0 - q.alpha, 0.0, q.origin, q.tolerances());
  return detail::from_integral(r.value, r.abs_error, q.alpha, Method::quadrature);
}

/// Dynamic measure at truncation time q.t by quadrature.
inline EntropyValue dcrmhe_quadrature(const Distribution& dist, const EntropyQuery& q) {
  validate_alpha(q.alpha);
  IntegralEstimate r =
      survival_power_integral_quadrature(dist, 2.0 - q.alpha, q.t, q.origin, q.tolerances());
  return detail::from_integral(r.value, r.abs_error, q.alpha, Method::quadrature);
}

inline EntropyValue dcrmhe_closed_form(const Distribution& dist, double alpha, double t,
                                       Origin origin = Origin::zero) {
  validate_alpha(alpha);
  auto integral = survival_power_integral_closed(dist, 2.0 - alpha, t, origin);
  if (!integral) throw DomainError("closed form not representable for " + dist.describe());
  return detail::from_integral(*integral, 0.0, alpha, Method::closed_form);
}

/// Dynamic measure; the closed form when it is representable, quadrature
/// otherwise. dcrmhe(dist, {alpha, 0}) is the static measure.
inline EntropyValue dcrmhe(const Distribution& dist, const EntropyQuery& q) {
  validate_alpha(q.alpha);
  auto integral = survival_power_integral_closed(dist, 2.0 - q.alpha, q.t, q.origin);
  if (integral) return detail::from_integral(*integral, 0.0, q.alpha, Method::closed_form);
  return dcrmhe_quadrature(dist, q);
}

inline EntropyValue dcrmhe(const Distribution& dist, double alpha, double t) {
  EntropyQuery q;
  q.alpha = alpha;
  q.t = t;
  return dcrmhe(dist, q);
}

inline EntropyValue crmhe(const Distribution& dist, double alpha) { return dcrmhe(dist, alpha, 0.0); }

/// (alpha-1) CRM'(t) - {(2-alpha) h(t) [(alpha-1) CRM(t) + 1] - 1}, with the
/// derivative by central differences. Zero up to discretisation error for any
/// law. fd_step <= 0 selects max(1e-5, 1e-4 t).
inline double hazard_relation_residual(const Distribution& dist, double alpha, double t,
                                       double fd_step = 0.0) {
  validate_alpha(alpha);
  const double step = fd_step > 0.0 ? fd_step : std::max(1e-5, 1e-4 * t);
  const double left = dist.support_left();
  if (t - step < 0.0 || t + step >= dist.support_right() ||
      (left > 0.0 && std::abs(t - left) <= step)) {
    throw DomainError("t is within the finite-difference step of a support boundary");
  }
  const double up = dcrmhe(dist, alpha, t + step).value;
  const double down = dcrmhe(dist, alpha, t - step).value;
  const double centre = dcrmhe(dist, alpha, t).value;
  const double derivative = (up - down) / (2.0 * step);
  const double rhs = (2.0 - alpha) * dist.hazard(t) * ((alpha - 1.0) * centre + 1.0) - 1.0;
  return (alpha - 1.0) * derivative - rhs;
}

/// a * base + (a - 1)/(alpha - 1): the value for Y = aX + b given the value
/// for X. For the dynamic form pass the value of X at (t - b)/a with t >= b.
/// The static relation ignores the shift b, so with Origin::zero it is exact
/// only for b = 0; with Origin::support_left it is exact for every b >= 0.
inline double affine_transform_value(const EntropyValue& base, double a, double b, double alpha) {
  validate_alpha(alpha);
  if (!(a > 0.0) || !(b >= 0.0)) throw DomainError("affine transform requires a > 0 and b >= 0");
  return a * base.value + (a - 1.0) / (alpha - 1.0);
}

struct PhTransformResult {
  double beta = 0.0;
  bool beta_in_range = false;         // beta in (0,2)\{1}
  std::optional<double> via_identity;  // (beta-1)/(alpha-1) * CRM_beta(X)
  double direct = 0.0;                // quadrature on S(x)^theta
  double direct_error = 0.0;
  double discrepancy() const { return via_identity ? std::abs(*via_identity - direct) : 0.0; }
};

/// Static measure of the proportional-hazards law with survival S^theta,
/// evaluated through the order-beta identity and by direct quadrature.
/// theta = n gives the minimum of n i.i.d. lifetimes (series system).
inline PhTransformResult ph_transform_value(const Distribution& dist, double alpha, double theta,
                                            const Tolerances& tol = {}) {
  validate_alpha(alpha);
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("theta must be positive");
  PhTransformResult out;
  out.beta = 2.0 - theta * (2.0 - alpha);
  out.beta_in_range = out.beta > 0.0 && out.beta < 2.0 && out.beta != 1.0;

  IntegralEstimate direct =
      survival_power_integral_quadrature(dist, theta * (2.0 - alpha), 0.0, Origin::zero, tol);
  out.direct = (direct.value - 1.0) / (alpha - 1.0);
  out.direct_error = direct.abs_error / std::abs(alpha - 1.0);

  if (out.beta_in_range) {
    double crm_beta = dcrmhe(dist, out.beta, 0.0).value;
    out.via_identity = (out.beta - 1.0) / (alpha - 1.0) * crm_beta;
  }
  return out;
}

}  // namespace crmhe
