#pragma once

// Executable forms of the structural results for the dynamic measure:
// monotone classes, the hazard-rate ordering, the survival bound implied by a
// monotone class, and the GPD characterizations through hazard and mean
// residual life.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "crmhe/distributions.hpp"
#include "crmhe/entropy.hpp"

namespace crmhe {

struct MeanBoundVerdict {
  double crm = 0.0;
  double mean = 0.0;
  double bound = 0.0;  // (mean - 1)/(alpha - 1)
  double gap = 0.0;    // crm - bound
  // Literal reading: crm > bound for alpha < 1 and crm < bound for alpha > 1.
  bool stated_direction_holds = false;
  // What the sweep actually shows: the integral of S^(2-alpha) sits on the
  // same side of the mean as (alpha-1), so crm >= bound in both regimes.
  bool crm_at_or_above_bound = false;
};

inline MeanBoundVerdict mean_bound_check(const Distribution& dist, double alpha) {
  validate_alpha(alpha);
  MeanBoundVerdict v;
  v.mean = dist.mean();
  v.crm = crmhe(dist, alpha).value;
  v.bound = (v.mean - 1.0) / (alpha - 1.0);
  v.gap = v.crm - v.bound;
  v.stated_direction_holds = alpha < 1.0 ? v.gap > 0.0 : v.gap < 0.0;
  v.crm_at_or_above_bound = v.gap >= -1e-12 * std::max(1.0, std::abs(v.bound));
  return v;
}

enum class Monotonicity { increasing, decreasing, constant, mixed };

inline const char* monotonicity_name(Monotonicity m) {
  switch (m) {
    case Monotonicity::increasing: return "IDCRMHE";
    case Monotonicity::decreasing: return "DDCRMHE";
    case Monotonicity::constant: return "constant";
    case Monotonicity::mixed: return "mixed";
  }
  return "?";
}

struct MonotonicityReport {
  Monotonicity cls = Monotonicity::mixed;
  std::vector<double> values;
  // Pointwise check of h(t) against 1/((2-alpha)[(alpha-1)CRM(t)+1]). The
  // sign of CRM'(t) equals the sign of (alpha-1)(h - bound), so an increasing
  // class has h >= bound for alpha > 1 and h <= bound for alpha < 1.
  std::size_t hazard_bound_violations = 0;
  // Number of grid points where the unqualified form "increasing iff
  // h >= bound" disagrees with the observed class.
  std::size_t literal_direction_violations = 0;
};

namespace detail {

inline void validate_grid(const Distribution& dist, std::span<const double> grid) {
  if (grid.size() < 2) throw DomainError("t grid needs at least two points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    validate_truncation(dist, grid[i]);
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("t grid must be strictly increasing");
  }
}

inline double hazard_bound(double alpha, double crm) {
  return 1.0 / ((2.0 - alpha) * ((alpha - 1.0) * crm + 1.0));
}

}  // namespace detail

inline MonotonicityReport classify_monotonicity(const Distribution& dist, double alpha,
                                                std::span<const double> t_grid) {
  validate_alpha(alpha);
  detail::validate_grid(dist, t_grid);
  MonotonicityReport r;
  for (double t : t_grid) r.values.push_back(dcrmhe(dist, alpha, t).value);

  double scale = 1.0;
  for (double v : r.values) scale = std::max(scale, std::abs(v));
  const double tol = 1e-9 * scale;
  bool up = true, down = true, flat = true;
  for (std::size_t i = 1; i < r.values.size(); ++i) {
    double d = r.values[i] - r.values[i - 1];
    if (d < -tol) up = false;
    if (d > tol) down = false;
    if (std::abs(d) > tol) flat = false;
  }
  r.cls = flat ? Monotonicity::constant
               : up ? Monotonicity::increasing
                    : down ? Monotonicity::decreasing : Monotonicity::mixed;

  if (r.cls == Monotonicity::increasing || r.cls == Monotonicity::decreasing) {
    const double sign = r.cls == Monotonicity::increasing ? 1.0 : -1.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      double h = dist.hazard(t_grid[i]);
      double bound = detail::hazard_bound(alpha, r.values[i]);
      double rel = (h - bound) / std::max(1.0, std::abs(bound));
      if (sign * (alpha - 1.0) * rel < -1e-9) ++r.hazard_bound_violations;
      if (sign * rel < -1e-9) ++r.literal_direction_violations;
    }
  }
  return r;
}

enum class Verdict { holds, violated, not_applicable };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "?";
}

struct HazardOrderReport {
  Verdict verdict = Verdict::not_applicable;
  double min_margin = 0.0;  // min over grid of the signed entropy gap
  std::vector<double> crm_x;
  std::vector<double> crm_y;
};

/// If h_X <= h_Y on the grid, checks CRM_X(t) >= CRM_Y(t) for alpha in (1,2)
/// and <= for alpha in (0,1).
inline HazardOrderReport hazard_order_entropy_check(const Distribution& x, const Distribution& y,
                                                    double alpha, std::span<const double> t_grid) {
  validate_alpha(alpha);
  HazardOrderReport r;
  for (double t : t_grid) {
    if (x.hazard(t) > y.hazard(t) * (1.0 + 1e-12)) return r;
  }
  const double sign = alpha > 1.0 ? 1.0 : -1.0;
  r.min_margin = kInf;
  for (double t : t_grid) {
    double cx = dcrmhe(x, alpha, t).value;
    double cy = dcrmhe(y, alpha, t).value;
    r.crm_x.push_back(cx);
    r.crm_y.push_back(cy);
    r.min_margin = std::min(r.min_margin, sign * (cx - cy));
  }
  r.verdict = r.min_margin >= -1e-10 ? Verdict::holds : Verdict::violated;
  return r;
}

struct SurvivalBoundReport {
  double survival = 0.0;
  double bound = 0.0;  // exp(-int_0^t 1/((2-alpha)[(alpha-1)CRM(x)+1]) dx)
  // true when the class implies survival >= bound: decreasing with
  // alpha > 1 or increasing with alpha < 1. A constant class gives equality.
  bool expects_survival_above = true;
  Verdict verdict = Verdict::not_applicable;
};

inline SurvivalBoundReport survival_bound(const Distribution& dist, double alpha, double t,
                                          Monotonicity cls) {
  validate_alpha(alpha);
  validate_truncation(dist, t);
  SurvivalBoundReport r;
  r.survival = dist.survival(t);
  auto integrand = [&](double x) { return detail::hazard_bound(alpha, dcrmhe(dist, alpha, x).value); };
  double exponent = 0.0;
  if (t > 0.0) {
    exponent = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, t, 12, 1e-12);
  }
  r.bound = std::exp(-exponent);
  if (cls == Monotonicity::mixed) return r;

  const double tol = 1e-9;
  if (cls == Monotonicity::constant) {
    r.verdict = std::abs(r.survival - r.bound) <= tol ? Verdict::holds : Verdict::violated;
    return r;
  }
  r.expects_survival_above = (cls == Monotonicity::decreasing) == (alpha > 1.0);
  bool ok = r.expects_survival_above ? r.survival >= r.bound - tol : r.survival <= r.bound + tol;
  r.verdict = ok ? Verdict::holds : Verdict::violated;
  return r;
}

struct GpdResiduals {
  double linearity = 0.0;       // max deviation of CRM(t) from its least-squares line
  double hazard_relation = 0.0;  // max |CRM(t) - (k/h(t) - 1/(alpha-1))|
  double mrl_relation = 0.0;     // max |CRM(t) - (k' m(t) - 1/(alpha-1))|
  double slope = 0.0;
  double intercept = 0.0;
  double k_hazard = 0.0;
  double k_mrl = 0.0;
  bool constants_fitted = false;  // false: analytic GPD constants were used
};

namespace detail {

struct LineFit {
  double slope;
  double intercept;
  double max_residual;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  double intercept = my - slope * mx;
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::abs(y[i] - (slope * x[i] + intercept)));
  }
  return {slope, intercept, worst};
}

// Least-squares k for y = k * x through the origin.
inline double fit_proportional(std::span<const double> x, std::span<const double> y) {
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace detail

/// Residuals of the three GPD characterizations (linear in t, k/h - c,
/// k' m - c). For a GPD the constants are the analytic ones; for any other
/// law they are least-squares fits, so the residuals measure how far the law
/// is from satisfying the relation.
inline GpdResiduals gpd_characterization_residuals(const Distribution& dist, double alpha,
                                                   std::span<const double> t_grid) {
  validate_alpha(alpha);
  detail::validate_grid(dist, t_grid);
  const double c = 1.0 / (alpha - 1.0);
  GpdResiduals r;
  std::vector<double> crm, inv_h, mrl, shifted;
  for (double t : t_grid) {
    double v = dcrmhe(dist, alpha, t).value;
    crm.push_back(v);
    shifted.push_back(v + c);
    inv_h.push_back(1.0 / dist.hazard(t));
    mrl.push_back(dist.mean_residual_life(t));
  }
  auto line = detail::fit_line(t_grid, crm);
  r.linearity = line.max_residual;
  r.slope = line.slope;
  r.intercept = line.intercept;

  if (const auto* g = std::get_if<family::Gpd>(&dist.params())) {
    double denom = (g->shape + 1.0) * (2.0 - alpha) - g->shape;
    if (!(denom > 0.0)) {
      throw DivergentEntropy("divergent entropy integral: (2-alpha)(1+a)-a must be positive");
    }
    r.k_hazard = (g->shape + 1.0) / ((alpha - 1.0) * denom);
    r.k_mrl = 1.0 / ((alpha - 1.0) * denom);
  } else {
    r.k_hazard = detail::fit_proportional(inv_h, shifted);
    r.k_mrl = detail::fit_proportional(mrl, shifted);
    r.constants_fitted = true;
  }
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    r.hazard_relation = std::max(r.hazard_relation, std::abs(crm[i] - (r.k_hazard * inv_h[i] - c)));
    r.mrl_relation = std::max(r.mrl_relation, std::abs(crm[i] - (r.k_mrl * mrl[i] - c)));
  }
  return r;
}

/// Largest pointwise gap between the dynamic curves of two laws. A positive
/// value means the curves tell the laws apart on this grid.
inline double dcrmhe_curve_separation(const Distribution& x, const Distribution& y, double alpha,
                                      std::span<const double> t_grid) {
  double worst = 0.0;
  for (double t : t_grid) {
    worst = std::max(worst, std::abs(dcrmhe(x, alpha, t).value - dcrmhe(y, alpha, t).value));
  }
  return worst;
}

}  // namespace crmhe
