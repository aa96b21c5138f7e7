#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crmhe/distributions.hpp"
#include "crmhe/entropy.hpp"
#include "crmhe/kernel.hpp"

namespace crmhe {

/// t_from, t_from + step, ... up to t_to (inclusive, with a 1e-9 step slack).
/// Points are computed as t_from + i*step, not by accumulation.
inline std::vector<double> t_range(double t_from, double t_to, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("step must be positive");
  if (!std::isfinite(t_from) || !std::isfinite(t_to) || t_from < 0.0 || t_to < t_from) {
    throw DomainError("t range must satisfy 0 <= from <= to");
  }
  const double count = std::floor((t_to - t_from) / step + 1e-9);
  if (count > 1e6) throw DomainError("t range has more than a million points");
  std::vector<double> out;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(count); ++i) {
    out.push_back(t_from + static_cast<double>(i) * step);
  }
  return out;
}

struct CurvePoint {
  double t = 0.0;
  double theoretical = std::numeric_limits<double>::quiet_NaN();
  double estimate = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

/// Dynamic measure along a t grid, from a model, a sample, or both.
inline std::vector<CurvePoint> dcrmhe_curve(const std::optional<Distribution>& dist,
                                            std::span<const double> sample, double alpha,
                                            std::span<const double> t_grid,
                                            const KernelEstimatorConfig& config = {}) {
  validate_alpha(alpha);
  std::optional<EmpiricalSurvival> s;
  if (!sample.empty()) s.emplace(EmpiricalSurvival::fit(sample, config));
  std::vector<CurvePoint> out;
  for (double t : t_grid) {
    CurvePoint p;
    p.t = t;
    try {
      if (dist) p.theoretical = dcrmhe(*dist, alpha, t).value;
      if (s) p.estimate = estimate_dcrmhe(*s, alpha, t, config).entropy.value;
    } catch (const TruncationBeyondSupport& e) {
      p.error = e.what();
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace crmhe
