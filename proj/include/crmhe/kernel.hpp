#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crmhe/entropy.hpp"
#include "crmhe/errors.hpp"
#include "crmhe/quadrature.hpp"

namespace crmhe {

enum class Kernel { gaussian, epanechnikov };

inline const char* kernel_name(Kernel k) {
  return k == Kernel::gaussian ? "gaussian" : "epanechnikov";
}

struct KernelEstimatorConfig {
  Kernel kernel = Kernel::gaussian;
  // Silverman's rule when empty.
  std::optional<double> fixed_bandwidth;
  // Number of Simpson intervals on the integration range (even, >= 64).
  int grid_points = 2048;
  // The range ends this many bandwidths past the largest observation.
  double upper_pad_bandwidths = 8.0;
  // Use adaptive quadrature instead of the fixed Simpson grid.
  bool adaptive = false;

  void validate() const {
    if (grid_points < 64 || grid_points % 2 != 0) {
      throw DomainError("grid_points must be an even number >= 64");
    }
    if (fixed_bandwidth && !(*fixed_bandwidth > 0.0 && std::isfinite(*fixed_bandwidth))) {
      throw DomainError("bandwidth must be positive");
    }
    if (!(upper_pad_bandwidths >= 1.0)) throw DomainError("upper_pad_bandwidths must be >= 1");
  }
};

/// 1.06 * sd * n^(-1/5), sd with denominator n - 1.
inline double silverman_bandwidth(std::span<const double> sample) {
  if (sample.size() < 2) throw DomainError("bandwidth needs at least two observations");
  const double n = static_cast<double>(sample.size());
  double mean = 0.0;
  for (double x : sample) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : sample) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0)) throw DegenerateSample("all observations are equal; bandwidth is zero");
  return 1.06 * sd * std::pow(n, -0.2);
}

/// Survival function of the unit kernel, int_z^inf k(u) du.
inline double kernel_tail(Kernel k, double z) {
  if (k == Kernel::gaussian) return 0.5 * std::erfc(z / std::numbers::sqrt2);
  if (z <= -1.0) return 1.0;
  if (z >= 1.0) return 0.0;
  return 0.5 - 0.75 * z + 0.25 * z * z * z;
}

/// Kernel-smoothed survival function (1/n) sum_j Kbar((x - X_j)/h).
class EmpiricalSurvival {
 public:
  EmpiricalSurvival(std::vector<double> sample, double bandwidth, Kernel kernel)
      : sample_(std::move(sample)), bandwidth_(bandwidth), kernel_(kernel) {
    if (sample_.size() < 2) throw DomainError("kernel survival needs at least two observations");
    if (!(bandwidth_ > 0.0 && std::isfinite(bandwidth_))) throw DomainError("bandwidth must be positive");
    for (double x : sample_) {
      if (!std::isfinite(x)) throw DomainError("sample contains a non-finite value");
    }
    std::sort(sample_.begin(), sample_.end());
    // Beyond these reaches a term is exactly 1 (left) or exactly 0 (right).
    if (kernel_ == Kernel::gaussian) {
      saturate_ = 8.5;
      vanish_ = 40.0;
    } else {
      saturate_ = 1.0;
      vanish_ = 1.0;
    }
  }

  static EmpiricalSurvival fit(std::span<const double> sample, const KernelEstimatorConfig& config) {
    config.validate();
    double h = config.fixed_bandwidth ? *config.fixed_bandwidth : silverman_bandwidth(sample);
    return EmpiricalSurvival(std::vector<double>(sample.begin(), sample.end()), h, config.kernel);
  }

  double operator()(double x) const {
    auto lo = std::lower_bound(sample_.begin(), sample_.end(), x - vanish_ * bandwidth_);
    auto hi = std::upper_bound(lo, sample_.end(), x + saturate_ * bandwidth_);
    double sum = 0.0;
    for (auto it = lo; it != hi; ++it) sum += kernel_tail(kernel_, (x - *it) / bandwidth_);
    sum += static_cast<double>(sample_.end() - hi);
    return sum / static_cast<double>(sample_.size());
  }

  std::span<const double> sample() const { return sample_; }
  double bandwidth() const { return bandwidth_; }
  Kernel kernel() const { return kernel_; }
  double min() const { return sample_.front(); }
  double max() const { return sample_.back(); }

 private:
  std::vector<double> sample_;
  double bandwidth_;
  Kernel kernel_;
  double saturate_ = 8.5;
  double vanish_ = 40.0;
};

struct KernelEstimate {
  EntropyValue entropy;
  double bandwidth = 0.0;
  double range_lower = 0.0;  // start of the numerically integrated range
  double range_upper = 0.0;
  int grid_points = 0;
  double tail_bound = 0.0;  // bound on the neglected integral past range_upper
};

namespace detail {

// Upper bound of int_{c}^{inf} Kbar(z)^p dz for the Gaussian kernel, using
// Kbar(z) <= phi(z)/z and z^2 - c^2 >= 2c(z - c).
inline double gaussian_tail_power_bound(double c, double p) {
  const double phi = std::exp(-0.5 * c * c) / std::sqrt(2.0 * std::numbers::pi);
  return std::pow(phi / c, p) / (c * p);
}

inline KernelEstimate kernel_power_integral(const EmpiricalSurvival& s, double from, double norm,
                                            double power, const KernelEstimatorConfig& config) {
  const double h = s.bandwidth();
  const double pad = config.upper_pad_bandwidths;
  KernelEstimate out;
  out.bandwidth = h;
  out.grid_points = config.grid_points;
  out.range_upper = s.max() + pad * h;
  if (!(from < out.range_upper)) {
    throw TruncationBeyondSupport("truncation time lies beyond the smoothed data range");
  }
  out.range_lower = std::max(from, s.min() - pad * h);

  auto f = [&](double x) { return std::pow(std::min(s(x) / norm, 1.0), power); };

  // [from, range_lower): every term is within Kbar(-pad) of 1.
  double flat = out.range_lower - from;
  double flat_err = flat * std::abs(1.0 - f(out.range_lower));

  double value = 0.0;
  double err = 0.0;
  if (config.adaptive) {
    Tolerances tol;
    IntegralEstimate r = integrate_decreasing(f, out.range_lower, out.range_upper, 1.0,
                                              out.range_upper, tol);
    value = r.value;
    err = r.abs_error;
  } else {
    const int n = config.grid_points;
    const double step = (out.range_upper - out.range_lower) / n;
    std::vector<double> y(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) y[static_cast<std::size_t>(i)] = f(out.range_lower + i * step);
    auto simpson = [&](int stride) {
      double odd = 0.0, even = 0.0;
      for (int i = stride; i < n; i += 2 * stride) odd += y[static_cast<std::size_t>(i)];
      for (int i = 2 * stride; i < n; i += 2 * stride) even += y[static_cast<std::size_t>(i)];
      return (y.front() + y.back() + 4.0 * odd + 2.0 * even) * step * stride / 3.0;
    };
    value = simpson(1);
    // Half-resolution difference; conservative for the full-resolution rule.
    err = (n % 4 == 0) ? std::abs(value - simpson(2)) : 0.0;
  }

  if (s.kernel() == Kernel::gaussian) {
    out.tail_bound = h * gaussian_tail_power_bound(pad, power) / std::pow(norm, power);
  }
  out.entropy.value = flat + value;
  out.entropy.estimated_abs_error = flat_err + err + out.tail_bound;
  out.entropy.method = Method::quadrature;
  return out;
}

inline KernelEstimate finish(KernelEstimate k, double alpha) {
  k.entropy.value = (k.entropy.value - 1.0) / (alpha - 1.0);
  k.entropy.estimated_abs_error /= std::abs(alpha - 1.0);
  return k;
}

}  // namespace detail

/// Plug-in estimate of the static measure: the kernel survival raised to
/// 2 - alpha, integrated from 0. No boundary correction is applied, so mass
/// the kernel leaks below 0 is simply not counted.
inline KernelEstimate estimate_crmhe(const EmpiricalSurvival& s, double alpha,
                                     const KernelEstimatorConfig& config = {}) {
  validate_alpha(alpha);
  config.validate();
  return detail::finish(detail::kernel_power_integral(s, 0.0, 1.0, 2.0 - alpha, config), alpha);
}

inline KernelEstimate estimate_crmhe(std::span<const double> sample, double alpha,
                                     const KernelEstimatorConfig& config = {}) {
  return estimate_crmhe(EmpiricalSurvival::fit(sample, config), alpha, config);
}

inline constexpr double kSurvivalDenominatorFloor = 1e-8;

/// Plug-in estimate of the dynamic measure at t, with the kernel survival
/// normalised by its value at t.
inline KernelEstimate estimate_dcrmhe(const EmpiricalSurvival& s, double alpha, double t,
                                      const KernelEstimatorConfig& config = {}) {
  validate_alpha(alpha);
  config.validate();
  if (!(std::isfinite(t) && t >= 0.0)) throw DomainError("t must be a finite non-negative number");
  const double norm = s(t);
  if (norm < kSurvivalDenominatorFloor) {
    throw TruncationBeyondSupport("kernel survival at t = " + std::to_string(t) +
                                  " is below 1e-8; t lies beyond the data");
  }
  return detail::finish(detail::kernel_power_integral(s, t, norm, 2.0 - alpha, config), alpha);
}

inline KernelEstimate estimate_dcrmhe(std::span<const double> sample, double alpha, double t,
                                      const KernelEstimatorConfig& config = {}) {
  return estimate_dcrmhe(EmpiricalSurvival::fit(sample, config), alpha, t, config);
}

}  // namespace crmhe
