#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "crmhe/errors.hpp"
#include "crmhe/rng.hpp"

namespace crmhe {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace family {

// Uniform on [low, high], 0 <= low < high.
struct Uniform {
  double low;
  double high;
};

// Exponential with survival exp(-rate x).
struct Exponential {
  double rate;
};

// Pareto type I: survival (scale/x)^shape for x >= scale.
struct ParetoI {
  double scale;
  double shape;
};

// Pareto type II (Lomax): survival (1 + x/scale)^(-shape).
struct ParetoII {
  double scale;
  double shape;
};

// Generalized Pareto in the (shape a, scale b) form with survival
// (1 + a x / b)^-(1 + 1/a). Mean is b, mean residual life b + a t.
// shape == 0 is the exponential limit with mean b.
struct Gpd {
  double shape;
  double scale;
};

// Weibull with survival exp(-(x/scale)^shape).
struct Weibull {
  double shape;
  double scale;
};

}  // namespace family

enum class Family { uniform, exponential, pareto_i, pareto_ii, gpd, weibull };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::uniform: return "uniform";
    case Family::exponential: return "exp";
    case Family::pareto_i: return "pareto1";
    case Family::pareto_ii: return "pareto2";
    case Family::gpd: return "gpd";
    case Family::weibull: return "weibull";
  }
  return "?";
}

namespace detail {

// Shortest decimal text that reads back to the same double.
inline std::string shortest(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}


template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

inline bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

// exp(c) * Gamma(s, c), the non-normalized upper incomplete gamma scaled so
// that it stays representable for large c.
inline double scaled_upper_gamma(double s, double c) {
  if (c < 600.0) {
    return std::exp(c) * boost::math::tgamma(s) * boost::math::gamma_q(s, c);
  }
  // Asymptotic expansion c^(s-1) * sum_j (s-1)(s-2)...(s-j) / c^j.
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < 12; ++j) {
    term *= (s - j) / c;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::pow(c, s - 1.0) * sum;
}

}  // namespace detail

/// A parametric lifetime law. Immutable after construction; every
/// constructor validates its parameters and throws DomainError otherwise.
class Distribution {
 public:
  using Params = std::variant<family::Uniform, family::Exponential, family::ParetoI,
                              family::ParetoII, family::Gpd, family::Weibull>;

  static Distribution uniform(double low, double high) {
    detail::require(std::isfinite(low) && std::isfinite(high) && low >= 0.0 && low < high,
                    "uniform requires 0 <= low < high");
    return Distribution(family::Uniform{low, high});
  }
  static Distribution exponential(double rate) {
    detail::require(detail::finite_positive(rate), "exponential rate must be positive");
    return Distribution(family::Exponential{rate});
  }
  static Distribution pareto_i(double scale, double shape) {
    detail::require(detail::finite_positive(scale) && detail::finite_positive(shape),
                    "pareto1 requires scale k > 0 and shape a > 0");
    return Distribution(family::ParetoI{scale, shape});
  }
  static Distribution pareto_ii(double scale, double shape) {
    detail::require(detail::finite_positive(scale) && detail::finite_positive(shape),
                    "pareto2 requires scale a > 0 and shape b > 0");
    return Distribution(family::ParetoII{scale, shape});
  }
  static Distribution gpd(double shape, double scale) {
    detail::require(std::isfinite(shape) && shape > -1.0 && detail::finite_positive(scale),
                    "gpd requires shape a > -1 and scale b > 0");
    return Distribution(family::Gpd{shape, scale});
  }
  static Distribution weibull(double shape, double scale) {
    detail::require(detail::finite_positive(shape) && detail::finite_positive(scale),
                    "weibull requires shape k > 0 and scale lambda > 0");
    return Distribution(family::Weibull{shape, scale});
  }

  // Builds a distribution from a family tag ("uniform", "exp", "pareto1",
  // "pareto2", "gpd", "weibull") and positional parameters.
  static Distribution parse(std::string_view tag, std::span<const double> p) {
    auto need = [&](std::size_t count) {
      if (p.size() != count) {
        std::ostringstream os;
        os << tag << " takes " << count << " parameter" << (count == 1 ? "" : "s") << ", got "
           << p.size();
        throw DomainError(os.str());
      }
    };
    if (tag == "uniform") { need(2); return uniform(p[0], p[1]); }
    if (tag == "exp" || tag == "exponential") { need(1); return exponential(p[0]); }
    if (tag == "pareto1" || tag == "paretoI") { need(2); return pareto_i(p[0], p[1]); }
    if (tag == "pareto2" || tag == "paretoII" || tag == "lomax") { need(2); return pareto_ii(p[0], p[1]); }
    if (tag == "gpd") { need(2); return gpd(p[0], p[1]); }
    if (tag == "weibull") { need(2); return weibull(p[0], p[1]); }
    throw DomainError("unknown distribution family '" + std::string(tag) + "'");
  }

  const Params& params() const { return params_; }
  Family family() const { return static_cast<Family>(params_.index()); }

  std::vector<double> parameter_values() const {
    return std::visit(detail::overloaded{
        [](const family::Uniform& d) { return std::vector<double>{d.low, d.high}; },
        [](const family::Exponential& d) { return std::vector<double>{d.rate}; },
        [](const family::ParetoI& d) { return std::vector<double>{d.scale, d.shape}; },
        [](const family::ParetoII& d) { return std::vector<double>{d.scale, d.shape}; },
        [](const family::Gpd& d) { return std::vector<double>{d.shape, d.scale}; },
        [](const family::Weibull& d) { return std::vector<double>{d.shape, d.scale}; }},
        params_);
  }

  std::string describe() const {
    std::string out = std::string(family_name(family())) + '(';
    auto values = parameter_values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ',';
      out += detail::shortest(values[i]);
    }
    return out + ')';
  }

  double support_left() const {
    return std::visit(detail::overloaded{
        [](const family::Uniform& d) { return d.low; },
        [](const family::ParetoI& d) { return d.scale; },
        [](const auto&) { return 0.0; }}, params_);
  }

  double support_right() const {
    return std::visit(detail::overloaded{
        [](const family::Uniform& d) { return d.high; },
        [](const family::Gpd& d) { return d.shape < 0.0 ? -d.scale / d.shape : kInf; },
        [](const auto&) { return kInf; }}, params_);
  }

  bool bounded() const { return std::isfinite(support_right()); }

  /// log of the survival function; 0 left of the support, -inf right of it.
  double log_survival(double x) const {
    if (x <= support_left()) return 0.0;
    if (x >= support_right()) return -kInf;
    return std::visit(detail::overloaded{
        [x](const family::Uniform& d) { return std::log((d.high - x) / (d.high - d.low)); },
        [x](const family::Exponential& d) { return -d.rate * x; },
        [x](const family::ParetoI& d) { return d.shape * std::log(d.scale / x); },
        [x](const family::ParetoII& d) { return -d.shape * std::log1p(x / d.scale); },
        [x](const family::Gpd& d) {
          if (d.shape == 0.0) return -x / d.scale;
          return -(1.0 + 1.0 / d.shape) * std::log1p(d.shape * x / d.scale);
        },
        [x](const family::Weibull& d) { return -std::pow(x / d.scale, d.shape); }}, params_);
  }

  double survival(double x) const { return std::exp(log_survival(x)); }
  double cdf(double x) const { return -std::expm1(log_survival(x)); }

  double density(double x) const {
    if (x < support_left() || x >= support_right()) return 0.0;
    return std::visit(detail::overloaded{
        [](const family::Uniform& d) { return 1.0 / (d.high - d.low); },
        [x](const family::Exponential& d) { return d.rate * std::exp(-d.rate * x); },
        [x](const family::ParetoI& d) {
          return d.shape / x * std::pow(d.scale / x, d.shape);
        },
        [x](const family::ParetoII& d) {
          return d.shape / d.scale * std::pow(1.0 + x / d.scale, -d.shape - 1.0);
        },
        [x](const family::Gpd& d) {
          if (d.shape == 0.0) return std::exp(-x / d.scale) / d.scale;
          double q = 1.0 + 1.0 / d.shape;
          return (d.shape + 1.0) / d.scale * std::pow(1.0 + d.shape * x / d.scale, -q - 1.0);
        },
        [x](const family::Weibull& d) {
          double z = x / d.scale;
          if (x == 0.0) {
            if (d.shape < 1.0) return kInf;
            return d.shape == 1.0 ? 1.0 / d.scale : 0.0;
          }
          double zk = std::pow(z, d.shape);
          if (zk > 745.0) return 0.0;
          return d.shape / d.scale * (zk / z) * std::exp(-zk);
        }}, params_);
  }

  /// density / survival, evaluated in closed form. Throws where survival is 0.
  double hazard(double t) const {
    if (t >= support_right()) {
      throw DomainError("hazard undefined: survival is zero at t = " + std::to_string(t));
    }
    return std::visit(detail::overloaded{
        [t](const family::Uniform& d) { return t < d.low ? 0.0 : 1.0 / (d.high - t); },
        [](const family::Exponential& d) { return d.rate; },
        [t](const family::ParetoI& d) { return t < d.scale ? 0.0 : d.shape / t; },
        [t](const family::ParetoII& d) { return d.shape / (d.scale + std::max(t, 0.0)); },
        [t](const family::Gpd& d) {
          return (d.shape + 1.0) / (d.scale + d.shape * std::max(t, 0.0));
        },
        [t](const family::Weibull& d) {
          if (t <= 0.0) {
            if (d.shape < 1.0) return kInf;
            return d.shape == 1.0 ? 1.0 / d.scale : 0.0;
          }
          return d.shape / d.scale * std::pow(t / d.scale, d.shape - 1.0);
        }}, params_);
  }

  bool has_finite_mean() const {
    return std::visit(detail::overloaded{
        [](const family::ParetoI& d) { return d.shape > 1.0; },
        [](const family::ParetoII& d) { return d.shape > 1.0; },
        [](const auto&) { return true; }}, params_);
  }

  double mean() const {
    require_finite_mean();
    return std::visit(detail::overloaded{
        [](const family::Uniform& d) { return 0.5 * (d.low + d.high); },
        [](const family::Exponential& d) { return 1.0 / d.rate; },
        [](const family::ParetoI& d) { return d.shape * d.scale / (d.shape - 1.0); },
        [](const family::ParetoII& d) { return d.scale / (d.shape - 1.0); },
        [](const family::Gpd& d) { return d.scale; },
        [](const family::Weibull& d) {
          return d.scale * boost::math::tgamma(1.0 + 1.0 / d.shape);
        }}, params_);
  }

  /// E[X - t | X > t].
  double mean_residual_life(double t) const {
    require_finite_mean();
    if (t >= support_right()) {
      throw DomainError("mean residual life undefined: survival is zero at t");
    }
    double lead = std::max(support_left() - t, 0.0);  // survival == 1 there
    double from = std::max(t, support_left());
    return std::visit(detail::overloaded{
        [&](const family::Uniform& d) { return lead + 0.5 * (d.high - from); },
        [](const family::Exponential& d) { return 1.0 / d.rate; },
        [&](const family::ParetoI& d) { return lead + from / (d.shape - 1.0); },
        [&](const family::ParetoII& d) { return (d.scale + from) / (d.shape - 1.0); },
        [&](const family::Gpd& d) { return d.scale + d.shape * from; },
        [&](const family::Weibull& d) {
          double c = std::pow(from / d.scale, d.shape);
          return d.scale / d.shape * detail::scaled_upper_gamma(1.0 / d.shape, c);
        }}, params_);
  }

  /// Smallest x with survival(x) <= s, for s in (0,1). More accurate than
  /// quantile(1 - s) in the far tail.
  double upper_quantile(double s) const {
    detail::require(s > 0.0 && s < 1.0, "survival level must lie in (0,1)");
    return std::visit(detail::overloaded{
        [s](const family::Uniform& d) { return d.high - s * (d.high - d.low); },
        [s](const family::Exponential& d) { return -std::log(s) / d.rate; },
        [s](const family::ParetoI& d) { return d.scale * std::pow(s, -1.0 / d.shape); },
        [s](const family::ParetoII& d) { return d.scale * std::expm1(-std::log(s) / d.shape); },
        [s](const family::Gpd& d) {
          if (d.shape == 0.0) return -d.scale * std::log(s);
          double r = -d.shape / (d.shape + 1.0);
          return d.scale / d.shape * std::expm1(r * std::log(s));
        },
        [s](const family::Weibull& d) {
          return d.scale * std::pow(-std::log(s), 1.0 / d.shape);
        }}, params_);
  }

  double quantile(double p) const {
    detail::require(p > 0.0 && p < 1.0, "quantile probability must lie in (0,1)");
    return std::visit(detail::overloaded{
        [p](const family::Uniform& d) { return d.low + p * (d.high - d.low); },
        [p](const family::Exponential& d) { return -std::log1p(-p) / d.rate; },
        [p](const family::Weibull& d) {
          return d.scale * std::pow(-std::log1p(-p), 1.0 / d.shape);
        },
        [this, p](const auto&) { return upper_quantile(1.0 - p); }}, params_);
  }

  /// n i.i.d. draws by inverse transform.
  std::vector<double> sample(std::size_t n, RngStream& rng) const {
    detail::require(n >= 1, "sample size must be at least 1");
    std::vector<double> out(n);
    for (auto& x : out) x = quantile(rng.uniform_open());
    return out;
  }

 private:
  explicit Distribution(Params p) : params_(p) {}

  void require_finite_mean() const {
    if (!has_finite_mean()) {
      throw DomainError(describe() + " has an infinite mean (shape must exceed 1)");
    }
  }

  Params params_;
};

}  // namespace crmhe
