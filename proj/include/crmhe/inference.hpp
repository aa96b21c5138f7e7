#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "crmhe/distributions.hpp"
#include "crmhe/entropy.hpp"
#include "crmhe/kernel.hpp"
#include "crmhe/parallel.hpp"
#include "crmhe/rng.hpp"
#include "crmhe/simulation.hpp"

namespace crmhe {

/// Reads numbers from CSV or whitespace-separated text. A first line that
/// does not parse as numbers is a header; the column named `x` is then used
/// (or the only column). Blank lines and lines starting with '#' are ignored.
inline std::vector<double> parse_values(std::istream& in) {
  std::vector<double> out;
  std::string line;
  bool first = true;
  std::optional<std::size_t> column;
  int line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : s) {
      if (ch == ',' || ch == ';' || ch == ' ' || ch == '\t' || ch == '\r') {
        if (!cur.empty()) tokens.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
  };
  auto numeric = [](const std::string& tok) {
    char* end = nullptr;
    std::strtod(tok.c_str(), &end);
    return end != tok.c_str() && *end == '\0';
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split(detail::trim(line));
    if (tokens.empty() || tokens[0][0] == '#') continue;
    if (first) {
      first = false;
      if (!std::all_of(tokens.begin(), tokens.end(), numeric)) {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
          std::string name = tokens[i];
          name.erase(std::remove(name.begin(), name.end(), '"'), name.end());
          if (name == "x") column = i;
        }
        if (!column && tokens.size() == 1) column = 0;
        if (!column) throw DomainError("header row has no column named 'x'");
        continue;
      }
    }
    if (column) {
      if (*column >= tokens.size()) {
        throw DomainError("line " + std::to_string(line_no) + " has no value in column x");
      }
      out.push_back(detail::parse_double(tokens[*column], "data"));
    } else {
      for (const auto& tok : tokens) out.push_back(detail::parse_double(tok, "data"));
    }
  }
  for (double v : out) {
    if (!std::isfinite(v)) throw DomainError("data contains a non-finite value");
  }
  return out;
}

inline std::vector<double> load_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open data file '" + path + "'");
  return parse_values(in);
}

inline void require_positive(std::span<const double> values) {
  for (double v : values) {
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "lifetimes must be positive; found " << v;
      throw DomainError(os.str());
    }
  }
}

/// Positive, finite lifetimes, at least five of them.
struct Dataset {
  std::vector<double> values;
  std::string label;

  Dataset(std::vector<double> v, std::string name) : values(std::move(v)), label(std::move(name)) {
    if (values.size() < 5) throw DomainError("dataset needs at least 5 observations");
    require_positive(values);
  }
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov tail Q(lambda) = 2 sum (-1)^(j-1) exp(-2 j^2 lambda^2),
/// truncated after 20 terms.
inline double kolmogorov_p_value(double lambda) {
  if (lambda < 0.27) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 20; ++j) {
    double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1) ? term : -term;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// One-sample Kolmogorov-Smirnov statistic against `dist`. The p-value uses
/// the asymptotic law without a correction for estimated parameters.
inline KsResult ks_statistic(std::span<const double> data, const Distribution& dist) {
  if (data.empty()) throw DomainError("KS statistic of an empty sample");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double f = dist.cdf(sorted[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, kolmogorov_p_value(std::sqrt(n) * d)};
}

struct FitResult {
  double shape = 0.0;
  double scale = 0.0;
  KsResult ks;
  Distribution distribution() const { return Distribution::weibull(shape, scale); }
};

/// Weibull maximum likelihood. The shape solves the profile equation
///   sum x^k ln x / sum x^k - 1/k - mean(ln x) = 0
/// (increasing in k); the scale follows in closed form. Data are divided by
/// their maximum first, which makes the shape exactly scale-free.
inline FitResult fit_weibull_mle(std::span<const double> data) {
  if (data.size() < 5) throw FitError("Weibull fit needs at least 5 observations");
  require_positive(data);
  const double top = *std::max_element(data.begin(), data.end());
  std::vector<double> y(data.size()), log_y(data.size());
  double mean_log = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    y[i] = data[i] / top;
    log_y[i] = std::log(y[i]);
    mean_log += log_y[i];
  }
  mean_log /= static_cast<double>(data.size());
  if (std::all_of(log_y.begin(), log_y.end(), [](double v) { return v == 0.0; })) {
    throw FitError("all observations are equal; the Weibull likelihood has no maximum");
  }

  auto profile = [&](double k) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      double w = std::pow(y[i], k);
      num += w * log_y[i];
      den += w;
    }
    return num / den - 1.0 / k - mean_log;
  };

  double lo = 0.5, hi = 5.0;
  int expansions = 0;
  while (profile(lo) > 0.0) {
    lo *= 0.5;
    if (++expansions > 60) throw FitError("Weibull shape bracket did not close from below");
  }
  while (profile(hi) < 0.0) {
    hi *= 2.0;
    if (++expansions > 60) throw FitError("Weibull shape bracket did not close from above");
  }
  std::uintmax_t max_iter = 200;
  auto stop = [](double a, double b) { return std::abs(b - a) <= 1e-12 * std::max(1.0, std::abs(a)); };
  auto root = boost::math::tools::toms748_solve(profile, lo, hi, stop, max_iter);
  if (max_iter >= 200) throw FitError("Weibull shape root-finding did not converge");
  const double k = 0.5 * (root.first + root.second);

  double sum_pow = 0.0;
  for (double v : y) sum_pow += std::pow(v, k);
  FitResult fit;
  fit.shape = k;
  fit.scale = top * std::pow(sum_pow / static_cast<double>(y.size()), 1.0 / k);
  fit.ks = ks_statistic(data, fit.distribution());
  return fit;
}

/// Sample of `size` draws with replacement.
inline std::vector<double> resample(std::span<const double> data, std::size_t size, RngStream& rng) {
  std::vector<double> out(size);
  for (auto& v : out) v = data[rng.index(data.size())];
  return out;
}

struct BootstrapOptions {
  std::size_t reps = 10000;
  std::uint64_t seed = 0;
  std::size_t resample_size = 0;  // 0: size of the data
  KernelEstimatorConfig estimator;
  unsigned threads = 0;
};

struct BootstrapRow {
  double t = 0.0;
  double theoretical = std::numeric_limits<double>::quiet_NaN();
  double mean_estimate = std::numeric_limits<double>::quiet_NaN();
  double bias = std::numeric_limits<double>::quiet_NaN();
  double mse = std::numeric_limits<double>::quiet_NaN();
  std::size_t reps = 0;
  std::string error;
};

struct BootstrapReport {
  std::vector<BootstrapRow> rows;
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  std::size_t resample_size = 0;
  std::string fitted;
  std::vector<std::string> notes;
};

/// Bootstrap bias/MSE of the dynamic estimator against the dynamic measure
/// of the fitted law. Resample r comes from the stream (seed, {r}) and is
/// shared by every t. The bandwidth is recomputed on each resample unless a
/// fixed bandwidth is configured.
inline BootstrapReport bootstrap_dcrmhe(std::span<const double> data, const Distribution& fitted,
                                        double alpha, std::span<const double> t_list,
                                        const BootstrapOptions& options) {
  validate_alpha(alpha);
  if (options.reps < 1) throw DomainError("bootstrap needs at least one replication");
  if (data.size() < 2) throw DomainError("bootstrap needs at least two observations");
  options.estimator.validate();
  BootstrapReport report;
  report.seed = options.seed;
  report.reps = options.reps;
  report.resample_size = options.resample_size ? options.resample_size : data.size();
  report.fitted = fitted.describe();
  if (report.resample_size != data.size()) {
    report.notes.push_back("resample size " + std::to_string(report.resample_size) +
                           " differs from the data size " + std::to_string(data.size()));
  }

  const std::size_t nt = t_list.size();
  std::vector<char> active(nt, 1);
  for (std::size_t i = 0; i < nt; ++i) {
    BootstrapRow row;
    row.t = t_list[i];
    try {
      row.theoretical = dcrmhe(fitted, alpha, row.t).value;
      EmpiricalSurvival original = EmpiricalSurvival::fit(data, options.estimator);
      if (original(row.t) < kSurvivalDenominatorFloor) {
        throw TruncationBeyondSupport("t lies beyond the data; kernel survival below 1e-8");
      }
    } catch (const Error& e) {
      row.error = e.what();
      active[i] = 0;
    }
    report.rows.push_back(row);
  }

  std::vector<double> est(options.reps * nt, std::numeric_limits<double>::quiet_NaN());
  std::vector<char> ok(options.reps * nt, 0);
  parallel_for(options.reps, options.threads, [&](std::size_t r) {
    RngStream rng(options.seed, {r});
    auto sample = resample(data, report.resample_size, rng);
    std::optional<EmpiricalSurvival> s;
    try {
      s.emplace(EmpiricalSurvival::fit(sample, options.estimator));
    } catch (const Error&) {
      return;  // degenerate resample (all values equal)
    }
    for (std::size_t i = 0; i < nt; ++i) {
      if (!active[i]) continue;
      try {
        est[r * nt + i] = estimate_dcrmhe(*s, alpha, t_list[i], options.estimator).entropy.value;
        ok[r * nt + i] = 1;
      } catch (const Error&) {
      }
    }
  });

  for (std::size_t i = 0; i < nt; ++i) {
    auto& row = report.rows[i];
    if (!active[i]) continue;
    std::vector<double> good;
    for (std::size_t r = 0; r < options.reps; ++r) {
      if (ok[r * nt + i]) good.push_back(est[r * nt + i]);
    }
    row.reps = good.size();
    if (good.size() < options.reps) {
      row.error = std::to_string(options.reps - good.size()) + " resamples gave no estimate";
    }
    if (good.empty()) continue;
    auto bm = bias_mse(good, row.theoretical);
    row.bias = bm.bias;
    row.mse = bm.mse;
    row.mean_estimate = row.theoretical + bm.bias;
  }
  return report;
}

}  // namespace crmhe
