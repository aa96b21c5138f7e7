#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "crmhe/distributions.hpp"
#include "crmhe/entropy.hpp"
#include "crmhe/kernel.hpp"
#include "crmhe/parallel.hpp"
#include "crmhe/rng.hpp"

namespace crmhe {

struct BiasMse {
  double bias = 0.0;
  double mse = 0.0;
};

/// bias = mean - truth, mse = mean squared deviation from truth.
inline BiasMse bias_mse(std::span<const double> estimates, double true_value) {
  if (estimates.empty()) throw DomainError("bias/MSE of an empty set of estimates");
  const double n = static_cast<double>(estimates.size());
  std::vector<double> dev(estimates.size());
  std::vector<double> sq(estimates.size());
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    dev[i] = estimates[i] - true_value;
    sq[i] = dev[i] * dev[i];
  }
  return {pairwise_sum(dev) / n, pairwise_sum(sq) / n};
}

struct SimulationPlan {
  Distribution dist = Distribution::exponential(1.0);
  double alpha = 1.5;
  std::vector<std::size_t> n_values;
  // Empty: study of the static estimator. Otherwise one study per t.
  std::vector<double> t_values;
  std::size_t reps = 10000;
  std::uint64_t master_seed = 0;
  KernelEstimatorConfig estimator;
  unsigned threads = 0;

  void validate() const {
    validate_alpha(alpha);
    if (reps < 1) throw DomainError("reps must be at least 1");
    if (n_values.empty()) throw DomainError("plan needs at least one sample size");
    for (auto n : n_values) {
      if (n < 2) throw DomainError("every sample size must be at least 2");
    }
    for (double t : t_values) validate_truncation(dist, t);
    estimator.validate();
  }

  // Canonical text of everything that determines the results (not threads).
  std::string canonical() const {
    std::ostringstream os;
    os.precision(17);
    os << "dist=" << dist.describe() << ";alpha=" << alpha << ";n=";
    for (auto n : n_values) os << n << ',';
    os << ";t=";
    for (double t : t_values) os << t << ',';
    os << ";reps=" << reps << ";seed=" << master_seed << ";kernel=" << kernel_name(estimator.kernel)
       << ";bandwidth=";
    if (estimator.fixed_bandwidth) os << *estimator.fixed_bandwidth;
    else os << "silverman";
    os << ";grid=" << estimator.grid_points << ";pad=" << estimator.upper_pad_bandwidths
       << ";adaptive=" << estimator.adaptive;
    return os.str();
  }
};

// FNV-1a, 64 bit.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = digits[v & 0xF];
  return out;
}

struct SimulationCell {
  std::optional<double> t;  // empty for the static estimator
  std::size_t n = 0;
  double true_value = std::numeric_limits<double>::quiet_NaN();
  double mean_estimate = std::numeric_limits<double>::quiet_NaN();
  double bias = std::numeric_limits<double>::quiet_NaN();
  double mse = std::numeric_limits<double>::quiet_NaN();
  std::size_t reps = 0;  // replications that produced an estimate
  std::string error;
  double elapsed_seconds = 0.0;
};

struct SimulationReport {
  std::string dist;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::size_t reps_requested = 0;
  std::string config_hash;
  std::vector<SimulationCell> cells;
};

/// Monte Carlo bias/MSE study. Replication r of cell c draws its sample from
/// the stream (master_seed, {c, r}), so results do not depend on the thread
/// count or on scheduling.
inline SimulationReport run_simulation(const SimulationPlan& plan) {
  plan.validate();
  SimulationReport report;
  report.dist = plan.dist.describe();
  report.alpha = plan.alpha;
  report.seed = plan.master_seed;
  report.reps_requested = plan.reps;
  report.config_hash = hex64(fnv1a64(plan.canonical()));

  std::vector<std::optional<double>> ts;
  if (plan.t_values.empty()) ts.push_back(std::nullopt);
  for (double t : plan.t_values) ts.push_back(t);

  for (const auto& t : ts) {
    for (std::size_t n : plan.n_values) {
      SimulationCell cell;
      cell.t = t;
      cell.n = n;
      report.cells.push_back(cell);
    }
  }

  const std::size_t cell_count = report.cells.size();
  std::vector<std::vector<double>> estimates(cell_count, std::vector<double>(plan.reps));
  std::vector<std::vector<std::string>> failures(cell_count);
  std::vector<char> active(cell_count, 1);

  for (std::size_t c = 0; c < cell_count; ++c) {
    auto& cell = report.cells[c];
    try {
      cell.true_value = dcrmhe(plan.dist, plan.alpha, cell.t.value_or(0.0)).value;
    } catch (const Error& e) {
      cell.error = std::string("true value: ") + e.what();
      active[c] = 0;
    }
    failures[c].resize(plan.reps);
  }

  std::vector<double> seconds(cell_count * plan.reps, 0.0);
  parallel_for(cell_count * plan.reps, plan.threads, [&](std::size_t task) {
    const std::size_t c = task / plan.reps;
    const std::size_t r = task % plan.reps;
    if (!active[c]) return;
    const auto start = std::chrono::steady_clock::now();
    const auto& cell = report.cells[c];
    RngStream rng(plan.master_seed, {c, r});
    try {
      auto sample = plan.dist.sample(cell.n, rng);
      auto s = EmpiricalSurvival::fit(sample, plan.estimator);
      estimates[c][r] = cell.t ? estimate_dcrmhe(s, plan.alpha, *cell.t, plan.estimator).entropy.value
                               : estimate_crmhe(s, plan.alpha, plan.estimator).entropy.value;
    } catch (const Error& e) {
      estimates[c][r] = std::numeric_limits<double>::quiet_NaN();
      failures[c][r] = e.what();
    }
    seconds[task] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  for (std::size_t c = 0; c < cell_count; ++c) {
    auto& cell = report.cells[c];
    for (std::size_t r = 0; r < plan.reps; ++r) cell.elapsed_seconds += seconds[c * plan.reps + r];
    if (!active[c]) continue;
    std::vector<double> ok;
    ok.reserve(plan.reps);
    std::size_t failed = 0;
    std::string first_failure;
    for (std::size_t r = 0; r < plan.reps; ++r) {
      if (failures[c][r].empty()) {
        ok.push_back(estimates[c][r]);
      } else {
        if (failed++ == 0) first_failure = failures[c][r];
      }
    }
    cell.reps = ok.size();
    if (failed > 0) {
      cell.error = std::to_string(failed) + " replications failed (first: " + first_failure + ")";
    }
    if (ok.empty()) continue;
    auto bm = bias_mse(ok, cell.true_value);
    cell.bias = bm.bias;
    cell.mse = bm.mse;
    cell.mean_estimate = cell.true_value + bm.bias;
  }
  return report;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& token, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw DomainError("cannot parse " + what + " value '" + token + "'");
  }
  if (used != token.size()) throw DomainError("cannot parse " + what + " value '" + token + "'");
  return v;
}

inline std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(item, what));
  }
  return out;
}

inline std::uint64_t parse_u64(const std::string& token, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!token.empty() && token[0] == '-') throw std::invalid_argument("negative");
    v = std::stoull(token, &used);
  } catch (const std::exception&) {
    throw DomainError("cannot parse " + what + " value '" + token + "'");
  }
  if (used != token.size()) throw DomainError("cannot parse " + what + " value '" + token + "'");
  return v;
}

}  // namespace detail

/// Reads a flat key = value plan. Recognised keys: family, params, alpha,
/// n, t, reps, seed, kernel, bandwidth, grid_points, pad, threads. Lines
/// starting with '#' are comments. `seed` is mandatory.
inline SimulationPlan parse_plan(std::istream& in) {
  SimulationPlan plan;
  std::string family;
  std::vector<double> params;
  bool have_seed = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("plan line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (key == "family" || key == "dist") family = value;
    else if (key == "params") params = detail::parse_double_list(value, key);
    else if (key == "alpha") plan.alpha = detail::parse_double(value, key);
    else if (key == "n") {
      plan.n_values.clear();
      for (double v : detail::parse_double_list(value, key)) {
        if (v < 0 || v != std::floor(v)) throw DomainError("sample sizes must be whole numbers");
        plan.n_values.push_back(static_cast<std::size_t>(v));
      }
    } else if (key == "t") plan.t_values = detail::parse_double_list(value, key);
    else if (key == "reps") plan.reps = detail::parse_u64(value, key);
    else if (key == "seed") {
      plan.master_seed = detail::parse_u64(value, key);
      have_seed = true;
    } else if (key == "kernel") {
      if (value == "gaussian") plan.estimator.kernel = Kernel::gaussian;
      else if (value == "epanechnikov") plan.estimator.kernel = Kernel::epanechnikov;
      else throw DomainError("unknown kernel '" + value + "'");
    } else if (key == "bandwidth") {
      if (value == "silverman") plan.estimator.fixed_bandwidth.reset();
      else plan.estimator.fixed_bandwidth = detail::parse_double(value, key);
    } else if (key == "grid_points") plan.estimator.grid_points = static_cast<int>(detail::parse_u64(value, key));
    else if (key == "pad") plan.estimator.upper_pad_bandwidths = detail::parse_double(value, key);
    else if (key == "threads") plan.threads = static_cast<unsigned>(detail::parse_u64(value, key));
    else throw DomainError("plan line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  if (family.empty()) throw DomainError("plan is missing 'family'");
  if (!have_seed) throw DomainError("plan is missing 'seed'; seeded runs are mandatory");
  plan.dist = Distribution::parse(family, params);
  plan.validate();
  return plan;
}

}  // namespace crmhe
