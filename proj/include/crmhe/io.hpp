#pragma once

// CSV and JSON serialisation of results. Numbers are written in the
// shortest form that reads back as the same double.

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "crmhe/curve.hpp"
#include "crmhe/inference.hpp"
#include "crmhe/simulation.hpp"

namespace crmhe {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kInterfaceVersion = "1";

/// Shortest round-trip form; NaN becomes an empty field.
inline std::string format_number(double v) {
  if (std::isnan(v)) return {};
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return detail::shortest(v);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
  os << '\n';
}

inline void write_simulation_csv(std::ostream& os, const SimulationReport& r) {
  write_csv_row(os, {"dist", "alpha", "t", "n", "true", "mean_est", "bias", "mse", "reps", "seed", "error"});
  for (const auto& c : r.cells) {
    write_csv_row(os, {r.dist, format_number(r.alpha), c.t ? format_number(*c.t) : "",
                       std::to_string(c.n), format_number(c.true_value), format_number(c.mean_estimate),
                       format_number(c.bias), format_number(c.mse), std::to_string(c.reps),
                       std::to_string(r.seed), c.error});
  }
}

inline void write_bootstrap_csv(std::ostream& os, const BootstrapReport& r) {
  write_csv_row(os, {"t", "theoretical", "estimate", "bias", "mse", "reps", "error"});
  for (const auto& row : r.rows) {
    write_csv_row(os, {format_number(row.t), format_number(row.theoretical),
                       format_number(row.mean_estimate), format_number(row.bias),
                       format_number(row.mse), std::to_string(row.reps), row.error});
  }
}

inline void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& points) {
  write_csv_row(os, {"t", "theoretical", "estimate", "error"});
  for (const auto& p : points) {
    write_csv_row(os, {format_number(p.t), format_number(p.theoretical), format_number(p.estimate),
                       p.error});
  }
}

/// NaN and infinities have no JSON literal; they become null.
inline nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline nlohmann::json to_json(const SimulationReport& r) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"t", c.t ? json_number(*c.t) : nlohmann::json(nullptr)},
                     {"n", c.n},
                     {"true", json_number(c.true_value)},
                     {"mean_est", json_number(c.mean_estimate)},
                     {"bias", json_number(c.bias)},
                     {"mse", json_number(c.mse)},
                     {"reps", c.reps},
                     {"elapsed_seconds", c.elapsed_seconds},
                     {"error", c.error}});
  }
  return {{"dist", r.dist}, {"alpha", r.alpha}, {"reps_requested", r.reps_requested}, {"cells", cells}};
}

inline nlohmann::json to_json(const BootstrapReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"t", row.t},
                    {"theoretical", json_number(row.theoretical)},
                    {"estimate", json_number(row.mean_estimate)},
                    {"bias", json_number(row.bias)},
                    {"mse", json_number(row.mse)},
                    {"reps", row.reps},
                    {"error", row.error}});
  }
  return {{"fitted", r.fitted},
          {"reps", r.reps},
          {"resample_size", r.resample_size},
          {"notes", r.notes},
          {"rows", rows}};
}

inline nlohmann::json to_json(const std::vector<CurvePoint>& points) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : points) {
    out.push_back({{"t", p.t},
                   {"theoretical", json_number(p.theoretical)},
                   {"estimate", json_number(p.estimate)},
                   {"error", p.error}});
  }
  return out;
}

/// Envelope shared by every command: what ran, with which seed and
/// configuration, and by which version of the tool.
inline nlohmann::json output_record(const std::string& command, const std::string& config_hash,
                                    std::optional<std::uint64_t> seed, nlohmann::json results) {
  return {{"command", command},
          {"config_hash", config_hash},
          {"seed", seed ? nlohmann::json(*seed) : nlohmann::json(nullptr)},
          {"tool_version", kToolVersion},
          {"interface_version", kInterfaceVersion},
          {"results", std::move(results)}};
}

}  // namespace crmhe
