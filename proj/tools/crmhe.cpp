// Command-line front end: exact values, kernel estimates, Monte Carlo
// studies, bootstrap analysis of a data file, and curve data for plotting.
//
// Exit codes: 0 success, 2 invalid input, 3 divergent entropy integral,
// 4 model fit failure.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "crmhe/crmhe.hpp"

namespace {

using crmhe::format_number;
using nlohmann::json;

constexpr int kExitInvalid = 2;
constexpr int kExitDivergent = 3;
constexpr int kExitFit = 4;

constexpr const char* kFamilyHelp =
    "Distribution families and their --params (comma separated):\n"
    "  uniform  low,high       uniform on [low, high], 0 <= low < high\n"
    "  exp      rate           exponential, survival exp(-rate x)\n"
    "  pareto1  k,a            Pareto I, survival (k/x)^a for x >= k\n"
    "  pareto2  b,a            Pareto II (Lomax), survival (1 + x/b)^-a\n"
    "  gpd      a,b            generalized Pareto, survival (1 + a x/b)^(-1/a - 1)\n"
    "  weibull  k,lambda       Weibull shape k, scale lambda\n";

enum class Format { table, csv, json };

struct Common {
  bool json = false;
  bool csv = false;
  std::string out;
  Format format() const { return json ? Format::json : csv ? Format::csv : Format::table; }
};

struct EstimatorFlags {
  std::string kernel = "gaussian";
  std::string bandwidth = "silverman";
  int grid_points = 2048;
  double pad = 8.0;
  bool adaptive = false;

  crmhe::KernelEstimatorConfig config() const {
    crmhe::KernelEstimatorConfig c;
    if (kernel == "gaussian") c.kernel = crmhe::Kernel::gaussian;
    else if (kernel == "epanechnikov") c.kernel = crmhe::Kernel::epanechnikov;
    else throw crmhe::DomainError("unknown kernel '" + kernel + "'");
    if (bandwidth != "silverman") c.fixed_bandwidth = crmhe::detail::parse_double(bandwidth, "bandwidth");
    c.grid_points = grid_points;
    c.upper_pad_bandwidths = pad;
    c.adaptive = adaptive;
    c.validate();
    return c;
  }

  std::string canonical() const {
    return "kernel=" + kernel + ";bandwidth=" + bandwidth + ";grid=" + std::to_string(grid_points) +
           ";pad=" + format_number(pad) + ";adaptive=" + (adaptive ? "1" : "0");
  }
};

void add_common(CLI::App* cmd, Common& c) {
  auto* j = cmd->add_flag("--json", c.json, "Write a JSON record");
  auto* s = cmd->add_flag("--csv", c.csv, "Write CSV");
  j->excludes(s);
  cmd->add_option("--out", c.out, "Write to this file instead of standard output");
}

void add_estimator(CLI::App* cmd, EstimatorFlags& e) {
  cmd->add_option("--kernel", e.kernel, "gaussian or epanechnikov")->capture_default_str();
  cmd->add_option("--bandwidth", e.bandwidth, "silverman or a positive number")->capture_default_str();
  cmd->add_option("--grid-points", e.grid_points, "Simpson intervals (even, >= 64)")->capture_default_str();
  cmd->add_option("--pad", e.pad, "Integrate to max(sample) + pad bandwidths")->capture_default_str();
  cmd->add_flag("--adaptive", e.adaptive, "Adaptive quadrature instead of the Simpson grid");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw crmhe::DomainError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const Common& c, const json& record, const std::function<void(std::ostream&)>& csv,
          const std::function<void(std::ostream&)>& table) {
  Output out(c.out);
  switch (c.format()) {
    case Format::json: out.stream() << record.dump(2) << '\n'; break;
    case Format::csv: csv(out.stream()); break;
    case Format::table: table(out.stream()); break;
  }
}

std::string hash_text(const std::string& s) { return crmhe::hex64(crmhe::fnv1a64(s)); }

std::string fixed(double v, int width = 14) {
  if (std::isnan(v)) return std::string(static_cast<std::size_t>(width - 1), ' ') + "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%*.10g", width, v);
  return buf;
}

std::vector<double> load_sample(const std::string& path) {
  auto values = crmhe::load_values(path);
  if (values.size() < 2) throw crmhe::DomainError("data file needs at least two values");
  crmhe::require_positive(values);
  return values;
}

// ---- compute --------------------------------------------------------------

struct ComputeArgs {
  Common common;
  std::string dist;
  std::vector<double> params;
  double alpha = 0.0;
  double t = 0.0;
  double rel_tol = 1e-10;
};

json compute_row(const crmhe::Distribution& d, const ComputeArgs& a, crmhe::Origin origin) {
  crmhe::EntropyQuery q;
  q.alpha = a.alpha;
  q.t = a.t;
  q.rel_tol = a.rel_tol;
  q.origin = origin;
  std::optional<double> closed;
  if (auto v = crmhe::survival_power_integral_closed(d, 2.0 - a.alpha, a.t, origin)) {
    closed = (*v - 1.0) / (a.alpha - 1.0);
  }
  auto quad = crmhe::dcrmhe_quadrature(d, q);
  json row = {{"origin", origin == crmhe::Origin::zero ? "zero" : "support_left"},
              {"closed_form", closed ? json(*closed) : json(nullptr)},
              {"quadrature", quad.value},
              {"quadrature_error", quad.estimated_abs_error},
              {"difference", closed ? json(*closed - quad.value) : json(nullptr)}};
  return row;
}

int run_compute(const ComputeArgs& a) {
  crmhe::validate_alpha(a.alpha);
  auto d = crmhe::Distribution::parse(a.dist, a.params);
  crmhe::validate_truncation(d, a.t);
  std::vector<json> rows{compute_row(d, a, crmhe::Origin::zero)};
  // Pareto I starts at k > 0; its tabulated closed form integrates from k.
  if (d.family() == crmhe::Family::pareto_i) rows.push_back(compute_row(d, a, crmhe::Origin::support_left));

  json results = {{"dist", d.describe()}, {"alpha", a.alpha}, {"t", a.t}, {"values", rows}};
  std::string canon = "compute;" + d.describe() + ";alpha=" + format_number(a.alpha) +
                      ";t=" + format_number(a.t) + ";rel_tol=" + format_number(a.rel_tol);
  auto num = [](const json& v) { return v.is_null() ? std::nan("") : v.get<double>(); };
  emit(
      a.common, crmhe::output_record("compute", hash_text(canon), std::nullopt, results),
      [&](std::ostream& os) {
        crmhe::write_csv_row(os, {"dist", "alpha", "t", "origin", "closed_form", "quadrature",
                                  "quadrature_error", "difference"});
        for (const auto& r : rows) {
          crmhe::write_csv_row(os, {d.describe(), format_number(a.alpha), format_number(a.t),
                                    r["origin"].get<std::string>(), format_number(num(r["closed_form"])),
                                    format_number(r["quadrature"].get<double>()),
                                    format_number(r["quadrature_error"].get<double>()),
                                    format_number(num(r["difference"]))});
        }
      },
      [&](std::ostream& os) {
        os << "dist   " << d.describe() << "\nalpha  " << format_number(a.alpha) << "\nt      "
           << format_number(a.t) << "\n\n";
        os << "origin              closed form      quadrature      difference\n";
        for (const auto& r : rows) {
          char buf[160];
          std::snprintf(buf, sizeof buf, "%-14s%16s%16s%16s\n", r["origin"].get<std::string>().c_str(),
                        fixed(num(r["closed_form"]), 16).c_str(), fixed(r["quadrature"].get<double>(), 16).c_str(),
                        fixed(num(r["difference"]), 16).c_str());
          os << buf;
        }
      });
  return 0;
}

// ---- estimate -------------------------------------------------------------

struct EstimateArgs {
  Common common;
  EstimatorFlags est;
  std::string data;
  double alpha = 0.0;
  std::vector<double> t;
};

int run_estimate(const EstimateArgs& a) {
  crmhe::validate_alpha(a.alpha);
  auto config = a.est.config();
  auto sample = load_sample(a.data);
  auto s = crmhe::EmpiricalSurvival::fit(sample, config);

  struct Row {
    std::optional<double> t;
    crmhe::KernelEstimate k;
    std::string error;
  };
  std::vector<Row> rows;
  if (a.t.empty()) {
    rows.push_back({std::nullopt, crmhe::estimate_crmhe(s, a.alpha, config), ""});
  }
  for (double t : a.t) {
    Row r{t, {}, ""};
    try {
      r.k = crmhe::estimate_dcrmhe(s, a.alpha, t, config);
    } catch (const crmhe::TruncationBeyondSupport& e) {
      r.error = e.what();
    } catch (const crmhe::DomainError& e) {
      r.error = e.what();
    }
    rows.push_back(r);
  }

  json jrows = json::array();
  for (const auto& r : rows) {
    bool ok = r.error.empty();
    jrows.push_back({{"t", r.t ? json(*r.t) : json(nullptr)},
                     {"estimate", ok ? crmhe::json_number(r.k.entropy.value) : json(nullptr)},
                     {"estimated_abs_error", ok ? json(r.k.entropy.estimated_abs_error) : json(nullptr)},
                     {"range_lower", ok ? json(r.k.range_lower) : json(nullptr)},
                     {"range_upper", ok ? json(r.k.range_upper) : json(nullptr)},
                     {"tail_bound", ok ? json(r.k.tail_bound) : json(nullptr)},
                     {"error", r.error}});
  }
  json results = {{"data", a.data},
                  {"n", sample.size()},
                  {"alpha", a.alpha},
                  {"kernel", crmhe::kernel_name(config.kernel)},
                  {"bandwidth", s.bandwidth()},
                  {"bandwidth_rule", config.fixed_bandwidth ? "fixed" : "silverman"},
                  {"grid_points", config.grid_points},
                  {"quadrature", config.adaptive ? "adaptive" : "simpson"},
                  {"rows", jrows}};
  std::string canon = "estimate;";
  for (double v : sample) canon += format_number(v) + ",";
  canon += ";alpha=" + format_number(a.alpha) + ";" + a.est.canonical() + ";t=";
  for (double t : a.t) canon += format_number(t) + ",";

  emit(
      a.common, crmhe::output_record("estimate", hash_text(canon), std::nullopt, results),
      [&](std::ostream& os) {
        crmhe::write_csv_row(os, {"t", "estimate", "estimated_abs_error", "bandwidth", "error"});
        for (const auto& r : rows) {
          bool ok = r.error.empty();
          crmhe::write_csv_row(os, {r.t ? format_number(*r.t) : "",
                                    ok ? format_number(r.k.entropy.value) : "",
                                    ok ? format_number(r.k.entropy.estimated_abs_error) : "",
                                    format_number(s.bandwidth()), r.error});
        }
      },
      [&](std::ostream& os) {
        os << "data       " << a.data << " (n = " << sample.size() << ")\n"
           << "alpha      " << format_number(a.alpha) << "\n"
           << "kernel     " << crmhe::kernel_name(config.kernel) << ", bandwidth "
           << format_number(s.bandwidth()) << (config.fixed_bandwidth ? " (fixed)" : " (silverman)") << "\n"
           << "quadrature " << (config.adaptive ? "adaptive" : "simpson, " + std::to_string(config.grid_points) + " intervals")
           << "\n\n";
        os << "         t        estimate       abs error\n";
        for (const auto& r : rows) {
          os << (r.t ? fixed(*r.t, 10) : std::string("    static")) << "  ";
          if (r.error.empty()) {
            os << fixed(r.k.entropy.value) << "  " << fixed(r.k.entropy.estimated_abs_error) << '\n';
          } else {
            os << "error: " << r.error << '\n';
          }
        }
      });
  return 0;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  Common common;
  EstimatorFlags est;
  std::string plan;
  std::string dist;
  std::vector<double> params;
  std::optional<double> alpha;
  std::vector<std::size_t> n;
  std::vector<double> t;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  CLI::App* cmd = nullptr;
};

crmhe::SimulationPlan build_plan(const SimulateArgs& a) {
  crmhe::SimulationPlan plan;
  if (!a.plan.empty()) {
    std::ifstream in(a.plan);
    if (!in) throw crmhe::DomainError("cannot open plan file '" + a.plan + "'");
    // --seed, when given, is appended and so overrides the plan's seed.
    std::stringstream text;
    text << in.rdbuf();
    std::string body = text.str();
    if (a.seed) body += "\nseed = " + std::to_string(*a.seed) + "\n";
    std::istringstream is(body);
    plan = crmhe::parse_plan(is);
  } else {
    if (a.dist.empty()) throw crmhe::DomainError("give --plan or --dist with --params");
    plan.dist = crmhe::Distribution::parse(a.dist, a.params);
    if (!a.alpha) throw crmhe::DomainError("--alpha is required");
    plan.alpha = *a.alpha;
    plan.n_values = a.n.empty() ? std::vector<std::size_t>{30, 50, 70, 90} : a.n;
    plan.t_values = a.t;
    if (!a.seed) throw crmhe::DomainError("--seed is required: simulation runs must be reproducible");
    plan.master_seed = *a.seed;
  }
  // Flags override the plan file.
  if (a.plan.size() && a.alpha) plan.alpha = *a.alpha;
  if (a.plan.size() && !a.n.empty()) plan.n_values = a.n;
  if (a.plan.size() && !a.t.empty()) plan.t_values = a.t;
  if (a.reps) plan.reps = *a.reps;
  if (a.threads) plan.threads = *a.threads;
  for (const char* name : {"--kernel", "--bandwidth", "--grid-points", "--pad", "--adaptive"}) {
    if (a.cmd->count(name) > 0) {
      plan.estimator = a.est.config();
      break;
    }
  }
  plan.validate();
  return plan;
}

int run_simulate(const SimulateArgs& a) {
  auto plan = build_plan(a);
  auto report = crmhe::run_simulation(plan);
  emit(
      a.common, crmhe::output_record("simulate", report.config_hash, report.seed, crmhe::to_json(report)),
      [&](std::ostream& os) { crmhe::write_simulation_csv(os, report); },
      [&](std::ostream& os) {
        os << "dist " << report.dist << ", alpha " << format_number(report.alpha) << ", reps "
           << report.reps_requested << ", seed " << report.seed << ", config " << report.config_hash
           << "\n\n";
        os << "         t     n            true        mean est            bias             mse   reps\n";
        for (const auto& c : report.cells) {
          char buf[200];
          std::snprintf(buf, sizeof buf, "%10s %5zu %s  %s  %s  %s %6zu", c.t ? fixed(*c.t, 10).c_str() : "    static",
                        c.n, fixed(c.true_value).c_str(), fixed(c.mean_estimate).c_str(),
                        fixed(c.bias).c_str(), fixed(c.mse).c_str(), c.reps);
          os << buf;
          if (!c.error.empty()) os << "  " << c.error;
          os << '\n';
        }
      });
  return 0;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  Common common;
  EstimatorFlags est;
  std::string data;
  double alpha = 1.5;
  std::vector<double> t;
  std::size_t reps = 10000;
  std::optional<std::uint64_t> seed;
  std::size_t resample_size = 0;
  unsigned threads = 0;
};

int run_analyze(const AnalyzeArgs& a) {
  crmhe::validate_alpha(a.alpha);
  if (!a.seed) throw crmhe::DomainError("--seed is required: bootstrap runs must be reproducible");
  auto config = a.est.config();
  crmhe::Dataset data(crmhe::load_values(a.data), a.data);
  auto fit = crmhe::fit_weibull_mle(data.values);
  crmhe::BootstrapOptions opt;
  opt.reps = a.reps;
  opt.seed = *a.seed;
  opt.resample_size = a.resample_size;
  opt.estimator = config;
  opt.threads = a.threads;
  auto report = crmhe::bootstrap_dcrmhe(data.values, fit.distribution(), a.alpha, a.t, opt);

  std::string canon = "analyze;";
  for (double v : data.values) canon += format_number(v) + ",";
  canon += ";alpha=" + format_number(a.alpha) + ";t=";
  for (double t : a.t) canon += format_number(t) + ",";
  canon += ";reps=" + std::to_string(a.reps) + ";seed=" + std::to_string(*a.seed) +
           ";resample=" + std::to_string(report.resample_size) + ";" + a.est.canonical();

  json results = crmhe::to_json(report);
  results["data"] = a.data;
  results["n"] = data.values.size();
  results["alpha"] = a.alpha;
  results["fit"] = {{"family", "weibull"},
                    {"shape", fit.shape},
                    {"scale", fit.scale},
                    {"ks_statistic", fit.ks.statistic},
                    {"ks_p_value", fit.ks.p_value}};
  emit(
      a.common, crmhe::output_record("analyze", hash_text(canon), *a.seed, results),
      [&](std::ostream& os) { crmhe::write_bootstrap_csv(os, report); },
      [&](std::ostream& os) {
        os << "data      " << a.data << " (n = " << data.values.size() << ")\n"
           << "fit       weibull shape " << format_number(fit.shape) << ", scale "
           << format_number(fit.scale) << "\n"
           << "KS        D = " << format_number(fit.ks.statistic) << ", p = "
           << format_number(fit.ks.p_value) << " (asymptotic, parameters estimated)\n"
           << "bootstrap " << report.reps << " resamples of size " << report.resample_size << ", seed "
           << report.seed << "\n";
        for (const auto& n : report.notes) os << "note      " << n << '\n';
        os << "\n         t     theoretical        estimate            bias             mse\n";
        for (const auto& r : report.rows) {
          os << fixed(r.t, 10) << "  " << fixed(r.theoretical) << "  " << fixed(r.mean_estimate) << "  "
             << fixed(r.bias) << "  " << fixed(r.mse);
          if (!r.error.empty()) os << "  " << r.error;
          os << '\n';
        }
      });
  return 0;
}

// ---- curve ----------------------------------------------------------------

struct CurveArgs {
  Common common;
  EstimatorFlags est;
  std::string dist;
  std::vector<double> params;
  std::string data;
  double alpha = 0.0;
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
};

int run_curve(const CurveArgs& a) {
  crmhe::validate_alpha(a.alpha);
  auto grid = crmhe::t_range(a.from, a.to, a.step);
  if (a.dist.empty() && a.data.empty()) throw crmhe::DomainError("give --dist/--params, --data, or both");
  std::optional<crmhe::Distribution> d;
  if (!a.dist.empty()) d = crmhe::Distribution::parse(a.dist, a.params);
  std::vector<double> sample;
  if (!a.data.empty()) sample = load_sample(a.data);
  auto points = crmhe::dcrmhe_curve(d, sample, a.alpha, grid, a.est.config());

  std::string canon = "curve;" + (d ? d->describe() : std::string()) + ";";
  for (double v : sample) canon += format_number(v) + ",";
  canon += ";alpha=" + format_number(a.alpha) + ";from=" + format_number(a.from) +
           ";to=" + format_number(a.to) + ";step=" + format_number(a.step) + ";" + a.est.canonical();
  json results = {{"dist", d ? json(d->describe()) : json(nullptr)},
                  {"data", a.data.empty() ? json(nullptr) : json(a.data)},
                  {"alpha", a.alpha},
                  {"points", crmhe::to_json(points)}};
  emit(
      a.common, crmhe::output_record("curve", hash_text(canon), std::nullopt, results),
      [&](std::ostream& os) { crmhe::write_curve_csv(os, points); },
      [&](std::ostream& os) {
        os << "         t     theoretical        estimate\n";
        for (const auto& p : points) {
          os << fixed(p.t, 10) << "  " << fixed(p.theoretical) << "  " << fixed(p.estimate);
          if (!p.error.empty()) os << "  " << p.error;
          os << '\n';
        }
      });
  return 0;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const crmhe::DivergentEntropy& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDivergent;
  } catch (const crmhe::FitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFit;
  } catch (const crmhe::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cumulative residual Mathai-Haubold entropy: exact values, kernel estimates, "
               "simulation and bootstrap studies.\n\n" +
               std::string(kFamilyHelp)};
  app.set_version_flag("--version", std::string("crmhe ") + crmhe::kToolVersion + " (interface " +
                                        crmhe::kInterfaceVersion + ")");
  app.require_subcommand(1);
  app.footer("Exit codes: 0 success, 2 invalid input, 3 divergent entropy, 4 fit failure.");

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Closed form and quadrature side by side");
  c->footer(kFamilyHelp);
  c->add_option("--dist", compute.dist, "Family tag")->required();
  c->add_option("--params", compute.params, "Family parameters")->delimiter(',')->required();
  c->add_option("--alpha", compute.alpha, "Order, in (0,2) excluding 1")->required();
  c->add_option("--t", compute.t, "Truncation time (0 gives the static measure)")->capture_default_str();
  c->add_option("--rel-tol", compute.rel_tol, "Quadrature relative tolerance")->capture_default_str();
  add_common(c, compute.common);

  EstimateArgs estimate;
  auto* e = app.add_subcommand("estimate", "Kernel estimate from a data file");
  e->add_option("--data", estimate.data, "CSV or whitespace-separated values")->required();
  e->add_option("--alpha", estimate.alpha, "Order, in (0,2) excluding 1")->required();
  e->add_option("--t", estimate.t, "Truncation times; omit for the static estimate")->delimiter(',');
  add_estimator(e, estimate.est);
  add_common(e, estimate.common);

  SimulateArgs simulate;
  auto* s = app.add_subcommand("simulate", "Monte Carlo bias and MSE of the estimators");
  s->footer(std::string(kFamilyHelp) +
            "\nPlan files hold key = value lines: family, params, alpha, n, t, reps, seed,\n"
            "kernel, bandwidth, grid_points, pad, threads. Flags override the file.");
  simulate.cmd = s;
  s->add_option("--plan", simulate.plan, "Plan file");
  s->add_option("--dist", simulate.dist, "Family tag");
  s->add_option("--params", simulate.params, "Family parameters")->delimiter(',');
  s->add_option("--alpha", simulate.alpha, "Order, in (0,2) excluding 1");
  s->add_option("--n", simulate.n, "Sample sizes (default 30,50,70,90)")->delimiter(',');
  s->add_option("--t", simulate.t, "Truncation times; omit for the static estimator")->delimiter(',');
  s->add_option("--reps", simulate.reps, "Replications per cell (default 10000)");
  s->add_option("--seed", simulate.seed, "Master seed (required here or in the plan)");
  s->add_option("--threads", simulate.threads, "Worker threads (default: all cores)");
  add_estimator(s, simulate.est);
  add_common(s, simulate.common);

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Weibull fit, KS check and bootstrap of the dynamic estimator");
  an->add_option("--data", analyze.data, "CSV or whitespace-separated lifetimes")->required();
  an->add_option("--alpha", analyze.alpha, "Order, in (0,2) excluding 1")->capture_default_str();
  an->add_option("--t", analyze.t, "Truncation times")->delimiter(',')->required();
  an->add_option("--reps", analyze.reps, "Bootstrap resamples")->capture_default_str();
  an->add_option("--seed", analyze.seed, "Seed (required)");
  an->add_option("--resample-size", analyze.resample_size, "Resample size (default: data size)");
  an->add_option("--threads", analyze.threads, "Worker threads (default: all cores)");
  add_estimator(an, analyze.est);
  add_common(an, analyze.common);

  CurveArgs curve;
  auto* cv = app.add_subcommand("curve", "Dynamic measure along a t grid, for plotting");
  cv->footer(kFamilyHelp);
  cv->add_option("--dist", curve.dist, "Family tag for the theoretical column");
  cv->add_option("--params", curve.params, "Family parameters")->delimiter(',');
  cv->add_option("--data", curve.data, "Data file for the estimate column");
  cv->add_option("--alpha", curve.alpha, "Order, in (0,2) excluding 1")->required();
  cv->add_option("--from", curve.from, "First t")->capture_default_str();
  cv->add_option("--to", curve.to, "Last t")->required();
  cv->add_option("--step", curve.step, "Grid step (> 0)")->required();
  add_estimator(cv, curve.est);
  add_common(cv, curve.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kExitInvalid;
  }

  if (c->parsed()) return run_guarded([&] { return run_compute(compute); });
  if (e->parsed()) return run_guarded([&] { return run_estimate(estimate); });
  if (s->parsed()) return run_guarded([&] { return run_simulate(simulate); });
  if (an->parsed()) return run_guarded([&] { return run_analyze(analyze); });
  if (cv->parsed()) return run_guarded([&] { return run_curve(curve); });
  return kExitInvalid;
}
