// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "crmhe/crmhe.hpp"
#include "oracles.hpp"

using namespace crmhe;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double v, int digits = 5) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> grid(double lo, double hi, int points) {
  std::vector<double> g;
  for (int i = 0; i < points; ++i) g.push_back(lo + (hi - lo) * i / (points - 1));
  return g;
}

// 100 random valid parameter draws per family.
Outcome closed_form_agreement() {
  Outcome o;
  auto start = Clock::now();
  std::mt19937_64 gen(20260101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) {
    return std::exp(std::log(lo) + unit(gen) * (std::log(hi) - std::log(lo)));
  };
  const char* names[] = {"uniform", "exp", "pareto1", "pareto2", "gpd", "weibull"};
  double worst = 0.0;
  for (int family = 0; family < 6; ++family) {
    double family_worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      double alpha;
      do alpha = 0.02 + 1.96 * unit(gen);
      while (std::abs(alpha - 1.0) < 0.01);
      const double p = 2.0 - alpha;
      Distribution d = Distribution::exponential(1.0);
      switch (family) {
        case 0: {
          double lo = unit(gen) < 0.5 ? 0.0 : log_uniform(0.01, 5.0);
          d = Distribution::uniform(lo, lo + log_uniform(0.1, 10.0));
          break;
        }
        case 1: d = Distribution::exponential(log_uniform(0.1, 10.0)); break;
        case 2: d = Distribution::pareto_i(log_uniform(0.1, 10.0), (1.0 + log_uniform(0.05, 5.0)) / p); break;
        case 3: d = Distribution::pareto_ii(log_uniform(0.1, 10.0), (1.0 + log_uniform(0.05, 5.0)) / p); break;
        case 4: {
          double a;
          do a = -0.95 + 4.0 * unit(gen);
          while (p * (1.0 + a) - a < 0.05);
          d = Distribution::gpd(a, log_uniform(0.1, 10.0));
          break;
        }
        default: d = Distribution::weibull(log_uniform(0.3, 10.0), log_uniform(0.1, 10.0));
      }
      EntropyQuery q;
      q.alpha = alpha;
      double diff = std::abs(crmhe_closed_form(d, alpha).value - crmhe_quadrature(d, q).value);
      family_worst = std::max(family_worst, diff);
    }
    o.require(family_worst <= 1e-8, std::string(names[family]) + " max diff " + fmt_g(family_worst));
    worst = std::max(worst, family_worst);
  }
  double elapsed = seconds_since(start);
  o.require(elapsed < 30.0, "runtime " + fmt(elapsed, 1) + " s");
  if (o.pass) o.detail = "600 draws, max diff " + fmt_g(worst) + ", " + fmt(elapsed, 2) + " s";
  return o;
}

Outcome weibull_fit_column() {
  Outcome o;
  auto start = Clock::now();
  const double ts[] = {0.9, 1.0, 1.1, 1.2, 1.3};
  const double published[] = {1.3142, 1.1344, 0.9598, 0.7909, 0.6281};
  auto d = Distribution::weibull(3.85819, 2.3409);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    double v = dcrmhe(d, 1.5, ts[i]).value;
    worst = std::max(worst, std::abs(v - published[i]));
    o.require(std::abs(v - published[i]) <= 2e-3, "t=" + fmt(ts[i], 1) + " got " + fmt(v));
  }
  double elapsed = seconds_since(start);
  o.require(elapsed < 1.0, "runtime " + fmt(elapsed, 2) + " s");
  if (o.pass) o.detail = "max |diff| " + fmt_g(worst) + ", " + fmt(elapsed, 3) + " s";
  return o;
}

Outcome static_study() {
  Outcome o;
  auto start = Clock::now();
  SimulationPlan plan;
  plan.dist = Distribution::weibull(5.0, 1.0);
  plan.alpha = 1.5;
  plan.n_values = {30, 50, 70, 90};
  plan.reps = 10000;
  plan.master_seed = 20240601;
  auto report = run_simulation(plan);
  std::string cells;
  for (const auto& c : report.cells) {
    o.require(c.error.empty(), "n=" + std::to_string(c.n) + ": " + c.error);
    cells += " n=" + std::to_string(c.n) + " (" + fmt(c.bias, 4) + ", " + fmt(c.mse, 4) + ")";
  }
  const auto& n30 = report.cells[0];
  const auto& n90 = report.cells[3];
  o.require(std::abs(n30.bias - 0.0334) <= 0.005, "n=30 bias " + fmt(n30.bias, 4));
  o.require(std::abs(n30.mse - 0.0074) <= 0.002, "n=30 mse " + fmt(n30.mse, 4));
  o.require(std::abs(n90.bias - 0.0240) <= 0.005, "n=90 bias " + fmt(n90.bias, 4));
  o.require(std::abs(n90.mse - 0.0026) <= 0.002, "n=90 mse " + fmt(n90.mse, 4));
  for (std::size_t i = 1; i < report.cells.size(); ++i) {
    o.require(report.cells[i].mse < report.cells[i - 1].mse,
              "mse not decreasing at n=" + std::to_string(report.cells[i].n));
  }
  double elapsed = seconds_since(start);
  o.require(elapsed < 600.0, "runtime " + fmt(elapsed, 0) + " s");
  if (o.pass) o.detail = "(bias, mse):" + cells + ", " + fmt(elapsed, 0) + " s";
  return o;
}

Outcome dynamic_study() {
  Outcome o;
  auto start = Clock::now();
  SimulationPlan plan;
  plan.dist = Distribution::weibull(5.0, 1.0);
  plan.alpha = 0.5;
  plan.n_values = {30, 50, 70, 90};
  plan.t_values = {0.5, 0.75, 1.0};
  plan.reps = 10000;
  plan.master_seed = 20240602;
  const double published[3][4] = {{-0.0061, -0.0041, -0.0034, -0.0029},
                                   {-0.0251, -0.0205, -0.0181, -0.0164},
                                   {-0.0345, -0.0291, -0.0259, -0.0237}};
  auto report = run_simulation(plan);
  double worst = 0.0;
  for (std::size_t ti = 0; ti < 3; ++ti) {
    for (std::size_t ni = 0; ni < 4; ++ni) {
      const auto& c = report.cells[ti * 4 + ni];
      std::string where = "t=" + fmt(*c.t, 2) + " n=" + std::to_string(c.n);
      o.require(c.error.empty(), where + ": " + c.error);
      o.require(c.bias < 0.0, where + " bias not negative " + fmt(c.bias, 4));
      double gap = std::abs(c.bias - published[ti][ni]);
      worst = std::max(worst, gap);
      o.require(gap <= 0.005, where + " bias " + fmt(c.bias, 4) + " vs " + fmt(published[ti][ni], 4));
    }
  }
  double elapsed = seconds_since(start);
  if (o.pass) o.detail = "12 cells negative, max |bias gap| " + fmt(worst, 4) + ", " + fmt(elapsed, 0) + " s";
  return o;
}

std::vector<double> surrogate_sample() {
  RngStream rng(2026, {0});
  return Distribution::weibull(3.85819, 2.3409).sample(40, rng);
}

Outcome surrogate_bootstrap() {
  Outcome o;
  auto start = Clock::now();
  auto xs = surrogate_sample();
  auto fit = fit_weibull_mle(xs);
  const double ts[] = {0.9, 1.0, 1.1, 1.2, 1.3};
  BootstrapOptions opt;
  opt.reps = 10000;
  opt.seed = 2026;
  auto report = bootstrap_dcrmhe(xs, fit.distribution(), 1.5, ts, opt);
  const auto& row = report.rows[0];
  o.require(row.error.empty(), row.error);
  o.require(row.bias > 0.0, "bias not positive " + fmt(row.bias, 4));
  o.require(row.bias >= 0.05 && row.bias <= 0.15, "bias " + fmt(row.bias, 4) + " outside [0.05, 0.15]");
  double elapsed = seconds_since(start);
  if (o.pass) {
    o.detail = "fit weibull(" + fmt(fit.shape, 3) + ", " + fmt(fit.scale, 3) + "), bias at t=0.9 " +
               fmt(row.bias, 4) + ", " + fmt(elapsed, 0) + " s";
  }
  return o;
}

Outcome property_suite() {
  Outcome o;
  const std::vector<Distribution> laws = {
      Distribution::uniform(0.0, 2.0),  Distribution::uniform(1.25, 1.75), Distribution::exponential(1.0),
      Distribution::pareto_i(1.0, 3.0), Distribution::pareto_ii(1.0, 4.0),  Distribution::gpd(0.5, 1.0),
      Distribution::gpd(-0.5, 1.0),     Distribution::weibull(2.0, 1.0),    Distribution::weibull(0.7, 1.5)};
  const double alphas[] = {0.5, 1.5};

  double hazard_worst = 0.0;
  int hazard_points = 0;
  for (const auto& d : laws) {
    for (double alpha : alphas) {
      for (double t : {0.1, 0.3, 0.6, 0.9, 1.2, 1.5, 1.7, 2.5}) {
        double lo = d.support_left();
        if (t >= d.support_right() - 0.01 || (lo > 0.0 && t <= lo + 0.01)) continue;
        hazard_worst = std::max(hazard_worst, std::abs(hazard_relation_residual(d, alpha, t)));
        ++hazard_points;
      }
    }
  }
  o.require(hazard_worst <= 1e-4, "hazard residual " + fmt_g(hazard_worst));

  double exp_std = 0.0;
  for (double alpha : alphas) {
    std::vector<double> v;
    for (double t : grid(0.0, 10.0, 41)) v.push_back(dcrmhe(Distribution::exponential(1.0), alpha, t).value);
    double mean = 0.0, var = 0.0;
    for (double x : v) mean += x / v.size();
    for (double x : v) var += (x - mean) * (x - mean) / v.size();
    exp_std = std::max(exp_std, std::sqrt(var));
  }
  o.require(exp_std <= 1e-8, "exponential std " + fmt_g(exp_std));

  double gpd_worst = 0.0;
  for (double shape : {0.5, -0.5}) {
    auto d = Distribution::gpd(shape, 1.0);
    auto g = grid(0.0, std::min(3.0, 0.9 * d.support_right()), 25);
    for (double alpha : alphas) {
      auto r = gpd_characterization_residuals(d, alpha, g);
      gpd_worst = std::max({gpd_worst, r.linearity, r.hazard_relation, r.mrl_relation});
    }
  }
  o.require(gpd_worst <= 1e-8, "gpd residual " + fmt_g(gpd_worst));

  for (const auto& u : {Distribution::uniform(0.0, 2.0), Distribution::uniform(1.25, 1.75)}) {
    auto g = grid(0.0, u.support_right() * 0.98, 25);
    auto dec = classify_monotonicity(u, 1.5, g);
    auto inc = classify_monotonicity(u, 0.5, g);
    o.require(dec.cls == Monotonicity::decreasing && dec.hazard_bound_violations == 0,
              u.describe() + " alpha=1.5 class " + monotonicity_name(dec.cls));
    o.require(inc.cls == Monotonicity::increasing && inc.hazard_bound_violations == 0,
              u.describe() + " alpha=0.5 class " + monotonicity_name(inc.cls));
  }

  for (double alpha : alphas) {
    auto r = hazard_order_entropy_check(Distribution::exponential(1.0), Distribution::exponential(2.0), alpha,
                                        grid(0.0, 5.0, 11));
    o.require(r.verdict == Verdict::holds, "hazard order alpha=" + fmt(alpha, 1) + " " + verdict_name(r.verdict));
  }

  double ph_worst = 0.0;
  for (const auto& d : {Distribution::exponential(1.3), Distribution::weibull(2.0, 1.5),
                        Distribution::uniform(0.0, 2.0), Distribution::pareto_ii(1.0, 6.0)}) {
    for (double alpha : alphas) {
      for (double theta : {0.6, 1.4, 2.0}) {
        auto r = ph_transform_value(d, alpha, theta);
        if (r.beta_in_range) ph_worst = std::max(ph_worst, r.discrepancy());
      }
    }
  }
  o.require(ph_worst <= 1e-9, "ph discrepancy " + fmt_g(ph_worst));

  double affine_worst = 0.0;
  for (double alpha : alphas) {
    for (double a : {0.3, 2.0, 7.0}) {
      auto x = Distribution::weibull(2.5, 1.2);
      auto y = Distribution::weibull(2.5, 1.2 * a);
      affine_worst = std::max(affine_worst, std::abs(affine_transform_value(crmhe::crmhe(x, alpha), a, 0.0, alpha) -
                                                     crmhe::crmhe(y, alpha).value));
      for (double t : {0.4, 1.5}) {
        affine_worst =
            std::max(affine_worst, std::abs(affine_transform_value(dcrmhe(x, alpha, t / a), a, 0.0, alpha) -
                                            dcrmhe(y, alpha, t).value));
      }
    }
    for (double b : {0.5, 1.25}) {
      auto shifted = Distribution::uniform(b, b + 1.0);
      affine_worst = std::max(affine_worst, std::abs(affine_transform_value(crmhe::crmhe(Distribution::uniform(0.0, 1.0), alpha), 1.0, b, alpha) -
                                                     crmhe_closed_form(shifted, alpha, Origin::support_left).value));
    }
  }
  o.require(affine_worst <= 1e-9, "affine discrepancy " + fmt_g(affine_worst));

  int t0_mismatch = 0;
  for (const auto& d : laws) {
    for (double alpha : alphas) {
      EntropyQuery q;
      q.alpha = alpha;
      q.t = 0.0;
      if (dcrmhe_quadrature(d, q).value != crmhe_quadrature(d, q).value) ++t0_mismatch;
      if (dcrmhe_closed_form(d, alpha, 0.0, Origin::zero).value != crmhe_closed_form(d, alpha).value) ++t0_mismatch;
    }
  }
  o.require(t0_mismatch == 0, std::to_string(t0_mismatch) + " t=0 mismatches");

  if (o.pass) {
    o.detail = "hazard " + fmt_g(hazard_worst) + " over " + std::to_string(hazard_points) + " points, exp std " +
               fmt_g(exp_std) + ", gpd " + fmt_g(gpd_worst) + ", ph " + fmt_g(ph_worst) + ", affine " +
               fmt_g(affine_worst);
  }
  return o;
}

Outcome thread_determinism() {
  Outcome o;
  const std::string cli = CRMHE_CLI;
  std::string data = "/tmp/crmhe_acceptance_surrogate.csv";
  {
    std::ofstream out(data);
    for (double x : surrogate_sample()) out << format_number(x) << '\n';
  }
  const std::vector<std::string> commands = {
      "simulate --dist weibull --params 5,1 --alpha 1.5 --n 30,50 --reps 200 --seed 17 --csv",
      "simulate --dist weibull --params 5,1 --alpha 0.5 --n 30 --t 0.5,1.0 --reps 200 --seed 18 --csv",
      "analyze --data " + data + " --alpha 1.5 --t 0.9,1.3 --reps 200 --seed 19 --csv"};
  for (const auto& cmd : commands) {
    std::string reference;
    for (int threads : {1, 2, 5}) {
      auto r = oracle::run(cli + " " + cmd + " --threads " + std::to_string(threads));
      o.require(r.status == 0, "exit " + std::to_string(r.status) + " for " + cmd);
      if (threads == 1) {
        reference = r.out;
      } else {
        o.require(r.out == reference, "output differs at --threads " + std::to_string(threads) + " for " + cmd);
      }
    }
    o.require(!reference.empty(), "empty output for " + cmd);
  }
  std::remove(data.c_str());
  if (o.pass) o.detail = "3 commands identical at --threads 1, 2, 5";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"closed-form vs quadrature sweep", closed_form_agreement},
      {"fitted weibull theoretical column", weibull_fit_column},
      {"weibull(5,1) static estimator bias/mse", static_study},
      {"weibull(5,1) dynamic estimator bias at alpha 0.5", dynamic_study},
      {"surrogate bootstrap bias", surrogate_bootstrap},
      {"property suite", property_suite},
      {"thread-count determinism", thread_determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s AC%d %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
