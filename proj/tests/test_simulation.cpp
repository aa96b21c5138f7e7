#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "crmhe/simulation.hpp"

using namespace crmhe;

TEST(BiasMse, Examples) {
  std::vector<double> ones = {1.0, 1.0, 1.0};
  auto a = bias_mse(ones, 1.0);
  EXPECT_EQ(a.bias, 0.0);
  EXPECT_EQ(a.mse, 0.0);
  std::vector<double> spread = {0.0, 2.0};
  auto b = bias_mse(spread, 1.0);
  EXPECT_EQ(b.bias, 0.0);
  EXPECT_EQ(b.mse, 1.0);
  std::vector<double> three = {1.1, 0.9, 1.2};
  auto c = bias_mse(three, 1.0);
  EXPECT_NEAR(c.bias, 0.2 / 3.0, 1e-15);
  EXPECT_NEAR(c.mse, 0.02, 1e-15);
  EXPECT_THROW(bias_mse(std::vector<double>{}, 1.0), DomainError);
}

TEST(BiasMse, MseAtLeastSquaredBias) {
  RngStream rng(1, {});
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + trial % 17);
    for (auto& x : v) x = rng.uniform_open() * 10.0 - 3.0;
    auto r = bias_mse(v, rng.uniform_open());
    EXPECT_GE(r.mse, r.bias * r.bias - 1e-12);
  }
}

namespace {

SimulationPlan small_plan() {
  SimulationPlan p;
  p.dist = Distribution::weibull(5.0, 1.0);
  p.alpha = 1.5;
  p.n_values = {20, 40};
  p.reps = 60;
  p.master_seed = 11;
  p.threads = 1;
  return p;
}

void expect_same(const SimulationReport& a, const SimulationReport& b) {
  ASSERT_EQ(a.cells.size(), b.cells.size());
  EXPECT_EQ(a.config_hash, b.config_hash);
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    EXPECT_EQ(a.cells[i].bias, b.cells[i].bias);
    EXPECT_EQ(a.cells[i].mse, b.cells[i].mse);
    EXPECT_EQ(a.cells[i].mean_estimate, b.cells[i].mean_estimate);
    EXPECT_EQ(a.cells[i].reps, b.cells[i].reps);
  }
}

}  // namespace

TEST(Simulation, ReportInvariants) {
  auto plan = small_plan();
  plan.t_values = {0.0, 0.5};
  auto r = run_simulation(plan);
  ASSERT_EQ(r.cells.size(), 4u);
  EXPECT_EQ(r.cells[0].n, 20u);
  EXPECT_EQ(r.cells[1].n, 40u);
  EXPECT_EQ(*r.cells[2].t, 0.5);
  for (const auto& c : r.cells) {
    EXPECT_EQ(c.reps, 60u);
    EXPECT_TRUE(c.error.empty());
    EXPECT_NEAR(c.bias, c.mean_estimate - c.true_value, 1e-14);
    EXPECT_GE(c.mse, c.bias * c.bias - 1e-12);
    EXPECT_NEAR(c.true_value, dcrmhe(plan.dist, plan.alpha, *c.t).value, 0.0);
  }
  EXPECT_EQ(r.seed, 11u);
  EXPECT_EQ(r.config_hash.size(), 16u);
}

TEST(Simulation, SingleReplicationMseIsSquaredBias) {
  auto plan = small_plan();
  plan.reps = 1;
  for (const auto& c : run_simulation(plan).cells) EXPECT_EQ(c.mse, c.bias * c.bias);
}

TEST(Simulation, DeterministicAcrossThreadCounts) {
  auto plan = small_plan();
  plan.t_values = {0.3};
  auto one = run_simulation(plan);
  plan.threads = 4;
  auto four = run_simulation(plan);
  plan.threads = 3;
  auto three = run_simulation(plan);
  expect_same(one, four);
  expect_same(one, three);
}

TEST(Simulation, SeedChangesResults) {
  auto plan = small_plan();
  auto a = run_simulation(plan);
  plan.master_seed = 12;
  auto b = run_simulation(plan);
  EXPECT_NE(a.cells[0].bias, b.cells[0].bias);
  EXPECT_NE(a.config_hash, b.config_hash);
}

TEST(Simulation, DivergentTruthRecordedPerCell) {
  SimulationPlan p;
  p.dist = Distribution::gpd(1.0, 1.0);
  p.alpha = 1.5;
  p.n_values = {10};
  p.reps = 3;
  p.master_seed = 1;
  auto r = run_simulation(p);
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_NE(r.cells[0].error.find("divergent"), std::string::npos);
  EXPECT_EQ(r.cells[0].reps, 0u);
  EXPECT_TRUE(std::isnan(r.cells[0].bias));
}

TEST(Simulation, BeyondDataReplicationsCounted) {
  // t far in the tail: some samples end before t and those replications fail.
  SimulationPlan p;
  p.dist = Distribution::exponential(1.0);
  p.alpha = 1.5;
  p.n_values = {5};
  p.t_values = {9.0};
  p.reps = 40;
  p.master_seed = 3;
  auto r = run_simulation(p);
  EXPECT_LT(r.cells[0].reps, 40u);
  EXPECT_NE(r.cells[0].error.find("replications failed"), std::string::npos);
}

TEST(Simulation, PlanValidation) {
  auto p = small_plan();
  p.reps = 0;
  EXPECT_THROW(run_simulation(p), DomainError);
  p = small_plan();
  p.n_values = {1};
  EXPECT_THROW(run_simulation(p), DomainError);
  p = small_plan();
  p.n_values.clear();
  EXPECT_THROW(run_simulation(p), DomainError);
  p = small_plan();
  p.dist = Distribution::uniform(0.0, 1.0);
  p.t_values = {1.5};
  EXPECT_THROW(run_simulation(p), DomainError);
  p = small_plan();
  p.alpha = 1.0;
  EXPECT_THROW(run_simulation(p), DomainError);
}

TEST(Plan, Parses) {
  std::istringstream in(R"(# a plan
family = weibull
params = 5, 1
alpha = 0.5
n = 30, 90
t = 0.5, 1.0   # trailing comment
reps = 1000
seed = 42
kernel = epanechnikov
bandwidth = 0.3
grid_points = 1024
)");
  auto p = parse_plan(in);
  EXPECT_EQ(p.dist.describe(), "weibull(5,1)");
  EXPECT_EQ(p.alpha, 0.5);
  EXPECT_EQ(p.n_values, (std::vector<std::size_t>{30, 90}));
  EXPECT_EQ(p.t_values, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(p.reps, 1000u);
  EXPECT_EQ(p.master_seed, 42u);
  EXPECT_EQ(p.estimator.kernel, Kernel::epanechnikov);
  EXPECT_EQ(*p.estimator.fixed_bandwidth, 0.3);
  EXPECT_EQ(p.estimator.grid_points, 1024);
}

TEST(Plan, Errors) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_plan(in);
  };
  EXPECT_THROW(parse("family = exp\nparams = 1\nalpha = 1.5\nn = 10\n"), DomainError);  // no seed
  EXPECT_THROW(parse("params = 1\nalpha = 1.5\nn = 10\nseed = 1\n"), DomainError);      // no family
  EXPECT_THROW(parse("family = exp\nparams = 1\nalpha = 1.5\nn = 10\nseed = -1\n"), DomainError);
  EXPECT_THROW(parse("family = exp\nparams = 1\nalpha = x\nn = 10\nseed = 1\n"), DomainError);
  EXPECT_THROW(parse("family = exp\nparams = 1\nalpha = 1.5\nn = 10.5\nseed = 1\n"), DomainError);
  EXPECT_THROW(parse("family = exp\nparams = 1\ncolour = red\nn = 10\nseed = 1\n"), DomainError);
  EXPECT_THROW(parse("family = exp\nparams = 1\nalpha 1.5\nn = 10\nseed = 1\n"), DomainError);
  EXPECT_THROW(parse("family = exp\nparams = 1, 2\nalpha = 1.5\nn = 10\nseed = 1\n"), DomainError);
}

TEST(Hash, Fnv) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(hex64(fnv1a64("a")), "af63dc4c8601ec8c");
}
