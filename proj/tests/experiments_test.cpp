#include <gtest/gtest.h>

#include <cstdlib>

#include "oracles.hpp"
#include "wheelopt/datagen.hpp"
#include "wheelopt/experiments.hpp"
#include "wheelopt/ilp.hpp"
#include "wheelopt/simulator.hpp"

namespace wheelopt::experiments {
namespace {

SweepSpec small_spec(SweepAxis axis, std::vector<double> values) {
  SweepSpec spec;
  spec.axis = axis;
  spec.values = std::move(values);
  spec.num_schedules = 2;
  spec.items = oracle::synthetic_items();
  spec.config = oracle::synthetic_config();
  spec.sa.iterations = 300;
  spec.sa.restarts = 1;
  return spec;
}

// Everything but wallclock.
void expect_same_rows(const std::vector<SweepRow>& a, const std::vector<SweepRow>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].axis_value, b[k].axis_value);
    EXPECT_EQ(a[k].schedule_id, b[k].schedule_id);
    EXPECT_EQ(a[k].method, b[k].method);
    EXPECT_EQ(a[k].outcome, b[k].outcome);
    EXPECT_EQ(a[k].rms_wheel_time, b[k].rms_wheel_time);
    EXPECT_EQ(a[k].simulated_total_cost, b[k].simulated_total_cost);
    EXPECT_EQ(a[k].relaxed_cost, b[k].relaxed_cost);
    EXPECT_EQ(a[k].wheel, b[k].wheel);
  }
}

TEST(DefaultGrid, Values) {
  const auto tau = default_grid(SweepAxis::cost_tolerance);
  ASSERT_EQ(tau.size(), 10u);
  EXPECT_EQ(tau.front(), 20000.0);
  EXPECT_EQ(tau.back(), 65000.0);
  const auto mult = default_grid(SweepAxis::setup_multiplier);
  EXPECT_EQ(mult, (std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
  EXPECT_EQ(default_grid(SweepAxis::inventory_multiplier), mult);
}

TEST(ParseNames, RoundTrip) {
  for (auto axis : {SweepAxis::cost_tolerance, SweepAxis::setup_multiplier, SweepAxis::inventory_multiplier}) {
    EXPECT_EQ(parse_axis(to_string(axis)), axis);
  }
  EXPECT_EQ(parse_method("ilp"), Method::ilp);
  EXPECT_EQ(parse_method(to_string(Method::sa)), Method::sa);
  EXPECT_THROW(parse_axis("tau"), std::invalid_argument);
  EXPECT_THROW(parse_method("milp"), std::invalid_argument);
}

TEST(ApplyAxis, ScalesOrReplaces) {
  auto items = oracle::synthetic_items();
  auto config = oracle::synthetic_config();
  apply_axis(SweepAxis::cost_tolerance, 123.0, items, config);
  EXPECT_EQ(config.cost_tolerance, 123.0);
  EXPECT_EQ(items[0].setup_cost, 100.0);
  apply_axis(SweepAxis::setup_multiplier, 3.0, items, config);
  for (const auto& it : items) EXPECT_EQ(it.setup_cost, 300.0);
  apply_axis(SweepAxis::inventory_multiplier, 2.0, items, config);
  EXPECT_DOUBLE_EQ(items[1].inventory_cost_rate, 0.30);
}

TEST(SweepSpec, Validation) {
  auto spec = small_spec(SweepAxis::cost_tolerance, {1.0, 1.0});
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.values = {};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.values = {1.0};
  spec.num_schedules = 0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.num_schedules = 2;
  spec.seeds = {1};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.seeds = {7, 9};
  EXPECT_NO_THROW(spec.validate());
  EXPECT_EQ(spec.schedule_seeds(), (std::vector<std::uint64_t>{7, 9}));
}

TEST(RunSweep, ZeroBudgetEveryRowInfeasible) {
  const auto rows = run_sweep(small_spec(SweepAxis::cost_tolerance, {0.0}), 1);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& row : rows) {
    EXPECT_EQ(row.outcome, Outcome::infeasible) << to_string(row.method);
    EXPECT_FALSE(row.rms_wheel_time);
    EXPECT_FALSE(row.wheel);
  }
}

TEST(RunSweep, CanonicalOrderAndDeterminism) {
  const auto spec = small_spec(SweepAxis::cost_tolerance, {35000.0, 45000.0, 60000.0});
  const auto a = run_sweep(spec, 1);
  const auto b = run_sweep(spec, 3);
  ASSERT_EQ(a.size(), 3u * 2u * 2u);
  std::size_t k = 0;
  for (double v : spec.values) {
    for (std::size_t s = 1; s <= 2; ++s) {
      for (auto m : {Method::ilp, Method::sa}) {
        EXPECT_EQ(a[k].axis_value, v);
        EXPECT_EQ(a[k].schedule_id, s);
        EXPECT_EQ(a[k].method, m);
        ++k;
      }
    }
  }
  expect_same_rows(a, b);
}

TEST(RunSweep, RowsReproduceFromTheirInputs) {
  auto spec = small_spec(SweepAxis::cost_tolerance, {45000.0, 60000.0});
  const auto rows = run_sweep(spec, 1);
  const auto seeds = spec.schedule_seeds();
  std::size_t feasible_ilp = 0, feasible_sa = 0;
  for (const auto& row : rows) {
    auto items = spec.items;
    auto config = spec.config;
    apply_axis(spec.axis, row.axis_value, items, config);
    const auto d = generate_schedule(
        demand_spec_from_items(items, config.num_periods, seeds[row.schedule_id - 1]));
    if (!row.feasible()) continue;
    ASSERT_TRUE(row.wheel && row.rms_wheel_time);
    if (row.method == Method::ilp) {
      ++feasible_ilp;
      // no-skip identity: rms equals Omega
      EXPECT_DOUBLE_EQ(*row.rms_wheel_time, wheel_time(*row.wheel, items));
      const auto sol = ilp::solve_instance(d, items, config, spec.lambda_max);
      EXPECT_EQ(sol.wheel, row.wheel);
      const auto sim = simulate(*row.wheel, d, items, config, SkipPolicy::never_skip);
      EXPECT_DOUBLE_EQ(*row.simulated_total_cost, sim.total_cost);
      EXPECT_NEAR(*row.relaxed_cost, ilp::relaxed_total_cost(*row.wheel, d, items, config), 1e-6);
    } else {
      ++feasible_sa;
      const auto sim = simulate(*row.wheel, d, items, config);
      EXPECT_TRUE(sim.feasible);
      EXPECT_DOUBLE_EQ(sim.rms_wheel_time, *row.rms_wheel_time);
      EXPECT_DOUBLE_EQ(sim.total_cost, *row.simulated_total_cost);
      EXPECT_FALSE(row.relaxed_cost);
    }
  }
  EXPECT_GT(feasible_ilp, 0u);
  EXPECT_GT(feasible_sa, 0u);
}

TEST(RunSweep, IlpInfeasibilityIsAPrefixAndRmsNonincreasing) {
  auto spec = small_spec(SweepAxis::cost_tolerance, default_grid(SweepAxis::cost_tolerance));
  spec.methods = {Method::ilp};
  const auto rows = run_sweep(spec, 1);
  for (std::size_t s = 1; s <= 2; ++s) {
    bool seen_feasible = false;
    double last = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
      if (row.schedule_id != s) continue;
      if (!row.feasible()) {
        EXPECT_FALSE(seen_feasible) << "tau " << row.axis_value;
        continue;
      }
      seen_feasible = true;
      EXPECT_LE(*row.rms_wheel_time, last);
      last = *row.rms_wheel_time;
    }
  }
}

TEST(RunSweep, ProposalExhaustionKeepsPartialProgress) {
  // One attempt per proposal makes SA exhaustion likely; the row reports the
  // best wheel found before the chain stopped.
  auto spec = small_spec(SweepAxis::cost_tolerance, {60000.0});
  spec.methods = {Method::sa};
  spec.sa.max_proposal_attempts = 1;
  spec.sa.iterations = 50;
  const auto rows = run_sweep(spec, 1);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& row : rows) {
    EXPECT_EQ(row.outcome, Outcome::feasible);
    EXPECT_TRUE(row.error.empty());
  }
}

TEST(ThreadsFromEnv, ParsesOrDefaults) {
  ::setenv("WHEELOPT_THREADS", "3", 1);
  EXPECT_EQ(threads_from_env(), 3u);
  ::setenv("WHEELOPT_THREADS", "0", 1);
  EXPECT_EQ(threads_from_env(), 0u);
  ::setenv("WHEELOPT_THREADS", "x", 1);
  EXPECT_THROW(threads_from_env(), std::invalid_argument);
  ::unsetenv("WHEELOPT_THREADS");
  EXPECT_GE(threads_from_env(), 1u);
}

}  // namespace
}  // namespace wheelopt::experiments
