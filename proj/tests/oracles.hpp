#pragma once

// Independent reference implementations used only by tests. Nothing here
// calls into the simulator, ilp or sa modules.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "wheelopt/model.hpp"

namespace wheelopt::oracle {

struct Instance {
  std::vector<ItemParams> items;
  HorizonConfig config;
  DemandSchedule schedule;
};

/// The three-item synthetic instance used by the sweeps.
std::vector<ItemParams> synthetic_items();
HorizonConfig synthetic_config(double cost_tolerance = 40000.0);

/// t=1, M=10, T=100, H=2, D=(50,50), I0=0, p=10, k=0.1 with the given budget.
Instance single_item_instance(double cost_tolerance);

/// Single item over 12 periods whose rms landscape has local minima at
/// lambda = 18, 23, 30, 36, 45 and a unique global minimum at lambda = 2.
Instance sa_landscape_instance();

/// Random desk-scale instance: 1..max_items items, 1..max_periods periods.
Instance random_instance(std::mt19937_64& rng, std::size_t max_items, std::size_t max_periods);

struct ReferenceRun {
  bool feasible = false;
  bool demand_ok = true;
  double total_cost = 0.0;
  double rms = 0.0;
  std::vector<double> wheel_times;
  std::vector<std::int64_t> cycles;
  std::vector<std::vector<int>> produced;          // [period][item]
  std::vector<std::vector<std::int64_t>> inventory;  // [period][item], after production
};

/// Straight-line simulation written directly from the model equations.
ReferenceRun reference_simulate(const std::vector<std::int64_t>& lambda, const Instance& inst,
                                bool allow_skipping = true);

/// Relaxed no-skip model evaluated by stepping the fractional-cycle
/// recursion period by period.
struct RelaxedEval {
  bool demand_ok = true;
  double total_cost = 0.0;
  bool feasible = false;
  std::vector<bool> demand_rows;  // item-major, like the linear rows
};
RelaxedEval relaxed_eval(const std::vector<std::int64_t>& lambda, const Instance& inst,
                         double slack = 1e-9);

struct Enumerated {
  std::optional<std::vector<std::int64_t>> argmin;
  double objective = 0.0;
};

/// Visits every lambda in [1, lambda_max]^N in lexicographic order.
template <typename Visit>
void for_each_box_point(std::size_t n, std::int64_t lambda_max, Visit&& visit) {
  std::vector<std::int64_t> lambda(n, 1);
  while (true) {
    visit(lambda);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (lambda[k] < lambda_max) {
        ++lambda[k];
        for (std::size_t j = k + 1; j < n; ++j) lambda[j] = 1;
        break;
      }
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

/// Brute-force minimum of sum t_i lambda_i over the relaxed model.
Enumerated enumerate_relaxed(const Instance& inst, std::int64_t lambda_max);

/// Brute-force minimum of rms over the reference simulator (skipping on).
Enumerated enumerate_simulated(const Instance& inst, std::int64_t lambda_max);

}  // namespace wheelopt::oracle
