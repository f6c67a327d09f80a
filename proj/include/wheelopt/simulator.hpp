#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wheelopt/model.hpp"

namespace wheelopt {

enum class SkipPolicy {
  /// Skip an item when its leftover covers max(trigger point, current demand).
  trigger_point,
  /// Produce every item in every period.
  never_skip,
};

struct PeriodRecord {
  std::size_t period_index = 0;  // 1..H
  std::vector<int> skipping;     // 1 = produced, 0 = skipped
  double period_wheel_time = 0.0;
  std::int64_t cycles = 0;
  std::vector<std::int64_t> inventory_after_production;
  double setup_cost = 0.0;
  double inventory_cost = 0.0;

  double cost() const { return setup_cost + inventory_cost; }
};

struct Violation {
  enum class Kind { demand, cost };
  Kind kind = Kind::demand;
  std::size_t item = 0;    // 0-based; demand violations only
  std::size_t period = 0;  // 1-based; demand violations only
  std::string describe() const;
};

struct SimulationResult {
  bool feasible = false;
  std::optional<Violation> violation;
  std::vector<PeriodRecord> periods;
  double rms_wheel_time = 0.0;
  double total_cost = 0.0;
};

/// 0 (skip) iff leftover >= max(trigger_point, current_demand); ties skip.
int skip_decision(std::int64_t leftover_inventory, std::int64_t trigger_point,
                  std::int64_t current_demand);

/// Advances one period: decide skips from the carried-over state, run the
/// resulting wheel for as many whole cycles as fit, and cost the period.
/// For period 1, `prev_inventory` is the initial inventory and `prev_demand`
/// is all zeros.
PeriodRecord step_period(std::span<const std::int64_t> prev_inventory,
                         std::span<const std::int64_t> prev_demand,
                         std::span<const std::int64_t> current_demand, const ProductWheel& wheel,
                         std::span<const ItemParams> items, const HorizonConfig& config,
                         std::size_t period_index, SkipPolicy policy = SkipPolicy::trigger_point);

/// Runs all H periods. The run always covers the whole horizon; the first
/// demand shortfall (or, failing that, a budget overrun) is reported in
/// `violation`.
SimulationResult simulate(const ProductWheel& wheel, const DemandSchedule& schedule,
                          std::span<const ItemParams> items, const HorizonConfig& config,
                          SkipPolicy policy = SkipPolicy::trigger_point);

}  // namespace wheelopt
