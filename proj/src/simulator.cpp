#include "wheelopt/simulator.hpp"

#include <algorithm>
#include <stdexcept>

namespace wheelopt {

std::string Violation::describe() const {
  if (kind == Kind::cost) return "cost constraint: total cost exceeds cost tolerance";
  return "demand constraint: item " + std::to_string(item + 1) + " short of demand in period " +
         std::to_string(period);
}

int skip_decision(std::int64_t leftover_inventory, std::int64_t trigger_point,
                  std::int64_t current_demand) {
  return leftover_inventory >= std::max(trigger_point, current_demand) ? 0 : 1;
}

PeriodRecord step_period(std::span<const std::int64_t> prev_inventory,
                         std::span<const std::int64_t> prev_demand,
                         std::span<const std::int64_t> current_demand, const ProductWheel& wheel,
                         std::span<const ItemParams> items, const HorizonConfig& config,
                         std::size_t period_index, SkipPolicy policy) {
  const std::size_t n = items.size();
  if (wheel.size() != n || prev_inventory.size() != n || prev_demand.size() != n ||
      current_demand.size() != n) {
    throw std::invalid_argument("step_period: dimension mismatch");
  }

  PeriodRecord rec;
  rec.period_index = period_index;
  rec.skipping.resize(n);
  std::vector<std::int64_t> leftover(n);
  for (std::size_t i = 0; i < n; ++i) {
    leftover[i] = prev_inventory[i] - prev_demand[i];
    rec.skipping[i] = policy == SkipPolicy::never_skip
                          ? 1
                          : skip_decision(leftover[i], items[i].trigger_point, current_demand[i]);
  }

  rec.period_wheel_time = period_wheel_time(wheel, items, rec.skipping);
  rec.cycles = cycles_in_period(config.period_length, rec.period_wheel_time);

  rec.inventory_after_production.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t produced = wheel[i] * items[i].batch_size * rec.skipping[i] * rec.cycles;
    rec.inventory_after_production[i] = leftover[i] + produced;
    rec.setup_cost += items[i].setup_cost * rec.skipping[i] * static_cast<double>(rec.cycles);
    rec.inventory_cost += items[i].inventory_cost_rate * static_cast<double>(leftover[i]);
  }
  return rec;
}

SimulationResult simulate(const ProductWheel& wheel, const DemandSchedule& schedule,
                          std::span<const ItemParams> items, const HorizonConfig& config,
                          SkipPolicy policy) {
  const std::size_t n = items.size();
  if (wheel.size() != n || schedule.num_items() != n ||
      schedule.num_periods() != config.num_periods) {
    throw std::invalid_argument("simulate: dimension mismatch");
  }

  SimulationResult result;
  result.periods.reserve(config.num_periods);

  std::vector<std::int64_t> inventory(n);
  for (std::size_t i = 0; i < n; ++i) inventory[i] = items[i].initial_inventory;
  std::vector<std::int64_t> prev_demand(n, 0);
  std::vector<double> period_times;
  period_times.reserve(config.num_periods);

  for (std::size_t h = 1; h <= config.num_periods; ++h) {
    const auto demand = schedule.period_column(h);
    auto rec = step_period(inventory, prev_demand, demand, wheel, items, config, h, policy);

    for (std::size_t i = 0; i < n && !result.violation; ++i) {
      if (rec.inventory_after_production[i] < demand[i]) {
        result.violation = Violation{Violation::Kind::demand, i, h};
      }
    }
    result.total_cost += rec.cost();
    period_times.push_back(rec.period_wheel_time);
    inventory = rec.inventory_after_production;
    prev_demand = demand;
    result.periods.push_back(std::move(rec));
  }

  result.rms_wheel_time = rms_wheel_time(period_times);
  if (!result.violation && result.total_cost > config.cost_tolerance) {
    result.violation = Violation{Violation::Kind::cost, 0, 0};
  }
  result.feasible = !result.violation.has_value();
  return result;
}

}  // namespace wheelopt
