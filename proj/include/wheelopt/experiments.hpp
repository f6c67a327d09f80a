#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wheelopt/model.hpp"

namespace wheelopt::experiments {

enum class SweepAxis { cost_tolerance, setup_multiplier, inventory_multiplier };
enum class Method { ilp, sa };

std::string to_string(SweepAxis axis);
std::string to_string(Method method);
SweepAxis parse_axis(const std::string& text);
Method parse_method(const std::string& text);

/// Ten-point default grid for each axis.
std::vector<double> default_grid(SweepAxis axis);

struct SaSettings {
  std::size_t iterations = 2000;
  /// Cooling constant as a fraction of the starting wheel's rms.
  double cooling_fraction = 0.05;
  std::int64_t step = 1;
  std::size_t restarts = 3;
  std::size_t max_proposal_attempts = 10000;
};

struct SweepSpec {
  SweepAxis axis = SweepAxis::cost_tolerance;
  std::vector<double> values;
  std::size_t num_schedules = 5;
  std::vector<ItemParams> items;
  HorizonConfig config;
  std::vector<Method> methods{Method::ilp, Method::sa};
  /// One demand seed per schedule; defaults to 1..num_schedules when empty.
  std::vector<std::uint64_t> seeds;
  std::int64_t lambda_max = 100;
  SaSettings sa;

  void validate() const;
  std::vector<std::uint64_t> schedule_seeds() const;
};

enum class Outcome { feasible, infeasible, error };

struct SweepRow {
  SweepAxis axis = SweepAxis::cost_tolerance;
  double axis_value = 0.0;
  std::size_t schedule_id = 0;  // 1-based
  Method method = Method::ilp;
  Outcome outcome = Outcome::infeasible;
  std::optional<double> rms_wheel_time;
  std::optional<double> simulated_total_cost;
  std::optional<double> relaxed_cost;  // ilp only
  std::optional<ProductWheel> wheel;
  std::string error;
  double wallclock_ms = 0.0;

  bool feasible() const { return outcome == Outcome::feasible; }
};

/// The instance a sweep point runs on: tau replaced, or all set-up / all
/// inventory cost rates scaled, depending on the axis.
void apply_axis(SweepAxis axis, double value, std::vector<ItemParams>& items,
                HorizonConfig& config);

/// Runs every (axis value, schedule, method) point. Rows come back in
/// canonical order regardless of `threads` (0 or 1 = sequential).
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0);

/// Sweep parallelism from WHEELOPT_THREADS; unset means hardware concurrency.
unsigned threads_from_env();

}  // namespace wheelopt::experiments
