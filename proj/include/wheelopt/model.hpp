#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wheelopt {

/// Per-item production constants.
///
/// A batch of the item holds `batch_size` units and takes `batch_time` to
/// produce. `setup_cost` is charged once per wheel cycle in which the item is
/// produced; `inventory_cost_rate` is charged per unit carried into a period.
/// `demand_mean` / `demand_std` only drive synthetic demand generation.
struct ItemParams {
  std::string name;
  double batch_time = 1.0;
  std::int64_t batch_size = 1;
  double setup_cost = 0.0;
  double inventory_cost_rate = 0.0;
  std::int64_t initial_inventory = 0;
  std::int64_t trigger_point = 0;
  double demand_mean = 0.0;
  double demand_std = 0.0;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

/// Batch counts per item for one cycle of the wheel. Every count is >= 1.
class ProductWheel {
 public:
  explicit ProductWheel(std::vector<std::int64_t> batches);

  std::span<const std::int64_t> batches() const { return batches_; }
  std::size_t size() const { return batches_.size(); }
  std::int64_t operator[](std::size_t i) const { return batches_[i]; }

  /// "10,8,9"
  std::string to_string(char separator = ',') const;
  /// Parses a separator-joined integer list; throws std::invalid_argument.
  static ProductWheel parse(const std::string& text, char separator = ',');

  friend bool operator==(const ProductWheel&, const ProductWheel&) = default;
  friend auto operator<=>(const ProductWheel&, const ProductWheel&) = default;

 private:
  std::vector<std::int64_t> batches_;
};

struct HorizonConfig {
  std::size_t num_items = 1;
  std::size_t num_periods = 1;
  double period_length = 1.0;
  double cost_tolerance = 0.0;

  void validate() const;
};

/// N x H matrix of nonnegative integer demands.
///
/// Items are 0-based; periods are 1-based (1..H). Period 0 is accepted and
/// always yields 0, which is the demand deducted before the first period.
class DemandSchedule {
 public:
  DemandSchedule(std::size_t num_items, std::size_t num_periods);
  DemandSchedule(std::size_t num_items, std::size_t num_periods,
                 std::vector<std::int64_t> item_major_values);

  std::size_t num_items() const { return num_items_; }
  std::size_t num_periods() const { return num_periods_; }

  std::int64_t operator()(std::size_t item, std::size_t period) const;
  void set(std::size_t item, std::size_t period, std::int64_t value);

  /// Demand of every item in one period (period 0 gives zeros).
  std::vector<std::int64_t> period_column(std::size_t period) const;
  /// Sum of D_item^j for j = 1..last_period.
  std::int64_t cumulative(std::size_t item, std::size_t last_period) const;
  double mean(std::size_t item) const;

  friend bool operator==(const DemandSchedule&, const DemandSchedule&) = default;

 private:
  std::size_t index(std::size_t item, std::size_t period) const;

  std::size_t num_items_;
  std::size_t num_periods_;
  std::vector<std::int64_t> values_;
};

/// Checks that items, config and (optionally) the schedule agree in shape and
/// that every record is individually valid.
void validate_instance(std::span<const ItemParams> items, const HorizonConfig& config);
void validate_instance(std::span<const ItemParams> items, const HorizonConfig& config,
                       const DemandSchedule& schedule);

/// Sum of batches * batch_time over all items.
double wheel_time(const ProductWheel& wheel, std::span<const ItemParams> items);

/// Wheel time of one period. `skipping[i]` is 1 when item i is produced in
/// the period and 0 when it is skipped.
double period_wheel_time(const ProductWheel& wheel, std::span<const ItemParams> items,
                         std::span<const int> skipping);

/// sqrt(mean of squares); throws on empty input.
double rms_wheel_time(std::span<const double> period_times);

/// Complete wheel cycles that fit in a period; 0 when nothing is produced.
std::int64_t cycles_in_period(double period_length, double period_wheel_time);

}  // namespace wheelopt
