#include "wheelopt/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wheelopt {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::string item_label(const ItemParams& item) {
  return item.name.empty() ? std::string("item") : "item '" + item.name + "'";
}

}  // namespace

void ItemParams::validate() const {
  const auto label = item_label(*this);
  require(batch_time > 0.0 && std::isfinite(batch_time), label + ": batch_time must be > 0");
  require(batch_size >= 1, label + ": batch_size must be >= 1");
  require(setup_cost >= 0.0, label + ": setup_cost must be >= 0");
  require(inventory_cost_rate >= 0.0, label + ": inventory_cost_rate must be >= 0");
  require(initial_inventory >= 0, label + ": initial_inventory must be >= 0");
  require(trigger_point >= 0, label + ": trigger_point must be >= 0");
  require(demand_std >= 0.0, label + ": demand_std must be >= 0");
}

ProductWheel::ProductWheel(std::vector<std::int64_t> batches) : batches_(std::move(batches)) {
  require(!batches_.empty(), "product wheel must contain at least one item");
  for (std::size_t i = 0; i < batches_.size(); ++i) {
    require(batches_[i] >= 1, "product wheel batch count for item " + std::to_string(i + 1) +
                                  " must be >= 1");
  }
}

std::string ProductWheel::to_string(char separator) const {
  std::string out;
  for (std::size_t i = 0; i < batches_.size(); ++i) {
    if (i > 0) out += separator;
    out += std::to_string(batches_[i]);
  }
  return out;
}

ProductWheel ProductWheel::parse(const std::string& text, char separator) {
  std::vector<std::int64_t> values;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, separator)) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("wheel: '" + token + "' is not an integer");
    }
    while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
    require(used == token.size(), "wheel: '" + token + "' is not an integer");
    values.push_back(v);
  }
  return ProductWheel(std::move(values));
}

void HorizonConfig::validate() const {
  require(num_items >= 1, "horizon: num_items must be >= 1");
  require(num_periods >= 1, "horizon: num_periods must be >= 1");
  require(period_length > 0.0 && std::isfinite(period_length),
          "horizon: period_length must be > 0");
  require(cost_tolerance >= 0.0, "horizon: cost_tolerance must be >= 0");
}

DemandSchedule::DemandSchedule(std::size_t num_items, std::size_t num_periods)
    : num_items_(num_items), num_periods_(num_periods), values_(num_items * num_periods, 0) {
  require(num_items >= 1 && num_periods >= 1, "demand schedule must be at least 1x1");
}

DemandSchedule::DemandSchedule(std::size_t num_items, std::size_t num_periods,
                               std::vector<std::int64_t> item_major_values)
    : num_items_(num_items), num_periods_(num_periods), values_(std::move(item_major_values)) {
  require(num_items >= 1 && num_periods >= 1, "demand schedule must be at least 1x1");
  require(values_.size() == num_items * num_periods, "demand schedule: value count mismatch");
  for (auto v : values_) require(v >= 0, "demand schedule: demands must be >= 0");
}

std::size_t DemandSchedule::index(std::size_t item, std::size_t period) const {
  if (item >= num_items_ || period < 1 || period > num_periods_) {
    throw std::out_of_range("demand schedule: (item " + std::to_string(item + 1) + ", period " +
                            std::to_string(period) + ") out of range");
  }
  return item * num_periods_ + (period - 1);
}

std::int64_t DemandSchedule::operator()(std::size_t item, std::size_t period) const {
  if (period == 0 && item < num_items_) return 0;
  return values_[index(item, period)];
}

void DemandSchedule::set(std::size_t item, std::size_t period, std::int64_t value) {
  require(value >= 0, "demand schedule: demands must be >= 0");
  values_[index(item, period)] = value;
}

std::vector<std::int64_t> DemandSchedule::period_column(std::size_t period) const {
  std::vector<std::int64_t> column(num_items_);
  for (std::size_t i = 0; i < num_items_; ++i) column[i] = (*this)(i, period);
  return column;
}

std::int64_t DemandSchedule::cumulative(std::size_t item, std::size_t last_period) const {
  std::int64_t total = 0;
  for (std::size_t j = 1; j <= last_period; ++j) total += (*this)(item, j);
  return total;
}

double DemandSchedule::mean(std::size_t item) const {
  return static_cast<double>(cumulative(item, num_periods_)) / static_cast<double>(num_periods_);
}

void validate_instance(std::span<const ItemParams> items, const HorizonConfig& config) {
  config.validate();
  require(items.size() == config.num_items,
          "horizon declares " + std::to_string(config.num_items) + " items but " +
              std::to_string(items.size()) + " are defined");
  for (const auto& item : items) item.validate();
}

void validate_instance(std::span<const ItemParams> items, const HorizonConfig& config,
                       const DemandSchedule& schedule) {
  validate_instance(items, config);
  require(schedule.num_items() == config.num_items, "demand schedule: item count mismatch");
  require(schedule.num_periods() == config.num_periods, "demand schedule: period count mismatch");
}

double wheel_time(const ProductWheel& wheel, std::span<const ItemParams> items) {
  require(wheel.size() == items.size(), "wheel has " + std::to_string(wheel.size()) +
                                            " entries for " + std::to_string(items.size()) +
                                            " items");
  double total = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    total += static_cast<double>(wheel[i]) * items[i].batch_time;
  }
  return total;
}

double period_wheel_time(const ProductWheel& wheel, std::span<const ItemParams> items,
                         std::span<const int> skipping) {
  require(wheel.size() == items.size() && skipping.size() == items.size(),
          "period_wheel_time: dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (skipping[i] != 0) total += static_cast<double>(wheel[i]) * items[i].batch_time;
  }
  return total;
}

double rms_wheel_time(std::span<const double> period_times) {
  require(!period_times.empty(), "rms_wheel_time: no periods");
  double sum_sq = 0.0;
  for (double w : period_times) sum_sq += w * w;
  return std::sqrt(sum_sq / static_cast<double>(period_times.size()));
}

std::int64_t cycles_in_period(double period_length, double period_wheel_time) {
  if (period_wheel_time <= 0.0) return 0;
  return static_cast<std::int64_t>(std::floor(period_length / period_wheel_time));
}

}  // namespace wheelopt
