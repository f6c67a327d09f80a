#include "wheelopt/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace wheelopt {

void DemandGenSpec::validate() const {
  if (means.empty() || means.size() != stds.size()) {
    throw std::invalid_argument("demand generation: need one (mean, std) pair per item");
  }
  if (num_periods < 1) throw std::invalid_argument("demand generation: num_periods must be >= 1");
  for (double s : stds) {
    if (!(s >= 0.0)) throw std::invalid_argument("demand generation: std must be >= 0");
  }
}

DemandGenSpec demand_spec_from_items(std::span<const ItemParams> items, std::size_t num_periods,
                                     std::uint64_t seed) {
  DemandGenSpec spec;
  spec.num_periods = num_periods;
  spec.seed = seed;
  for (const auto& item : items) {
    spec.means.push_back(item.demand_mean);
    spec.stds.push_back(item.demand_std);
  }
  return spec;
}

DemandSchedule generate_schedule(const DemandGenSpec& spec) {
  spec.validate();
  const std::size_t n = spec.means.size();
  DemandSchedule schedule(n, spec.num_periods);
  std::mt19937_64 rng(spec.seed);
  for (std::size_t i = 0; i < n; ++i) {
    // normal_distribution requires a positive stddev
    std::normal_distribution<double> normal(spec.means[i], spec.stds[i] > 0.0 ? spec.stds[i] : 1.0);
    for (std::size_t h = 1; h <= spec.num_periods; ++h) {
      const double draw = spec.stds[i] > 0.0 ? normal(rng) : spec.means[i];
      schedule.set(i, h, std::max<std::int64_t>(0, std::llround(draw)));
    }
  }
  return schedule;
}

}  // namespace wheelopt
