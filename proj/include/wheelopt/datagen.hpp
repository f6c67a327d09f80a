#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wheelopt/model.hpp"

namespace wheelopt {

struct DemandGenSpec {
  std::vector<double> means;
  std::vector<double> stds;
  std::size_t num_periods = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

DemandGenSpec demand_spec_from_items(std::span<const ItemParams> items, std::size_t num_periods,
                                     std::uint64_t seed);

/// Independent normal draws per (item, period), rounded to the nearest
/// integer and clamped at zero. Deterministic for a given seed.
DemandSchedule generate_schedule(const DemandGenSpec& spec);

}  // namespace wheelopt
