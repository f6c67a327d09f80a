#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wheelopt/experiments.hpp"
#include "wheelopt/model.hpp"

namespace wheelopt::io {

/// Thrown for malformed input; the message names the file, line and field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Instance {
  HorizonConfig config;
  std::vector<ItemParams> items;
  std::optional<DemandSchedule> demand;
};

/// Sectioned key = value text:
///
///   [horizon]            num_periods, period_length, cost_tolerance
///   [item]               one section per item, see ItemParams
///   [demand]             optional; `csv = path` or one `values = d1, d2, ...`
///                        line per item
///
/// `#` starts a comment. Unknown sections and keys are rejected. Relative CSV
/// paths resolve against `base_dir`.
Instance parse_instance(std::istream& in, const std::string& source_name,
                        const std::filesystem::path& base_dir = {});
Instance load_instance(const std::filesystem::path& path);
void write_instance(std::ostream& out, const Instance& instance);

/// Header `item,period,demand`, 1-based item and period, one row per pair.
void write_demand_csv(std::ostream& out, const DemandSchedule& schedule);
DemandSchedule read_demand_csv(std::istream& in, const std::string& source_name,
                               std::size_t num_items, std::size_t num_periods);
DemandSchedule load_demand_csv(const std::filesystem::path& path, std::size_t num_items,
                               std::size_t num_periods);

/// Sweep spec file: a [sweep] section (instance, axis, values, num_schedules,
/// seeds, methods, lambda_max) and an optional [sa] section (iterations,
/// cooling_fraction, step, restarts, max_proposal_attempts). The instance is
/// either referenced by `instance = path` or given inline as [horizon] and
/// [item] sections in the same file.
experiments::SweepSpec parse_sweep_spec(std::istream& in, const std::string& source_name,
                                        const std::filesystem::path& base_dir = {});
experiments::SweepSpec load_sweep_spec(const std::filesystem::path& path);

inline constexpr const char* kSweepCsvHeader =
    "axis,axis_value,schedule_id,method,feasible,rms_wheel_time,simulated_total_cost,"
    "relaxed_cost,wheel,wallclock_ms";

/// Fixed six-decimal rendering used in every file and report.
std::string format_fixed(double value);

std::string sweep_csv_line(const experiments::SweepRow& row);
void write_sweep_csv(std::ostream& out, const std::vector<experiments::SweepRow>& rows);
std::vector<experiments::SweepRow> read_sweep_csv(std::istream& in, const std::string& source_name);

}  // namespace wheelopt::io
