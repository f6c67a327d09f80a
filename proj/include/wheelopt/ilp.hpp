#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wheelopt/model.hpp"

namespace wheelopt::ilp {

/// Absolute slack allowed when evaluating a row or a relaxed constraint.
inline constexpr double kRowSlack = 1e-9;
inline constexpr std::int64_t kDefaultLambdaMax = 100;

enum class RowKind { demand, cost };

struct RowTag {
  RowKind kind = RowKind::demand;
  std::size_t item = 0;    // demand rows only, 0-based
  std::size_t period = 0;  // demand rows only, 1-based
};

/// coefficients . lambda <= bound
struct LinearRow {
  std::vector<double> coefficients;
  double bound = 0.0;
  RowTag tag;

  double lhs(std::span<const std::int64_t> lambda) const;
  bool satisfied_by(std::span<const std::int64_t> lambda, double slack = kRowSlack) const;
};

/// No-skip relaxed problem: minimize objective . lambda over the rows.
/// Rows are ordered demand(item 0, period 1..H), ..., demand(item N-1, ...), cost.
struct LinearSystem {
  std::vector<double> objective;
  std::vector<LinearRow> rows;

  std::size_t num_vars() const { return objective.size(); }
  bool satisfied_by(std::span<const std::int64_t> lambda, double slack = kRowSlack) const;
};

enum class Status { optimal, infeasible };

struct IlpSolution {
  Status status = Status::infeasible;
  std::optional<ProductWheel> wheel;
  double objective_value = 0.0;
  /// Some coordinate of the optimum sits at lambda_max, so the box may bind.
  bool at_box_boundary = false;
  std::uint64_t nodes = 0;
};

/// Inventory after production in `period` when each period runs the
/// fractional T / Omega wheel cycles:
///   I^0 - sum_{j<h} D^j + lambda_i * h * M_i * T / Omega.
double relaxed_inventory(std::size_t item, std::size_t period, const ProductWheel& wheel,
                         const DemandSchedule& schedule, std::span<const ItemParams> items,
                         const HorizonConfig& config);

/// Horizon cost under fractional cycles: per period p_i * T / Omega set-up plus
/// k_i times the relaxed leftover carried into the period.
double relaxed_total_cost(const ProductWheel& wheel, const DemandSchedule& schedule,
                          std::span<const ItemParams> items, const HorizonConfig& config);

/// The relaxed demand and cost constraints evaluated in their original,
/// nonlinear form. Same order as LinearSystem::rows.
std::vector<bool> relaxed_constraints_hold(const ProductWheel& wheel,
                                           const DemandSchedule& schedule,
                                           std::span<const ItemParams> items,
                                           const HorizonConfig& config,
                                           double slack = kRowSlack);

/// Multiplies every relaxed constraint through by Omega = sum t_m lambda_m.
/// See docs/linearization.md for the derivation.
LinearSystem build_linear_system(const DemandSchedule& schedule,
                                 std::span<const ItemParams> items, const HorizonConfig& config);

/// Exact minimum over the integer box [1, lambda_max]^N by depth-first
/// branch-and-bound. Ties go to the lexicographically smallest wheel.
IlpSolution solve(const LinearSystem& system, std::int64_t lambda_max = kDefaultLambdaMax);

IlpSolution solve_instance(const DemandSchedule& schedule, std::span<const ItemParams> items,
                           const HorizonConfig& config,
                           std::int64_t lambda_max = kDefaultLambdaMax);

}  // namespace wheelopt::ilp
