#include "wheelopt/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wheelopt::ilp {

double LinearRow::lhs(std::span<const std::int64_t> lambda) const {
  double total = 0.0;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    total += coefficients[j] * static_cast<double>(lambda[j]);
  }
  return total;
}

bool LinearRow::satisfied_by(std::span<const std::int64_t> lambda, double slack) const {
  return lhs(lambda) <= bound + slack;
}

bool LinearSystem::satisfied_by(std::span<const std::int64_t> lambda, double slack) const {
  return std::all_of(rows.begin(), rows.end(),
                     [&](const LinearRow& row) { return row.satisfied_by(lambda, slack); });
}

double relaxed_inventory(std::size_t item, std::size_t period, const ProductWheel& wheel,
                         const DemandSchedule& schedule, std::span<const ItemParams> items,
                         const HorizonConfig& config) {
  const double omega = wheel_time(wheel, items);
  const auto& it = items[item];
  const double carried = static_cast<double>(it.initial_inventory) -
                         static_cast<double>(schedule.cumulative(item, period == 0 ? 0 : period - 1));
  const double produced = static_cast<double>(wheel[item]) * static_cast<double>(period) *
                          static_cast<double>(it.batch_size) * config.period_length / omega;
  return carried + produced;
}

double relaxed_total_cost(const ProductWheel& wheel, const DemandSchedule& schedule,
                          std::span<const ItemParams> items, const HorizonConfig& config) {
  const double cycles = config.period_length / wheel_time(wheel, items);
  double total = 0.0;
  for (std::size_t h = 1; h <= config.num_periods; ++h) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      const double leftover = relaxed_inventory(i, h - 1, wheel, schedule, items, config) -
                              static_cast<double>(schedule(i, h - 1));
      total += items[i].setup_cost * cycles + items[i].inventory_cost_rate * leftover;
    }
  }
  return total;
}

std::vector<bool> relaxed_constraints_hold(const ProductWheel& wheel,
                                           const DemandSchedule& schedule,
                                           std::span<const ItemParams> items,
                                           const HorizonConfig& config, double slack) {
  std::vector<bool> holds;
  holds.reserve(items.size() * config.num_periods + 1);
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t h = 1; h <= config.num_periods; ++h) {
      holds.push_back(relaxed_inventory(i, h, wheel, schedule, items, config) >=
                      static_cast<double>(schedule(i, h)) - slack);
    }
  }
  holds.push_back(relaxed_total_cost(wheel, schedule, items, config) <=
                  config.cost_tolerance + slack);
  return holds;
}

LinearSystem build_linear_system(const DemandSchedule& schedule,
                                 std::span<const ItemParams> items, const HorizonConfig& config) {
  validate_instance(items, config, schedule);
  const std::size_t n = items.size();
  const std::size_t horizon = config.num_periods;
  const double period = config.period_length;

  LinearSystem sys;
  sys.objective.resize(n);
  for (std::size_t m = 0; m < n; ++m) sys.objective[m] = items[m].batch_time;

  // I_i^h >= D_i^h  <=>  (sum_{j<=h} D_i^j - I_i^0) * Omega - lambda_i h M_i T <= 0
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t h = 1; h <= horizon; ++h) {
      const double shortfall = static_cast<double>(schedule.cumulative(i, h)) -
                               static_cast<double>(items[i].initial_inventory);
      LinearRow row;
      row.coefficients.resize(n);
      for (std::size_t m = 0; m < n; ++m) row.coefficients[m] = shortfall * items[m].batch_time;
      row.coefficients[i] -= static_cast<double>(h) * static_cast<double>(items[i].batch_size) * period;
      row.bound = 0.0;
      row.tag = RowTag{RowKind::demand, i, h};
      sys.rows.push_back(std::move(row));
    }
  }

  // Total cost <= tau, multiplied by Omega. B_i collects the demand-only part
  // of the leftovers; sum_h (h - 1) = H (H - 1) / 2 collects production.
  double carried_cost = 0.0;
  double setup_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double carried = 0.0;
    for (std::size_t h = 1; h <= horizon; ++h) {
      carried += static_cast<double>(items[i].initial_inventory) -
                 static_cast<double>(schedule.cumulative(i, h - 1));
    }
    carried_cost += items[i].inventory_cost_rate * carried;
    setup_total += static_cast<double>(horizon) * items[i].setup_cost * period;
  }
  const double ramp = static_cast<double>(horizon) * static_cast<double>(horizon - 1) / 2.0;

  LinearRow cost;
  cost.coefficients.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    cost.coefficients[m] = (carried_cost - config.cost_tolerance) * items[m].batch_time;
  }
  for (std::size_t i = 0; i < n; ++i) {
    cost.coefficients[i] += items[i].inventory_cost_rate *
                            static_cast<double>(items[i].batch_size) * period * ramp;
  }
  cost.bound = -setup_total;
  cost.tag = RowTag{RowKind::cost, 0, 0};
  sys.rows.push_back(std::move(cost));
  return sys;
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const LinearSystem& sys, std::int64_t lambda_max)
      : sys_(sys), lambda_max_(lambda_max), n_(sys.num_vars()) {
    const std::size_t rows = sys.rows.size();
    const double lmax = static_cast<double>(lambda_max);

    // Suffix minima over [1, lambda_max] of every linear form.
    obj_rest_.assign(n_ + 1, 0.0);
    for (std::size_t k = n_; k-- > 0;) {
      const double c = sys.objective[k];
      obj_rest_[k] = obj_rest_[k + 1] + std::min(c, c * lmax);
    }
    row_rest_.assign(rows, std::vector<double>(n_ + 1, 0.0));
    margin_.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto& a = sys.rows[r].coefficients;
      double scale = std::abs(sys.rows[r].bound);
      for (std::size_t k = n_; k-- > 0;) {
        row_rest_[r][k] = row_rest_[r][k + 1] + std::min(a[k], a[k] * lmax);
        scale += std::abs(a[k]) * lmax;
      }
      margin_[r] = 1e-9 * (1.0 + scale);
    }
    double obj_scale = 0.0;
    for (double c : sys.objective) obj_scale += std::abs(c) * lmax;
    obj_margin_ = 1e-12 * (1.0 + obj_scale);

    current_.assign(n_, 1);
    partial_.assign(n_ + 1, std::vector<double>(rows, 0.0));
  }

  IlpSolution run() {
    dfs(0, 0.0);
    IlpSolution sol;
    sol.nodes = nodes_;
    if (!best_) return sol;
    sol.status = Status::optimal;
    sol.objective_value = best_objective_;
    sol.at_box_boundary =
        std::any_of(best_->begin(), best_->end(), [&](std::int64_t v) { return v == lambda_max_; });
    sol.wheel = ProductWheel(*best_);
    return sol;
  }

 private:
  void dfs(std::size_t k, double partial_obj) {
    ++nodes_;
    if (k == n_) {
      if (!sys_.satisfied_by(current_)) return;
      double obj = 0.0;
      for (std::size_t j = 0; j < n_; ++j) obj += static_cast<double>(current_[j]) * sys_.objective[j];
      if (!best_ || obj < best_objective_) {
        best_objective_ = obj;
        best_ = current_;
      }
      return;
    }

    const double c = sys_.objective[k];
    const auto& parent = partial_[k];
    auto& child = partial_[k + 1];
    for (std::int64_t v = 1; v <= lambda_max_; ++v) {
      const double value = static_cast<double>(v);
      const double obj = partial_obj + c * value;
      if (best_ && obj + obj_rest_[k + 1] > best_objective_ + obj_margin_) {
        if (c >= 0.0) break;  // only grows with v
        continue;
      }
      bool viable = true;
      for (std::size_t r = 0; r < sys_.rows.size(); ++r) {
        child[r] = parent[r] + sys_.rows[r].coefficients[k] * value;
        if (child[r] + row_rest_[r][k + 1] > sys_.rows[r].bound + kRowSlack + margin_[r]) {
          viable = false;
          break;
        }
      }
      if (!viable) continue;
      current_[k] = v;
      dfs(k + 1, obj);
    }
    current_[k] = 1;
  }

  const LinearSystem& sys_;
  std::int64_t lambda_max_;
  std::size_t n_;
  std::vector<double> obj_rest_;
  std::vector<std::vector<double>> row_rest_;
  std::vector<double> margin_;
  double obj_margin_ = 0.0;
  std::vector<std::int64_t> current_;
  std::vector<std::vector<double>> partial_;
  std::optional<std::vector<std::int64_t>> best_;
  double best_objective_ = std::numeric_limits<double>::infinity();
  std::uint64_t nodes_ = 0;
};

}  // namespace

IlpSolution solve(const LinearSystem& system, std::int64_t lambda_max) {
  if (lambda_max < 1) throw std::invalid_argument("lambda_max must be >= 1");
  if (system.num_vars() == 0) throw std::invalid_argument("linear system has no variables");
  for (const auto& row : system.rows) {
    if (row.coefficients.size() != system.num_vars()) {
      throw std::invalid_argument("linear system: row width mismatch");
    }
  }
  return BranchAndBound(system, lambda_max).run();
}

IlpSolution solve_instance(const DemandSchedule& schedule, std::span<const ItemParams> items,
                           const HorizonConfig& config, std::int64_t lambda_max) {
  return solve(build_linear_system(schedule, items, config), lambda_max);
}

}  // namespace wheelopt::ilp
