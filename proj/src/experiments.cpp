#include "wheelopt/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "wheelopt/datagen.hpp"
#include "wheelopt/ilp.hpp"
#include "wheelopt/sa.hpp"
#include "wheelopt/simulator.hpp"

namespace wheelopt::experiments {

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::cost_tolerance: return "cost_tolerance";
    case SweepAxis::setup_multiplier: return "setup_multiplier";
    case SweepAxis::inventory_multiplier: return "inventory_multiplier";
  }
  return "?";
}

std::string to_string(Method method) { return method == Method::ilp ? "ilp" : "sa"; }

SweepAxis parse_axis(const std::string& text) {
  if (text == "cost_tolerance") return SweepAxis::cost_tolerance;
  if (text == "setup_multiplier") return SweepAxis::setup_multiplier;
  if (text == "inventory_multiplier") return SweepAxis::inventory_multiplier;
  throw std::invalid_argument("unknown sweep axis '" + text + "'");
}

Method parse_method(const std::string& text) {
  if (text == "ilp") return Method::ilp;
  if (text == "sa") return Method::sa;
  throw std::invalid_argument("unknown method '" + text + "' (expected ilp or sa)");
}

std::vector<double> default_grid(SweepAxis axis) {
  std::vector<double> grid(10);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    grid[k] = axis == SweepAxis::cost_tolerance ? 20000.0 + 5000.0 * static_cast<double>(k)
                                                : static_cast<double>(k + 1);
  }
  return grid;
}

void SweepSpec::validate() const {
  validate_instance(items, config);
  if (values.empty()) throw std::invalid_argument("sweep: no axis values");
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (!(values[k] > values[k - 1])) {
      throw std::invalid_argument("sweep: axis values must be strictly increasing");
    }
  }
  if (num_schedules < 1) throw std::invalid_argument("sweep: num_schedules must be >= 1");
  if (!seeds.empty() && seeds.size() != num_schedules) {
    throw std::invalid_argument("sweep: expected one seed per schedule");
  }
  if (methods.empty()) throw std::invalid_argument("sweep: no methods");
  if (lambda_max < 1) throw std::invalid_argument("sweep: lambda_max must be >= 1");
  if (sa.restarts < 1) throw std::invalid_argument("sweep: sa restarts must be >= 1");
  if (!(sa.cooling_fraction > 0.0)) throw std::invalid_argument("sweep: sa cooling fraction must be > 0");
}

std::vector<std::uint64_t> SweepSpec::schedule_seeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out(num_schedules);
  for (std::size_t s = 0; s < num_schedules; ++s) out[s] = s + 1;
  return out;
}

void apply_axis(SweepAxis axis, double value, std::vector<ItemParams>& items,
                HorizonConfig& config) {
  switch (axis) {
    case SweepAxis::cost_tolerance:
      config.cost_tolerance = value;
      break;
    case SweepAxis::setup_multiplier:
      for (auto& item : items) item.setup_cost *= value;
      break;
    case SweepAxis::inventory_multiplier:
      for (auto& item : items) item.inventory_cost_rate *= value;
      break;
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t schedule_seed, std::size_t axis_index, std::size_t restart) {
  return splitmix64(splitmix64(splitmix64(schedule_seed) ^ axis_index) ^ restart);
}

struct Point {
  std::size_t value_index;
  std::size_t schedule_index;
  Method method;
};

void run_ilp(const DemandSchedule& schedule, const std::vector<ItemParams>& items,
             const HorizonConfig& config, std::int64_t lambda_max, SweepRow& row) {
  const auto sol = ilp::solve_instance(schedule, items, config, lambda_max);
  if (sol.status != ilp::Status::optimal) {
    row.outcome = Outcome::infeasible;
    return;
  }
  row.outcome = Outcome::feasible;
  row.wheel = sol.wheel;
  row.rms_wheel_time = sol.objective_value;
  row.relaxed_cost = ilp::relaxed_total_cost(*sol.wheel, schedule, items, config);
  row.simulated_total_cost =
      simulate(*sol.wheel, schedule, items, config, SkipPolicy::never_skip).total_cost;
}

void run_sa(const DemandSchedule& schedule, const std::vector<ItemParams>& items,
            const HorizonConfig& config, const SaSettings& settings, std::uint64_t schedule_seed,
            std::size_t value_index, SweepRow& row) {
  const auto start = sa::suggest_initial_wheel(schedule, items, config);
  if (!start) {
    row.outcome = Outcome::infeasible;
    return;
  }
  const double start_rms = simulate(*start, schedule, items, config).rms_wheel_time;

  std::optional<ProductWheel> best;
  double best_rms = 0.0;
  for (std::size_t r = 0; r < settings.restarts; ++r) {
    sa::SaConfig cfg;
    cfg.cooling = std::max(settings.cooling_fraction * start_rms, 1e-9);
    cfg.iterations = settings.iterations;
    cfg.max_proposal_attempts = settings.max_proposal_attempts;
    cfg.proposal_step = settings.step;
    cfg.seed = derive_seed(schedule_seed, value_index, r);

    std::optional<sa::SaTrace> trace;
    try {
      trace = sa::optimize(*start, schedule, items, config, cfg);
    } catch (const sa::SaError& e) {
      if (!e.partial()) throw;
      trace = e.partial();
    }
    if (!best || trace->best_rms < best_rms) {
      best = trace->best_wheel;
      best_rms = trace->best_rms;
    }
  }

  const auto check = simulate(*best, schedule, items, config);
  row.outcome = Outcome::feasible;
  row.wheel = best;
  row.rms_wheel_time = check.rms_wheel_time;
  row.simulated_total_cost = check.total_cost;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const auto seeds = spec.schedule_seeds();

  std::vector<DemandSchedule> schedules;
  schedules.reserve(seeds.size());
  for (auto seed : seeds) {
    schedules.push_back(
        generate_schedule(demand_spec_from_items(spec.items, spec.config.num_periods, seed)));
  }

  std::vector<Method> methods = spec.methods;
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  std::vector<Point> points;
  for (std::size_t v = 0; v < spec.values.size(); ++v) {
    for (std::size_t s = 0; s < schedules.size(); ++s) {
      for (auto m : methods) points.push_back(Point{v, s, m});
    }
  }

  std::vector<SweepRow> rows(points.size());
  auto run_point = [&](std::size_t index) {
    const auto& p = points[index];
    auto& row = rows[index];
    row.axis = spec.axis;
    row.axis_value = spec.values[p.value_index];
    row.schedule_id = p.schedule_index + 1;
    row.method = p.method;

    auto items = spec.items;
    auto config = spec.config;
    apply_axis(spec.axis, row.axis_value, items, config);

    const auto t0 = std::chrono::steady_clock::now();
    try {
      if (p.method == Method::ilp) {
        run_ilp(schedules[p.schedule_index], items, config, spec.lambda_max, row);
      } else {
        run_sa(schedules[p.schedule_index], items, config, spec.sa, seeds[p.schedule_index],
               p.value_index, row);
      }
    } catch (const std::exception& e) {
      row = SweepRow{row.axis, row.axis_value, row.schedule_id, row.method, Outcome::error,
                     std::nullopt, std::nullopt, std::nullopt, std::nullopt, e.what(), 0.0};
    }
    row.wallclock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };

  if (threads <= 1 || points.size() <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) run_point(i);
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < points.size(); i = next++) run_point(i);
    });
  }
  pool.clear();
  return rows;
}

unsigned threads_from_env() {
  const char* env = std::getenv("WHEELOPT_THREADS");
  if (env == nullptr || *env == '\0') return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 0) {
    throw std::invalid_argument("WHEELOPT_THREADS must be a nonnegative integer");
  }
  return static_cast<unsigned>(value);
}

}  // namespace wheelopt::experiments
