#include "wheelopt/sa.hpp"

#include <cmath>
#include <limits>

namespace wheelopt::sa {

namespace {

bool same_value(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

}  // namespace

void SaConfig::validate() const {
  if (!(cooling > 0.0)) throw std::invalid_argument("sa: cooling must be > 0");
  if (max_proposal_attempts < 1) throw std::invalid_argument("sa: max_proposal_attempts must be >= 1");
  if (proposal_step < 1) throw std::invalid_argument("sa: proposal_step must be >= 1");
}

std::size_t SaTrace::accepted_count() const {
  std::size_t n = 0;
  for (const auto& it : iterations) n += it.accepted ? 1 : 0;
  return n;
}

std::size_t SaTrace::worsening_accepted_count() const {
  std::size_t n = 0;
  for (const auto& it : iterations) n += (it.accepted && !std::isnan(it.uniform_draw)) ? 1 : 0;
  return n;
}

bool operator==(const SaIteration& a, const SaIteration& b) {
  return a.proposal == b.proposal && same_value(a.proposal_rms, b.proposal_rms) &&
         a.accepted == b.accepted && a.proposals_tried == b.proposals_tried &&
         same_value(a.uniform_draw, b.uniform_draw) && same_value(a.current_rms, b.current_rms) &&
         same_value(a.best_rms, b.best_rms);
}

bool operator==(const SaTrace& a, const SaTrace& b) {
  return a.start == b.start && same_value(a.start_rms, b.start_rms) &&
         a.bootstrap_proposals == b.bootstrap_proposals && a.iterations == b.iterations &&
         a.best_wheel == b.best_wheel && same_value(a.best_rms, b.best_rms) &&
         a.best_iteration == b.best_iteration;
}

ProductWheel propose(const ProductWheel& current, Rng& rng, std::int64_t step) {
  std::uniform_int_distribution<std::int64_t> perturb(-step, step);
  std::vector<std::int64_t> next(current.batches().begin(), current.batches().end());
  for (auto& v : next) v = std::max<std::int64_t>(1, v + perturb(rng));
  return ProductWheel(std::move(next));
}

double acceptance_probability(double delta_rms, double cooling) {
  if (delta_rms <= 0.0) return 1.0;
  return std::exp(-delta_rms / cooling);
}

bool accept_move(double delta_rms, double cooling, double z) {
  return delta_rms <= 0.0 || z < acceptance_probability(delta_rms, cooling);
}

SaTrace optimize(const ProductWheel& initial, const DemandSchedule& schedule,
                 std::span<const ItemParams> items, const HorizonConfig& config,
                 const SaConfig& sa_config, SkipPolicy policy) {
  sa_config.validate();
  validate_instance(items, config, schedule);
  if (initial.size() != items.size()) throw std::invalid_argument("sa: wheel/item count mismatch");

  Rng rng(sa_config.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  auto feasible_rms = [&](const ProductWheel& w) -> std::optional<double> {
    const auto result = simulate(w, schedule, items, config, policy);
    if (!result.feasible) return std::nullopt;
    return result.rms_wheel_time;
  };

  SaTrace trace{initial, 0.0, 0, {}, initial, 0.0, 0};
  auto start_rms = feasible_rms(initial);
  while (!start_rms) {
    if (trace.bootstrap_proposals == sa_config.max_proposal_attempts) {
      throw SaError(SaError::Kind::no_feasible_start,
                    "sa: no feasible wheel found near initial wheel " + initial.to_string() +
                        " after " + std::to_string(sa_config.max_proposal_attempts) + " proposals");
    }
    ++trace.bootstrap_proposals;
    auto candidate = propose(initial, rng, sa_config.proposal_step);
    start_rms = feasible_rms(candidate);
    if (start_rms) trace.start = std::move(candidate);
  }
  trace.start_rms = *start_rms;
  trace.best_wheel = trace.start;
  trace.best_rms = trace.start_rms;

  ProductWheel current = trace.start;
  double current_rms = trace.start_rms;
  trace.iterations.reserve(sa_config.iterations);

  for (std::size_t k = 1; k <= sa_config.iterations; ++k) {
    std::size_t tried = 0;
    std::optional<ProductWheel> proposal;
    std::optional<double> proposal_rms;
    while (!proposal_rms) {
      if (tried == sa_config.max_proposal_attempts) {
        throw SaError(SaError::Kind::proposal_exhaustion,
                      "sa: iteration " + std::to_string(k) + " found no feasible proposal in " +
                          std::to_string(tried) + " attempts",
                      trace);
      }
      ++tried;
      proposal = propose(current, rng, sa_config.proposal_step);
      proposal_rms = feasible_rms(*proposal);
    }

    const double delta = *proposal_rms - current_rms;
    double z = std::numeric_limits<double>::quiet_NaN();
    bool accepted = true;
    if (delta > 0.0) {
      z = uniform(rng);
      accepted = accept_move(delta, sa_config.cooling, z);
    }
    if (*proposal_rms < trace.best_rms) {
      trace.best_rms = *proposal_rms;
      trace.best_wheel = *proposal;
      trace.best_iteration = k;
    }
    if (accepted) {
      current = *proposal;
      current_rms = *proposal_rms;
    }
    trace.iterations.push_back(SaIteration{std::move(*proposal), *proposal_rms, accepted, tried, z,
                                           current_rms, trace.best_rms});
  }
  return trace;
}

std::optional<ProductWheel> suggest_initial_wheel(const DemandSchedule& schedule,
                                                  std::span<const ItemParams> items,
                                                  const HorizonConfig& config, SkipPolicy policy) {
  validate_instance(items, config, schedule);
  double unit_wheel = 0.0;
  for (const auto& item : items) unit_wheel += item.batch_time;
  const auto max_cycles = std::max<std::int64_t>(1, cycles_in_period(config.period_length, unit_wheel));

  std::optional<ProductWheel> best;
  double best_rms = std::numeric_limits<double>::infinity();
  for (std::int64_t cycles = 1; cycles <= max_cycles; ++cycles) {
    for (int step = 0; step <= 20; ++step) {
      const double margin = 1.0 + 0.05 * step;
      std::vector<std::int64_t> batches(items.size());
      for (std::size_t i = 0; i < items.size(); ++i) {
        const double per_cycle = margin * schedule.mean(i) /
                                 (static_cast<double>(items[i].batch_size) * static_cast<double>(cycles));
        batches[i] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(per_cycle)));
      }
      ProductWheel candidate(std::move(batches));
      const auto result = simulate(candidate, schedule, items, config, policy);
      if (result.feasible && result.rms_wheel_time < best_rms) {
        best_rms = result.rms_wheel_time;
        best = std::move(candidate);
      }
    }
  }
  return best;
}

}  // namespace wheelopt::sa
