#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "wheelopt/model.hpp"
#include "wheelopt/simulator.hpp"

namespace wheelopt::sa {

using Rng = std::mt19937_64;

struct SaConfig {
  double cooling = 1.0;  // constant temperature C
  std::size_t iterations = 2000;
  std::size_t max_proposal_attempts = 10000;
  std::int64_t proposal_step = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// One outer iteration: the first feasible proposal and what happened to it.
struct SaIteration {
  ProductWheel proposal;
  double proposal_rms = 0.0;
  bool accepted = false;
  /// Proposals drawn this iteration, including the feasible one.
  std::size_t proposals_tried = 0;
  /// Uniform draw used for a worsening move; NaN when no draw was needed.
  double uniform_draw = 0.0;
  double current_rms = 0.0;  // after the move
  double best_rms = 0.0;     // after the move
};

struct SaTrace {
  ProductWheel start;  // feasible state the chain started from
  double start_rms = 0.0;
  std::size_t bootstrap_proposals = 0;
  std::vector<SaIteration> iterations;
  ProductWheel best_wheel;
  double best_rms = 0.0;
  /// 0 when the start was never improved on, otherwise 1-based iteration.
  std::size_t best_iteration = 0;

  std::size_t accepted_count() const;
  std::size_t worsening_accepted_count() const;

  friend bool operator==(const SaTrace&, const SaTrace&);
};

bool operator==(const SaIteration&, const SaIteration&);

class SaError : public std::runtime_error {
 public:
  enum class Kind { no_feasible_start, proposal_exhaustion };

  SaError(Kind kind, const std::string& what, std::optional<SaTrace> partial = std::nullopt)
      : std::runtime_error(what), kind_(kind), partial_(std::move(partial)) {}

  Kind kind() const { return kind_; }
  /// Progress up to the exhausted iteration (proposal_exhaustion only).
  const std::optional<SaTrace>& partial() const { return partial_; }

 private:
  Kind kind_;
  std::optional<SaTrace> partial_;
};

/// Perturbs every coordinate by an independent uniform integer in
/// [-step, step] and clamps at 1.
ProductWheel propose(const ProductWheel& current, Rng& rng, std::int64_t step);

/// min(1, exp(-delta / cooling))
double acceptance_probability(double delta_rms, double cooling);

/// The Metropolis decision for a given uniform draw z in [0, 1).
/// Non-worsening moves are always accepted.
bool accept_move(double delta_rms, double cooling, double z);

/// Simulated annealing at constant temperature over product wheels, with
/// feasibility decided by simulating the whole horizon under `policy`.
/// Throws SaError when no feasible start is found or a proposal loop runs
/// out of attempts.
SaTrace optimize(const ProductWheel& initial, const DemandSchedule& schedule,
                 std::span<const ItemParams> items, const HorizonConfig& config,
                 const SaConfig& sa_config, SkipPolicy policy = SkipPolicy::trigger_point);

/// Deterministic starting wheel: scans lambda_i = ceil(margin * mean demand_i
/// / (batch_size_i * cycles)) over cycle targets and margins and returns the
/// feasible candidate with the lowest rms, or nullopt if none is feasible.
std::optional<ProductWheel> suggest_initial_wheel(const DemandSchedule& schedule,
                                                  std::span<const ItemParams> items,
                                                  const HorizonConfig& config,
                                                  SkipPolicy policy = SkipPolicy::trigger_point);

}  // namespace wheelopt::sa
