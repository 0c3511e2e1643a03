#pragma once

// Discrete particle swarm search over task sequences. A particle is a
// precedence-feasible sequence, a velocity is a list of transpositions and
// fitness is the makespan of the EAT-built schedule.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "uavsched/model.hpp"
#include "uavsched/schedule.hpp"
#include "uavsched/sequence.hpp"

namespace uavsched {

struct PsoConfig {
  double c1 = 1.0;
  double c2 = 2.0;
  std::size_t swarm_size = 40;
  int max_iterations = 40;
  int convergence_window = 10;
  // Overrides the task-count band for the initial velocity pair cap.
  std::optional<std::size_t> initial_velocity_pairs;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

// Throws std::invalid_argument on swarm_size < 8, non-positive coefficients
// or iteration limits.
void validate(const PsoConfig& config);

// Maximum initial velocity pairs by task count: <=20 -> 2, <=50 -> 10, else 30.
std::size_t initial_velocity_pair_cap(std::size_t task_count);

Seconds fitness(const Sequence& seq, const ProblemInstance& instance);

// Draws U1, U2 ~ U[0, 1] and blends the cognitive (local best - particle) and
// social (global best - particle) differences into the velocity.
SwapPairList update_velocity(const SwapPairList& velocity, const Sequence& particle,
                             const Sequence& local_best, const Sequence& global_best,
                             const PsoConfig& config, Rng& rng);

// Eight priority-rule particles, then precedence-preserving random swap
// mutations of them (round-robin) until swarm_size particles exist.
std::vector<Sequence> generate_initial_swarm(const ProblemInstance& instance,
                                             const PsoConfig& config, Rng& rng);

struct IterationRecord {
  int iteration = 0;
  Seconds best_fitness = 0;
  double mean_fitness = 0.0;
};

struct PsoResult {
  Sequence best_sequence;
  Seconds best_fitness = 0;
  Seconds initial_best_fitness = 0;
  Schedule best_schedule;
  std::vector<IterationRecord> history;  // iteration 0 is the initial swarm
  int convergence_iteration = 0;         // iteration of the last improvement
  int iterations_run = 0;
  bool converged = false;                // stagnation window reached
  double wall_clock_ms = 0.0;
};

// Deterministic for a fixed config.seed regardless of config.threads.
PsoResult run_pso(const ProblemInstance& instance, const PsoConfig& config);

}  // namespace uavsched
