#include "uavsched/pso.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "uavsched/eat_scheduler.hpp"
#include "uavsched/priority_rules.hpp"

namespace uavsched {

namespace {

// Swapping seq[i] and seq[j] (i < j) keeps a feasible sequence feasible iff
// nothing in (i, j] depends on seq[i] and nothing in [i, j) precedes seq[j].
bool swap_keeps_precedence(const Sequence& seq, std::size_t i, std::size_t j,
                           const ProblemInstance& instance) {
  const TaskId a = seq[i];
  const TaskId b = seq[j];
  const auto& graph = instance.graph();
  const auto& b_preds = graph.predecessors_of(b);
  for (std::size_t k = i; k < j; ++k) {
    if (std::find(b_preds.begin(), b_preds.end(), seq[k]) != b_preds.end()) return false;
  }
  for (std::size_t k = i + 1; k <= j; ++k) {
    const auto& preds = graph.predecessors_of(seq[k]);
    if (std::find(preds.begin(), preds.end(), a) != preds.end()) return false;
  }
  return true;
}

Rng particle_stream(std::uint64_t seed, std::size_t particle) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(particle), 0x5eedu};
  return Rng(seq);
}

template <typename Fn>
void for_each_particle(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
}

}  // namespace

void validate(const PsoConfig& config) {
  if (config.swarm_size < 8) throw std::invalid_argument("swarm_size must be >= 8");
  if (!(config.c1 > 0.0) || !(config.c2 > 0.0)) {
    throw std::invalid_argument("learning coefficients must be > 0");
  }
  if (config.max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
  if (config.convergence_window <= 0) throw std::invalid_argument("convergence_window must be > 0");
}

std::size_t initial_velocity_pair_cap(std::size_t task_count) {
  if (task_count <= 20) return 2;
  if (task_count <= 50) return 10;
  return 30;
}

Seconds fitness(const Sequence& seq, const ProblemInstance& instance) {
  return makespan(build_schedule(seq, instance));
}

SwapPairList update_velocity(const SwapPairList& velocity, const Sequence& particle,
                             const Sequence& local_best, const Sequence& global_best,
                             const PsoConfig& config, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u1 = unit(rng);
  const double u2 = unit(rng);
  return blend_velocity(velocity, sequence_difference(local_best, particle), config.c1 * u1,
                        sequence_difference(global_best, particle), config.c2 * u2,
                        random_selector(rng));
}

std::vector<Sequence> generate_initial_swarm(const ProblemInstance& instance,
                                             const PsoConfig& config, Rng& rng) {
  std::vector<Sequence> swarm;
  swarm.reserve(config.swarm_size);
  for (auto& [rule, seq] : priority_orderings(instance)) {
    if (swarm.size() == config.swarm_size) break;
    swarm.push_back(std::move(seq));
  }
  const std::size_t rule_count = swarm.size();
  const std::size_t n = instance.task_count();
  for (std::size_t k = rule_count; k < config.swarm_size; ++k) {
    Sequence seq = swarm[k % rule_count];
    if (n >= 2) {
      std::uniform_int_distribution<std::size_t> attempts_dist(1, n);
      std::uniform_int_distribution<std::size_t> index(0, n - 1);
      for (std::size_t a = attempts_dist(rng); a > 0; --a) {
        std::size_t i = index(rng);
        std::size_t j = index(rng);
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        if (swap_keeps_precedence(seq, i, j, instance)) std::swap(seq[i], seq[j]);
      }
    }
    swarm.push_back(std::move(seq));
  }
  return swarm;
}

PsoResult run_pso(const ProblemInstance& instance, const PsoConfig& config) {
  validate(config);
  const auto t0 = std::chrono::steady_clock::now();
  const auto& graph = instance.graph();
  const std::size_t n = instance.task_count();

  Rng master(config.seed);
  std::vector<Sequence> particles = generate_initial_swarm(instance, config, master);
  const std::size_t m = particles.size();

  std::vector<Rng> streams;
  streams.reserve(m);
  for (std::size_t i = 0; i < m; ++i) streams.push_back(particle_stream(config.seed, i));

  const std::size_t cap = config.initial_velocity_pairs.value_or(initial_velocity_pair_cap(n));
  std::vector<SwapPairList> velocities(m);
  for (std::size_t i = 0; i < m; ++i) velocities[i] = random_velocity(n, cap, streams[i]);

  std::vector<Seconds> current(m);
  for_each_particle(m, config.threads,
                    [&](std::size_t i) { current[i] = fitness(particles[i], instance); });

  std::vector<Sequence> local_best = particles;
  std::vector<Seconds> local_fit = current;
  std::size_t g = static_cast<std::size_t>(
      std::min_element(local_fit.begin(), local_fit.end()) - local_fit.begin());
  Sequence global_best = local_best[g];
  Seconds global_fit = local_fit[g];

  PsoResult result;
  result.initial_best_fitness = global_fit;
  auto record = [&](int iteration) {
    double mean = std::accumulate(current.begin(), current.end(), 0.0) / static_cast<double>(m);
    result.history.push_back({iteration, global_fit, mean});
  };
  record(0);

  int stagnation = 0;
  for (int it = 1; it <= config.max_iterations; ++it) {
    for_each_particle(m, config.threads, [&](std::size_t i) {
      velocities[i] = update_velocity(velocities[i], particles[i], local_best[i], global_best,
                                      config, streams[i]);
      particles[i] = repair(apply_swaps(particles[i], velocities[i]), graph);
      current[i] = fitness(particles[i], instance);
    });

    for (std::size_t i = 0; i < m; ++i) {
      if (current[i] < local_fit[i]) {
        local_fit[i] = current[i];
        local_best[i] = particles[i];
      }
    }
    bool improved = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (local_fit[i] < global_fit) {
        global_fit = local_fit[i];
        global_best = local_best[i];
        improved = true;
      }
    }
    record(it);
    result.iterations_run = it;
    if (improved) {
      stagnation = 0;
      result.convergence_iteration = it;
    } else if (++stagnation >= config.convergence_window) {
      result.converged = true;
      break;
    }
  }

  result.best_sequence = std::move(global_best);
  result.best_fitness = global_fit;
  result.best_schedule = build_schedule(result.best_sequence, instance);
  result.wall_clock_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace uavsched
