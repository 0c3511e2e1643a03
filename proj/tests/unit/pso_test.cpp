#include <gtest/gtest.h>

#include <algorithm>

#include "oracle.hpp"
#include "uavsched/eat_scheduler.hpp"
#include "uavsched/priority_rules.hpp"
#include "uavsched/pso.hpp"
#include "uavsched/reference.hpp"

namespace uavsched {
namespace {

TEST(PsoConfig, Validation) {
  PsoConfig c;
  EXPECT_NO_THROW(validate(c));
  c.swarm_size = 7;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.c1 = 0;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.convergence_window = 0;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.max_iterations = -1;
  EXPECT_THROW(validate(c), std::invalid_argument);
}

TEST(PsoConfig, VelocityPairBands) {
  EXPECT_EQ(initial_velocity_pair_cap(10), 2u);
  EXPECT_EQ(initial_velocity_pair_cap(20), 2u);
  EXPECT_EQ(initial_velocity_pair_cap(21), 10u);
  EXPECT_EQ(initial_velocity_pair_cap(50), 10u);
  EXPECT_EQ(initial_velocity_pair_cap(100), 30u);
}

TEST(InitialSwarm, RulesFirstThenFeasibleMutations) {
  auto inst = reference::instance();
  PsoConfig c;
  Rng rng(4);
  auto swarm = generate_initial_swarm(inst, c, rng);
  ASSERT_EQ(swarm.size(), 40u);
  auto rules = priority_orderings(inst);
  for (std::size_t i = 0; i < rules.size(); ++i) EXPECT_EQ(swarm[i], rules[i].second);
  for (const auto& s : swarm) EXPECT_TRUE(is_precedence_feasible(s, inst.graph()));
}

TEST(InitialSwarm, FeasibleOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    testing::RandomInstanceSpec spec;
    spec.tasks = 25;
    spec.max_predecessors = 3;
    auto inst = testing::random_instance(seed, spec);
    PsoConfig c;
    Rng rng(seed);
    for (const auto& s : generate_initial_swarm(inst, c, rng)) {
      EXPECT_TRUE(is_precedence_feasible(s, inst.graph()));
    }
  }
}

TEST(UpdateVelocity, IdenticalBestsLeaveVelocity) {
  Sequence s{1, 2, 3, 4, 5};
  SwapPairList v{{0, 1}, {2, 4}};
  PsoConfig c;
  Rng rng(1);
  EXPECT_EQ(update_velocity(v, s, s, s, c, rng), v);
}

TEST(RunPso, ReferenceInstance) {
  auto inst = reference::instance();
  PsoConfig c;
  auto r = run_pso(inst, c);
  EXPECT_LE(r.best_fitness, r.initial_best_fitness);
  EXPECT_EQ(r.best_fitness, makespan(r.best_schedule));
  EXPECT_EQ(fitness(r.best_sequence, inst), r.best_fitness);
  EXPECT_TRUE(validate_schedule(r.best_schedule, inst).empty());
  EXPECT_LE(r.convergence_iteration, c.max_iterations);
  EXPECT_LE(r.iterations_run, c.max_iterations);
  ASSERT_FALSE(r.history.empty());
  EXPECT_EQ(r.history.front().iteration, 0);
  for (std::size_t i = 1; i < r.history.size(); ++i) {
    EXPECT_LE(r.history[i].best_fitness, r.history[i - 1].best_fitness);
  }
  EXPECT_EQ(r.history.back().best_fitness, r.best_fitness);
}

TEST(RunPso, DeterministicAcrossThreadCounts) {
  testing::RandomInstanceSpec spec;
  spec.tasks = 30;
  spec.uavs = 3;
  auto inst = testing::random_instance(77, spec);
  PsoConfig c;
  c.seed = 12345;
  auto a = run_pso(inst, c);
  c.threads = 4;
  auto b = run_pso(inst, c);
  EXPECT_EQ(a.best_sequence, b.best_sequence);
  EXPECT_EQ(a.best_fitness, b.best_fitness);
  ASSERT_EQ(a.history.size(), b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    EXPECT_EQ(a.history[i].best_fitness, b.history[i].best_fitness);
    EXPECT_DOUBLE_EQ(a.history[i].mean_fitness, b.history[i].mean_fitness);
  }
}

TEST(RunPso, StagnantSwarmStopsWithinWindow) {
  // One task: every particle is the same sequence, nothing can improve.
  auto map = reference::map();
  auto t = reference::tasks(map)[0];
  auto inst = ProblemInstance::create(map, {t}, reference::fleet(map), reference::stations(map));
  PsoConfig c;
  auto r = run_pso(inst, c);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations_run, c.convergence_window);
  EXPECT_EQ(r.convergence_iteration, 0);
  EXPECT_EQ(r.best_fitness, r.initial_best_fitness);
}

TEST(RunPso, MatchesOracleOnSixTasks) {
  int matched = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    testing::RandomInstanceSpec spec;
    spec.tasks = 6;
    auto inst = testing::random_instance(seed, spec);
    auto best = testing::brute_force_optimum(inst);
    PsoConfig c;
    c.seed = seed;
    c.max_iterations = 100;
    c.convergence_window = 100;
    auto r = run_pso(inst, c);
    EXPECT_GE(r.best_fitness, best.makespan);
    matched += r.best_fitness == best.makespan ? 1 : 0;
  }
  EXPECT_GE(matched, 9);
}

}  // namespace
}  // namespace uavsched
