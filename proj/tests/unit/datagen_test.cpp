#include <gtest/gtest.h>

#include "uavsched/datagen.hpp"
#include "uavsched/io.hpp"
#include "uavsched/reference.hpp"

namespace uavsched {
namespace {

class Generation : public ::testing::Test {
 protected:
  TrajectoryMap map = reference::map();
  ProblemInstance make(const GenSpec& spec) {
    return generate_instance(spec, map, reference::fleet(map), reference::stations(map));
  }
};

TEST_F(Generation, MaterialHandlingTime) {
  GenSpec spec;
  spec.n_tasks = 200;
  spec.type_weights = {0, 0, 1};
  auto inst = make(spec);
  bool saw_a_to_d = false;
  for (const auto& t : inst.tasks()) {
    EXPECT_EQ(t.type, TaskType::kMaterialHandling);
    EXPECT_NE(t.start, t.end);
    EXPECT_EQ(t.proc_time, 60 + map.flight_time(t.start, t.end));
    if (t.start == map.index_of("a") && t.end == map.index_of("d")) {
      EXPECT_EQ(t.proc_time, 282);
      saw_a_to_d = true;
    }
  }
  EXPECT_TRUE(saw_a_to_d);
}

TEST_F(Generation, InspectionBands) {
  GenSpec spec;
  spec.n_tasks = 1000;
  spec.type_weights = {1, 1, 0};
  spec.max_predecessors = 0;
  auto inst = make(spec);
  for (const auto& t : inst.tasks()) {
    EXPECT_EQ(t.start, t.end);
    if (t.type == TaskType::kSingleInspection) {
      EXPECT_GE(t.proc_time, 20);
      EXPECT_LE(t.proc_time, 80);
    } else {
      EXPECT_GE(t.proc_time, 100);
      EXPECT_LE(t.proc_time, 200);
    }
    EXPECT_LE(worst_case_execution_time(t, inst.map(), inst.stations()), 1200);
  }
}

TEST_F(Generation, EmptyAndEdgeless) {
  GenSpec spec;
  spec.n_tasks = 0;
  EXPECT_EQ(make(spec).task_count(), 0u);
  spec.n_tasks = 30;
  spec.max_predecessors = 0;
  EXPECT_TRUE(make(spec).graph().edges().empty());
}

TEST_F(Generation, ReproducibleBytes) {
  GenSpec spec;
  spec.seed = 7;
  EXPECT_EQ(instance_to_json(make(spec)), instance_to_json(make(spec)));
  GenSpec other = spec;
  other.seed = 8;
  EXPECT_NE(instance_to_json(make(spec)), instance_to_json(make(other)));
}

TEST_F(Generation, HundredTasksPassLoadChecks) {
  GenSpec spec;
  spec.n_tasks = 100;
  spec.seed = 3;
  auto inst = make(spec);
  EXPECT_EQ(inst.task_count(), 100u);
  EXPECT_TRUE(validate_precedence(inst.graph()).empty());
  auto again = parse_instance_json(instance_to_json(inst));
  EXPECT_EQ(again.task_count(), 100u);
}

TEST_F(Generation, InfeasibleBandRejected) {
  GenSpec spec;
  spec.type_weights = {0, 1, 0};
  spec.compound_inspection = {1100, 1150};
  EXPECT_THROW(make(spec), GenerationError);
  spec = {};
  spec.single_inspection = {50, 10};
  EXPECT_THROW(make(spec), GenerationError);
  spec = {};
  spec.type_weights = {0, 0, 0};
  EXPECT_THROW(make(spec), GenerationError);
}

TEST(GeneratePrecedence, ForwardEdgesReducedAndBounded) {
  std::vector<TaskId> ids;
  for (int i = 1; i <= 60; ++i) ids.push_back(i);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    auto g = generate_precedence(ids, 4, rng);
    EXPECT_TRUE(validate_precedence(g).empty());
    for (const auto& e : g.edges()) EXPECT_LT(e.pred, e.succ);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LE(g.preds(i).size(), 4u);
  }
  Rng rng(1);
  EXPECT_TRUE(generate_precedence(ids, 0, rng).edges().empty());
}

TEST(RandomMap, ShapeAndRange) {
  Rng rng(2);
  auto m = random_map(5, 2, 30, 90, rng);
  EXPECT_EQ(m.size(), 7u);
  EXPECT_EQ(m.position(5).kind, PositionKind::kRecharge);
  for (PositionIndex i = 0; i < m.size(); ++i) {
    for (PositionIndex j = 0; j < m.size(); ++j) {
      if (i != j) {
        EXPECT_GE(m.flight_time(i, j), 30);
        EXPECT_LE(m.flight_time(i, j), 90);
      }
    }
  }
}

}  // namespace
}  // namespace uavsched
