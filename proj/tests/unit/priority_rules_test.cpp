#include <gtest/gtest.h>

#include "oracle.hpp"
#include "uavsched/priority_rules.hpp"
#include "uavsched/reference.hpp"

namespace uavsched {
namespace {

class ReferenceRules : public ::testing::Test {
 protected:
  ProblemInstance inst = reference::instance();
  Sequence order(PriorityRule r) { return priority_ordering(inst, r); }
};

TEST_F(ReferenceRules, MaxTaskTime) {
  EXPECT_EQ(order(PriorityRule::kMaxTaskTime), (Sequence{3, 2, 1, 4, 7, 9, 6, 12, 5, 8, 10, 11}));
}

TEST_F(ReferenceRules, MinTaskTime) {
  EXPECT_EQ(order(PriorityRule::kMinTaskTime), (Sequence{1, 2, 5, 6, 4, 8, 10, 11, 7, 9, 3, 12}));
}

TEST_F(ReferenceRules, PredecessorAndFollowerCounts) {
  EXPECT_EQ(order(PriorityRule::kMinTotalPredecessors),
            (Sequence{1, 2, 3, 4, 5, 6, 7, 9, 12, 8, 10, 11}));
  EXPECT_EQ(order(PriorityRule::kMaxTotalFollowers),
            (Sequence{1, 2, 4, 5, 6, 8, 3, 7, 10, 9, 11, 12}));
  EXPECT_EQ(order(PriorityRule::kMinCumulativePredecessors),
            (Sequence{1, 2, 3, 4, 5, 6, 7, 9, 8, 10, 11, 12}));
  EXPECT_EQ(order(PriorityRule::kMaxCumulativeFollowers),
            (Sequence{2, 6, 1, 4, 3, 5, 7, 8, 10, 9, 11, 12}));
}

TEST_F(ReferenceRules, AllFeasible) {
  for (const auto& [rule, seq] : priority_orderings(inst)) {
    EXPECT_TRUE(is_precedence_feasible(seq, inst.graph())) << rule_name(rule);
    EXPECT_EQ(seq.size(), 12u);
  }
}

TEST(PriorityRules, SingleTask) {
  auto map = reference::map();
  auto t = reference::tasks(map)[4];
  t.predecessors.clear();
  auto inst = ProblemInstance::create(map, {t}, reference::fleet(map), reference::stations(map));
  for (const auto& [rule, seq] : priority_orderings(inst)) EXPECT_EQ(seq, Sequence{5});
}

TEST(PriorityRules, NamesRoundTrip) {
  for (auto r : kAllPriorityRules) EXPECT_EQ(parse_rule(rule_name(r)), r);
  EXPECT_EQ(parse_rule("max-task-time"), PriorityRule::kMaxTaskTime);
  EXPECT_FALSE(parse_rule("fastest"));
}

TEST(PriorityRules, FeasibleOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    testing::RandomInstanceSpec spec;
    spec.tasks = 20;
    spec.max_predecessors = 3;
    auto inst = testing::random_instance(seed, spec);
    for (const auto& [rule, seq] : priority_orderings(inst)) {
      EXPECT_TRUE(is_precedence_feasible(seq, inst.graph())) << rule_name(rule) << " seed " << seed;
    }
  }
}

}  // namespace
}  // namespace uavsched
