#include <gtest/gtest.h>

#include <algorithm>

#include "uavsched/precedence.hpp"
#include "uavsched/reference.hpp"

namespace uavsched {
namespace {

PrecedenceGraph graph(std::vector<TaskId> nodes, std::vector<PrecedenceEdge> edges) {
  return PrecedenceGraph(std::move(nodes), std::move(edges));
}

TEST(ValidatePrecedence, TwoCycle) {
  auto v = validate_precedence(graph({1, 2}, {{1, 2}, {2, 1}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, PrecedenceViolation::Kind::kCycle);
  EXPECT_EQ(v[0].tasks, (std::vector<TaskId>{1, 2}));
}

TEST(ValidatePrecedence, SelfLoopIsACycle) {
  auto v = validate_precedence(graph({1}, {{1, 1}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, PrecedenceViolation::Kind::kCycle);
}

TEST(ValidatePrecedence, ShortRedundancy) {
  auto v = validate_precedence(graph({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, PrecedenceViolation::Kind::kRedundantEdge);
  EXPECT_EQ(v[0].tasks, (std::vector<TaskId>{1, 3}));
}

TEST(ValidatePrecedence, LongRedundancy) {
  auto v = validate_precedence(graph({1, 2, 3, 5}, {{1, 2}, {2, 3}, {3, 5}, {1, 5}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].tasks, (std::vector<TaskId>{1, 5}));
}

TEST(ValidatePrecedence, FineGraphAndReference) {
  EXPECT_TRUE(validate_precedence(graph({1, 2, 3, 4}, {{1, 3}, {2, 3}, {3, 4}})).empty());
  EXPECT_TRUE(validate_precedence(reference::instance().graph()).empty());
  EXPECT_TRUE(validate_precedence(graph({}, {})).empty());
}

TEST(PrecedenceGraph, RejectsUnknownNodes) {
  EXPECT_THROW(graph({1, 2}, {{1, 3}}), std::invalid_argument);
}

TEST(TransitiveReduction, PaperShapes) {
  auto r = transitive_reduction(graph({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}}));
  std::vector<PrecedenceEdge> e(r.edges().begin(), r.edges().end());
  EXPECT_EQ(e, (std::vector<PrecedenceEdge>{{1, 2}, {2, 3}}));

  r = transitive_reduction(graph({1, 2, 3, 5}, {{1, 2}, {2, 3}, {3, 5}, {1, 5}}));
  e.assign(r.edges().begin(), r.edges().end());
  EXPECT_EQ(e, (std::vector<PrecedenceEdge>{{1, 2}, {2, 3}, {3, 5}}));
  EXPECT_FALSE(r.has_edge(1, 5));
}

TEST(TopologicalOrder, SmallestReadyFirst) {
  auto g = graph({5, 1, 3, 2}, {{3, 1}});
  auto order = topological_order(g);
  ASSERT_TRUE(order);
  std::vector<TaskId> ids;
  for (auto i : *order) ids.push_back(g.nodes()[i]);
  EXPECT_EQ(ids, (std::vector<TaskId>{2, 3, 1, 5}));
  EXPECT_FALSE(topological_order(graph({1, 2}, {{1, 2}, {2, 1}})));
}

TEST(TransitiveClosure, ReferenceCounts) {
  const auto inst = reference::instance();
  const auto& g = inst.graph();
  auto succ = transitive_successors(g);
  auto pred = transitive_predecessors(g);
  auto at = [&](TaskId id) { return *g.index_of(id); };
  // 2 reaches 5, 6, 8, 10, 11, 12
  EXPECT_EQ(succ[at(2)].size(), 6u);
  EXPECT_EQ(pred[at(11)].size(), 7u);  // 10, 6, 8, 4, 5, 1, 2
  EXPECT_TRUE(pred[at(1)].empty());
  EXPECT_EQ(g.predecessors_of(10), (std::vector<TaskId>{6, 8}));
}

}  // namespace
}  // namespace uavsched
