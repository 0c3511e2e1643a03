#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace uavsched {

using TaskId = int;

struct PrecedenceEdge {
  TaskId pred = 0;
  TaskId succ = 0;

  friend auto operator<=>(const PrecedenceEdge&, const PrecedenceEdge&) = default;
};

// Directed graph over task ids. Construction only checks that edges reference
// known nodes; acyclicity and non-redundancy are reported by
// validate_precedence().
class PrecedenceGraph {
 public:
  PrecedenceGraph() = default;
  PrecedenceGraph(std::vector<TaskId> nodes, std::vector<PrecedenceEdge> edges);

  std::span<const TaskId> nodes() const { return nodes_; }
  // Sorted, duplicate-free.
  std::span<const PrecedenceEdge> edges() const { return edges_; }
  std::size_t size() const { return nodes_.size(); }

  std::optional<std::size_t> index_of(TaskId id) const;
  bool contains(TaskId id) const { return index_.contains(id); }

  // Dense-index adjacency, sorted ascending.
  std::span<const std::size_t> preds(std::size_t node) const { return preds_[node]; }
  std::span<const std::size_t> succs(std::size_t node) const { return succs_[node]; }

  const std::vector<TaskId>& predecessors_of(TaskId id) const;
  bool has_edge(TaskId pred, TaskId succ) const;

 private:
  std::vector<TaskId> nodes_;
  std::vector<PrecedenceEdge> edges_;
  std::unordered_map<TaskId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> preds_;
  std::vector<std::vector<std::size_t>> succs_;
  std::vector<std::vector<TaskId>> pred_ids_;
};

struct PrecedenceViolation {
  enum class Kind { kCycle, kRedundantEdge };
  Kind kind = Kind::kCycle;
  // kCycle: the tasks of one strongly connected component (ascending).
  // kRedundantEdge: {pred, succ} of the implied edge.
  std::vector<TaskId> tasks;

  std::string describe() const;
};

// One kCycle entry per cyclic strongly connected component (self-loops
// included) and one kRedundantEdge entry per edge (u, w) for which another
// path u -> ... -> w of length >= 2 exists.
std::vector<PrecedenceViolation> validate_precedence(const PrecedenceGraph& graph);

// Drops every redundant edge. Throws std::invalid_argument on a cyclic graph.
PrecedenceGraph transitive_reduction(const PrecedenceGraph& graph);

// Nodes in a topological order, smallest ready task id first.
// std::nullopt when the graph has a cycle.
std::optional<std::vector<std::size_t>> topological_order(const PrecedenceGraph& graph);

// reach[u] lists every dense index reachable from u through >= 1 edge.
// Throws std::invalid_argument on a cyclic graph.
std::vector<std::vector<std::size_t>> transitive_successors(const PrecedenceGraph& graph);
std::vector<std::vector<std::size_t>> transitive_predecessors(const PrecedenceGraph& graph);

}  // namespace uavsched
