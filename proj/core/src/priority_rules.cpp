#include "uavsched/priority_rules.hpp"

#include <algorithm>
#include <numeric>

namespace uavsched {

std::string_view rule_name(PriorityRule rule) {
  switch (rule) {
    case PriorityRule::kMaxRankedPositionalWeight: return "max-ranked-positional-weight";
    case PriorityRule::kMinInversePositionalWeight: return "min-inverse-positional-weight";
    case PriorityRule::kMinTotalPredecessors: return "min-total-predecessors";
    case PriorityRule::kMaxTotalFollowers: return "max-total-followers";
    case PriorityRule::kMaxTaskTime: return "max-task-time";
    case PriorityRule::kMinTaskTime: return "min-task-time";
    case PriorityRule::kMinCumulativePredecessors: return "min-cumulative-predecessors";
    case PriorityRule::kMaxCumulativeFollowers: return "max-cumulative-followers";
  }
  return "unknown";
}

std::optional<PriorityRule> parse_rule(std::string_view name) {
  for (PriorityRule r : kAllPriorityRules) {
    if (rule_name(r) == name) return r;
  }
  return std::nullopt;
}

Sequence priority_ordering(const ProblemInstance& instance, PriorityRule rule) {
  const PrecedenceGraph& graph = instance.graph();
  const std::size_t n = graph.size();
  const auto ids = graph.nodes();

  std::vector<Seconds> proc(n);
  for (std::size_t u = 0; u < n; ++u) proc[u] = instance.task(ids[u]).proc_time;

  // Lower key sorts first.
  std::vector<Seconds> key(n, 0);
  auto weight_over = [&](const std::vector<std::vector<std::size_t>>& reach, std::size_t u) {
    Seconds w = proc[u];
    for (std::size_t v : reach[u]) w += proc[v];
    return w;
  };
  switch (rule) {
    case PriorityRule::kMaxRankedPositionalWeight: {
      auto succ = transitive_successors(graph);
      for (std::size_t u = 0; u < n; ++u) key[u] = -weight_over(succ, u);
      break;
    }
    case PriorityRule::kMinInversePositionalWeight: {
      auto pred = transitive_predecessors(graph);
      for (std::size_t u = 0; u < n; ++u) key[u] = weight_over(pred, u);
      break;
    }
    case PriorityRule::kMinTotalPredecessors: {
      auto pred = transitive_predecessors(graph);
      for (std::size_t u = 0; u < n; ++u) key[u] = static_cast<Seconds>(pred[u].size());
      break;
    }
    case PriorityRule::kMaxTotalFollowers: {
      auto succ = transitive_successors(graph);
      for (std::size_t u = 0; u < n; ++u) key[u] = -static_cast<Seconds>(succ[u].size());
      break;
    }
    case PriorityRule::kMaxTaskTime:
      for (std::size_t u = 0; u < n; ++u) key[u] = -proc[u];
      break;
    case PriorityRule::kMinTaskTime:
      for (std::size_t u = 0; u < n; ++u) key[u] = proc[u];
      break;
    case PriorityRule::kMinCumulativePredecessors:
      for (std::size_t u = 0; u < n; ++u) key[u] = static_cast<Seconds>(graph.preds(u).size());
      break;
    case PriorityRule::kMaxCumulativeFollowers:
      for (std::size_t u = 0; u < n; ++u) key[u] = -static_cast<Seconds>(graph.succs(u).size());
      break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return key[a] != key[b] ? key[a] < key[b] : ids[a] < ids[b];
  });
  Sequence seq;
  seq.reserve(n);
  for (std::size_t u : order) seq.push_back(ids[u]);
  return repair(seq, graph);
}

std::array<std::pair<PriorityRule, Sequence>, 8> priority_orderings(const ProblemInstance& instance) {
  std::array<std::pair<PriorityRule, Sequence>, 8> out;
  for (std::size_t i = 0; i < kAllPriorityRules.size(); ++i) {
    out[i] = {kAllPriorityRules[i], priority_ordering(instance, kAllPriorityRules[i])};
  }
  return out;
}

}  // namespace uavsched
