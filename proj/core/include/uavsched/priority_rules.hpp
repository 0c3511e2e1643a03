#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>

#include "uavsched/model.hpp"
#include "uavsched/sequence.hpp"

namespace uavsched {

// Initial-particle heuristics. "Total" counts walk the whole transitive
// closure, "cumulative" counts only direct neighbours.
enum class PriorityRule {
  kMaxRankedPositionalWeight,    // proc + proc of all successors, descending
  kMinInversePositionalWeight,   // proc + proc of all predecessors, ascending
  kMinTotalPredecessors,         // transitive predecessor count, ascending
  kMaxTotalFollowers,            // transitive follower count, descending
  kMaxTaskTime,                  // proc_time descending
  kMinTaskTime,                  // proc_time ascending
  kMinCumulativePredecessors,    // direct predecessor count, ascending
  kMaxCumulativeFollowers,       // direct follower count, descending
};

inline constexpr std::array<PriorityRule, 8> kAllPriorityRules{
    PriorityRule::kMaxRankedPositionalWeight, PriorityRule::kMinInversePositionalWeight,
    PriorityRule::kMinTotalPredecessors,      PriorityRule::kMaxTotalFollowers,
    PriorityRule::kMaxTaskTime,               PriorityRule::kMinTaskTime,
    PriorityRule::kMinCumulativePredecessors, PriorityRule::kMaxCumulativeFollowers,
};

std::string_view rule_name(PriorityRule rule);
std::optional<PriorityRule> parse_rule(std::string_view name);

// Stable sort by the rule's key (ties by task id ascending), then repair().
Sequence priority_ordering(const ProblemInstance& instance, PriorityRule rule);

std::array<std::pair<PriorityRule, Sequence>, 8> priority_orderings(const ProblemInstance& instance);

}  // namespace uavsched
