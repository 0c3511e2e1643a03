#include "uavsched/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_map>

namespace uavsched {

SwapPair::SwapPair(std::size_t i, std::size_t j) : first(std::min(i, j)), second(std::max(i, j)) {
  if (i == j) throw VelocityError("swap pair needs two distinct indices");
}

Sequence apply_swaps(Sequence seq, const SwapPairList& velocity) {
  for (const auto& p : velocity) {
    if (p.second >= seq.size()) {
      throw VelocityError("swap (" + std::to_string(p.first) + ", " + std::to_string(p.second) +
                          ") out of range for sequence of length " + std::to_string(seq.size()));
    }
    std::swap(seq[p.first], seq[p.second]);
  }
  return seq;
}

SwapPairList sequence_difference(const Sequence& target, const Sequence& current) {
  if (target.size() != current.size() ||
      !std::is_permutation(target.begin(), target.end(), current.begin())) {
    throw std::invalid_argument("sequence_difference: sequences cover different tasks");
  }
  Sequence work = current;
  std::unordered_map<TaskId, std::size_t> where;
  for (std::size_t i = 0; i < work.size(); ++i) where[work[i]] = i;
  SwapPairList out;
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (work[i] == target[i]) continue;
    std::size_t j = where[target[i]];
    out.emplace_back(i, j);
    where[work[i]] = j;
    where[work[j]] = i;
    std::swap(work[i], work[j]);
  }
  return out;
}

SwapPairList merge_pairs(SwapPairList base, const SwapPairList& extra) {
  std::set<SwapPair> present(base.begin(), base.end());
  for (const auto& p : extra) {
    if (present.insert(p).second) base.push_back(p);
  }
  return base;
}

std::size_t pairs_to_copy(double weight, std::size_t available) {
  double w = std::clamp(weight, 0.0, 1.0);
  return static_cast<std::size_t>(std::lround(w * static_cast<double>(available)));
}

PairSelector random_selector(Rng& rng) {
  return [&rng](std::size_t available, std::size_t count) {
    std::vector<std::size_t> idx(available);
    for (std::size_t i = 0; i < available; ++i) idx[i] = i;
    // Partial Fisher-Yates, then restore list order.
    for (std::size_t i = 0; i < count && i < available; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, available - 1);
      std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(std::min(count, available));
    std::sort(idx.begin(), idx.end());
    return idx;
  };
}

SwapPairList blend_velocity(const SwapPairList& velocity, const SwapPairList& cognitive,
                            double cognitive_weight, const SwapPairList& social,
                            double social_weight, const PairSelector& select) {
  auto pick = [&](const SwapPairList& list, double weight) {
    SwapPairList chosen;
    std::size_t count = pairs_to_copy(weight, list.size());
    if (count == 0) return chosen;
    for (std::size_t i : select(list.size(), count)) chosen.push_back(list.at(i));
    return chosen;
  };
  SwapPairList out = merge_pairs(velocity, pick(cognitive, cognitive_weight));
  return merge_pairs(std::move(out), pick(social, social_weight));
}

SwapPairList random_velocity(std::size_t n, std::size_t max_pairs, Rng& rng) {
  SwapPairList out;
  if (n < 2 || max_pairs == 0) return out;
  const std::size_t distinct = n * (n - 1) / 2;
  std::uniform_int_distribution<std::size_t> count_dist(1, std::min(max_pairs, distinct));
  std::size_t count = count_dist(rng);
  std::uniform_int_distribution<std::size_t> index(0, n - 1);
  std::set<SwapPair> seen;
  while (out.size() < count) {
    std::size_t i = index(rng);
    std::size_t j = index(rng);
    if (i == j) continue;
    SwapPair p(i, j);
    if (seen.insert(p).second) out.push_back(p);
  }
  return out;
}

bool is_precedence_feasible(const Sequence& seq, const PrecedenceGraph& graph) {
  if (seq.size() != graph.size()) return false;
  std::vector<bool> placed(graph.size(), false);
  for (TaskId t : seq) {
    auto idx = graph.index_of(t);
    if (!idx || placed[*idx]) return false;
    for (std::size_t p : graph.preds(*idx)) {
      if (!placed[p]) return false;
    }
    placed[*idx] = true;
  }
  return true;
}

Sequence repair(const Sequence& seq, const PrecedenceGraph& graph) {
  const std::size_t n = graph.size();
  if (seq.size() != n) throw std::invalid_argument("repair: sequence length differs from task count");
  std::vector<std::size_t> dense(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    auto idx = graph.index_of(seq[i]);
    if (!idx || seen[*idx]) throw std::invalid_argument("repair: sequence is not a permutation");
    seen[*idx] = true;
    dense[i] = *idx;
  }

  std::vector<std::size_t> missing(n);
  for (std::size_t u = 0; u < n; ++u) missing[u] = graph.preds(u).size();
  std::vector<bool> placed(n, false);
  std::vector<std::size_t> deferred;  // original relative order
  Sequence out;
  out.reserve(n);

  auto place = [&](std::size_t u) {
    placed[u] = true;
    out.push_back(graph.nodes()[u]);
    for (std::size_t v : graph.succs(u)) --missing[v];
  };

  for (std::size_t u : dense) {
    if (missing[u] != 0) {
      deferred.push_back(u);
      continue;
    }
    place(u);
    // Release held-back tasks that just became ready, earliest-held first,
    // rescanning after every placement.
    bool progress = true;
    while (progress) {
      progress = false;
      for (auto it = deferred.begin(); it != deferred.end(); ++it) {
        if (missing[*it] == 0) {
          std::size_t v = *it;
          deferred.erase(it);
          place(v);
          progress = true;
          break;
        }
      }
    }
  }
  if (!deferred.empty()) throw std::invalid_argument("repair: precedence graph is cyclic");
  return out;
}

}  // namespace uavsched
