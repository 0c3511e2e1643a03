#pragma once

// Task sequences (particles) and swap-pair velocities.

#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "uavsched/precedence.hpp"

namespace uavsched {

using Sequence = std::vector<TaskId>;
using Rng = std::mt19937_64;

// Transposition of two zero-based sequence indices, stored with first < second.
struct SwapPair {
  std::size_t first = 0;
  std::size_t second = 0;

  SwapPair() = default;
  SwapPair(std::size_t i, std::size_t j);

  friend auto operator<=>(const SwapPair&, const SwapPair&) = default;
};

using SwapPairList = std::vector<SwapPair>;

class VelocityError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Applies the transpositions left to right. Throws VelocityError if an index
// is out of range.
Sequence apply_swaps(Sequence seq, const SwapPairList& velocity);

// Greedy decomposition of `target - current`: scan ascending, and wherever the
// working copy disagrees with target swap the wanted task into place.
// apply_swaps(current, result) == target. Throws std::invalid_argument when
// the two sequences are not permutations of the same tasks.
SwapPairList sequence_difference(const Sequence& target, const Sequence& current);

// Appends `extra` to `base`, dropping pairs already present (as unordered
// index sets) in the result.
SwapPairList merge_pairs(SwapPairList base, const SwapPairList& extra);

// round(min(weight, 1) * available), never negative.
std::size_t pairs_to_copy(double weight, std::size_t available);

// Chooses `count` of `available` indices; returned indices are ascending.
using PairSelector = std::function<std::vector<std::size_t>(std::size_t available, std::size_t count)>;

PairSelector random_selector(Rng& rng);

// velocity + weight_c x cognitive + weight_s x social, where each product
// copies pairs_to_copy(weight, list.size()) pairs picked by `select`.
SwapPairList blend_velocity(const SwapPairList& velocity, const SwapPairList& cognitive,
                            double cognitive_weight, const SwapPairList& social,
                            double social_weight, const PairSelector& select);

// Random velocity with a uniform pair count in [1, max_pairs] of distinct
// transpositions over a sequence of length n. Empty when n < 2.
SwapPairList random_velocity(std::size_t n, std::size_t max_pairs, Rng& rng);

bool is_precedence_feasible(const Sequence& seq, const PrecedenceGraph& graph);

// Precedence repair. Left-to-right scan; a task met before one of its
// predecessors is held back and inserted right after its last predecessor
// is placed. Other tasks keep their relative order, and a feasible input is
// returned unchanged. Throws std::invalid_argument when the sequence is not
// a permutation of the graph's tasks or the graph is cyclic.
Sequence repair(const Sequence& seq, const PrecedenceGraph& graph);

}  // namespace uavsched
