#pragma once

// Seeded random benchmark instances: banded processing times per task type
// and non-cyclic, non-redundant precedence graphs.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "uavsched/model.hpp"
#include "uavsched/sequence.hpp"

namespace uavsched {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProcBand {
  Seconds lo = 0;
  Seconds hi = 0;
};

struct GenSpec {
  int n_tasks = 10;
  int max_predecessors = 3;
  // single inspection, compound inspection, material handling
  std::array<double, 3> type_weights{1.0, 1.0, 1.0};
  std::uint64_t seed = 1;
  ProcBand single_inspection{20, 80};
  ProcBand compound_inspection{100, 200};
  Seconds handling_overhead = 60;  // pick-up + release, added to the transport flight
  int max_resamples = 1000;
};

// Uniform predecessor count in [0, min(max_predecessors, k)] for the k-th id,
// predecessors drawn from lower-indexed ids, then transitive reduction.
PrecedenceGraph generate_precedence(std::span<const TaskId> task_ids, int max_predecessors,
                                    Rng& rng);

// Tasks 1..n on the map's work positions. Material handling takes
// handling_overhead + flight(start, end). Any task that would not fit in one
// battery charge is resampled; GenerationError if that keeps failing or the
// spec is malformed.
ProblemInstance generate_instance(const GenSpec& spec, const TrajectoryMap& map,
                                  std::vector<Uav> uavs, std::vector<RechargeStation> stations);

// Random complete map: `work` positions p1..pN plus `recharge` stations
// S1..SM with symmetric flight times drawn uniformly from [lo, hi].
TrajectoryMap random_map(int work, int recharge, Seconds lo, Seconds hi, Rng& rng);

}  // namespace uavsched
