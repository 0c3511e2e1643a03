#include "uavsched/datagen.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace uavsched {

PrecedenceGraph generate_precedence(std::span<const TaskId> task_ids, int max_predecessors,
                                    Rng& rng) {
  std::vector<PrecedenceEdge> edges;
  const int cap = std::max(max_predecessors, 0);
  for (std::size_t k = 1; k < task_ids.size(); ++k) {
    int limit = std::min<int>(cap, static_cast<int>(k));
    if (limit == 0) continue;
    std::uniform_int_distribution<int> count_dist(0, limit);
    int count = count_dist(rng);
    std::vector<std::size_t> pool(k);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (int c = 0; c < count; ++c) {
      std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(c), k - 1);
      std::swap(pool[static_cast<std::size_t>(c)], pool[pick(rng)]);
      edges.push_back({task_ids[pool[static_cast<std::size_t>(c)]], task_ids[k]});
    }
  }
  PrecedenceGraph raw(std::vector<TaskId>(task_ids.begin(), task_ids.end()), std::move(edges));
  return transitive_reduction(raw);
}

ProblemInstance generate_instance(const GenSpec& spec, const TrajectoryMap& map,
                                  std::vector<Uav> uavs, std::vector<RechargeStation> stations) {
  if (spec.n_tasks < 0) throw GenerationError("n_tasks must be >= 0");
  if (spec.max_predecessors < 0) throw GenerationError("max_predecessors must be >= 0");
  for (const ProcBand& b : {spec.single_inspection, spec.compound_inspection}) {
    if (b.lo <= 0 || b.hi < b.lo) throw GenerationError("processing-time bands must be positive ranges");
  }
  if (spec.handling_overhead <= 0) throw GenerationError("handling overhead must be > 0");
  double weight_sum = 0.0;
  for (double w : spec.type_weights) {
    if (w < 0.0) throw GenerationError("type weights must be >= 0");
    weight_sum += w;
  }
  if (weight_sum <= 0.0) throw GenerationError("at least one task type needs a positive weight");
  if (stations.empty() || uavs.empty()) throw GenerationError("need at least one UAV and one station");

  std::vector<PositionIndex> work;
  for (PositionIndex p = 0; p < map.size(); ++p) {
    if (map.position(p).kind == PositionKind::kWork) work.push_back(p);
  }
  if (spec.n_tasks > 0 && work.empty()) throw GenerationError("map has no work positions");

  Seconds capacity = uavs.front().battery_capacity;
  for (const auto& u : uavs) capacity = std::min(capacity, u.battery_capacity);

  // An inspection band whose lower end cannot fit anywhere makes the spec
  // infeasible outright.
  auto cheapest_fit = [&](Seconds proc) {
    Seconds best = -1;
    for (PositionIndex p : work) {
      Task probe{1, TaskType::kSingleInspection, p, p, proc, {}};
      Seconds w = worst_case_execution_time(probe, map, stations);
      if (best < 0 || w < best) best = w;
    }
    return best;
  };
  if (!work.empty()) {
    if (spec.type_weights[0] > 0 && cheapest_fit(spec.single_inspection.lo) > capacity) {
      throw GenerationError("single-inspection band exceeds the battery bound");
    }
    if (spec.type_weights[1] > 0 && cheapest_fit(spec.compound_inspection.lo) > capacity) {
      throw GenerationError("compound-inspection band exceeds the battery bound");
    }
  }

  Rng rng(spec.seed);
  std::discrete_distribution<int> type_dist(spec.type_weights.begin(), spec.type_weights.end());
  std::uniform_int_distribution<std::size_t> pos_dist(0, work.empty() ? 0 : work.size() - 1);
  auto draw = [&](ProcBand b) { return std::uniform_int_distribution<Seconds>(b.lo, b.hi)(rng); };

  std::vector<Task> tasks;
  tasks.reserve(static_cast<std::size_t>(spec.n_tasks));
  for (int i = 1; i <= spec.n_tasks; ++i) {
    Task t;
    t.id = i;
    bool ok = false;
    for (int attempt = 0; attempt < spec.max_resamples && !ok; ++attempt) {
      t.type = static_cast<TaskType>(type_dist(rng));
      switch (t.type) {
        case TaskType::kSingleInspection:
          t.start = t.end = work[pos_dist(rng)];
          t.proc_time = draw(spec.single_inspection);
          break;
        case TaskType::kCompoundInspection:
          t.start = t.end = work[pos_dist(rng)];
          t.proc_time = draw(spec.compound_inspection);
          break;
        case TaskType::kMaterialHandling:
          t.start = work[pos_dist(rng)];
          t.end = work[pos_dist(rng)];
          if (work.size() > 1) {
            while (t.end == t.start) t.end = work[pos_dist(rng)];
          }
          t.proc_time = spec.handling_overhead + map.flight_time(t.start, t.end);
          break;
      }
      ok = worst_case_execution_time(t, map, stations) <= capacity;
    }
    if (!ok) {
      throw GenerationError("task " + std::to_string(i) + " does not fit one battery charge after " +
                            std::to_string(spec.max_resamples) + " draws");
    }
    tasks.push_back(t);
  }

  std::vector<TaskId> ids;
  for (const auto& t : tasks) ids.push_back(t.id);
  PrecedenceGraph graph = generate_precedence(ids, spec.max_predecessors, rng);
  for (auto& t : tasks) {
    auto idx = graph.index_of(t.id);
    for (std::size_t p : graph.preds(*idx)) t.predecessors.push_back(graph.nodes()[p]);
  }
  try {
    return ProblemInstance::create(map, std::move(tasks), std::move(uavs), std::move(stations));
  } catch (const InstanceError& e) {
    throw GenerationError(e.what());
  }
}

TrajectoryMap random_map(int work, int recharge, Seconds lo, Seconds hi, Rng& rng) {
  if (work < 0 || recharge < 0 || lo <= 0 || hi < lo) throw GenerationError("bad random map spec");
  std::vector<Position> positions;
  for (int i = 1; i <= work; ++i) positions.push_back({"p" + std::to_string(i), PositionKind::kWork});
  for (int i = 1; i <= recharge; ++i) {
    positions.push_back({"S" + std::to_string(i), PositionKind::kRecharge});
  }
  const std::size_t n = positions.size();
  std::vector<std::vector<Seconds>> ft(n, std::vector<Seconds>(n, 0));
  std::uniform_int_distribution<Seconds> dist(lo, hi);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) ft[i][j] = ft[j][i] = dist(rng);
  }
  return TrajectoryMap(std::move(positions), std::move(ft));
}

}  // namespace uavsched
