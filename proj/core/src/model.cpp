#include "uavsched/model.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace uavsched {

TrajectoryMap::TrajectoryMap(std::vector<Position> positions,
                             std::vector<std::vector<Seconds>> flight_time)
    : positions_(std::move(positions)) {
  const std::size_t n = positions_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (positions_[i].id.empty()) throw InstanceError("position " + std::to_string(i) + " has an empty id");
    if (!index_.emplace(positions_[i].id, i).second) {
      throw InstanceError("duplicate position id '" + positions_[i].id + "'");
    }
  }
  if (flight_time.size() != n) {
    throw InstanceError("flight_time has " + std::to_string(flight_time.size()) +
                        " rows for " + std::to_string(n) + " positions");
  }
  flight_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (flight_time[i].size() != n) {
      throw InstanceError("flight_time row '" + positions_[i].id + "' has " +
                          std::to_string(flight_time[i].size()) + " entries, expected " +
                          std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) flight_[i * n + j] = flight_time[i][j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (flight_[i * n + i] != 0) {
      throw InstanceError("flight_time[" + positions_[i].id + "][" + positions_[i].id +
                          "] must be 0");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      Seconds a = flight_[i * n + j];
      Seconds b = flight_[j * n + i];
      if (a != b) {
        throw InstanceError("flight_time is asymmetric between '" + positions_[i].id + "' and '" +
                            positions_[j].id + "' (" + std::to_string(a) + " vs " +
                            std::to_string(b) + ")");
      }
      if (a <= 0) {
        throw InstanceError("flight_time between '" + positions_[i].id + "' and '" +
                            positions_[j].id + "' must be positive");
      }
    }
  }
}

std::optional<PositionIndex> TrajectoryMap::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PositionIndex TrajectoryMap::index_of(std::string_view id) const {
  auto idx = find(id);
  if (!idx) throw InstanceError("unknown position '" + std::string(id) + "'");
  return *idx;
}

std::vector<std::vector<Seconds>> TrajectoryMap::matrix() const {
  const std::size_t n = size();
  std::vector<std::vector<Seconds>> out(n, std::vector<Seconds>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = flight_[i * n + j];
  }
  return out;
}

std::string_view to_string(TaskType type) {
  switch (type) {
    case TaskType::kSingleInspection: return "single_inspection";
    case TaskType::kCompoundInspection: return "compound_inspection";
    case TaskType::kMaterialHandling: return "material_handling";
  }
  return "unknown";
}

std::optional<TaskType> parse_task_type(std::string_view name) {
  if (name == "single_inspection") return TaskType::kSingleInspection;
  if (name == "compound_inspection") return TaskType::kCompoundInspection;
  if (name == "material_handling") return TaskType::kMaterialHandling;
  return std::nullopt;
}

TaskType infer_task_type(PositionIndex start, PositionIndex end, std::int64_t proc_time) {
  if (start != end) return TaskType::kMaterialHandling;
  return proc_time <= 80 ? TaskType::kSingleInspection : TaskType::kCompoundInspection;
}

StationDistance nearest_recharge_station(const TrajectoryMap& map,
                                         std::span<const RechargeStation> stations,
                                         PositionIndex pos) {
  if (stations.empty()) throw InstanceError("no recharge station configured");
  StationDistance best{0, map.flight_time(pos, stations[0].pos)};
  for (std::size_t s = 1; s < stations.size(); ++s) {
    Seconds f = map.flight_time(pos, stations[s].pos);
    if (f < best.flight) best = {s, f};
  }
  return best;
}

Seconds task_upper_bound_time(Seconds prep_time, const Task& task, const TrajectoryMap& map,
                              std::span<const RechargeStation> stations) {
  return prep_time + task.proc_time + nearest_recharge_station(map, stations, task.end).flight;
}

Seconds worst_case_execution_time(const Task& task, const TrajectoryMap& map,
                                  std::span<const RechargeStation> stations) {
  Seconds worst_prep = 0;
  for (PositionIndex p = 0; p < map.size(); ++p) {
    worst_prep = std::max(worst_prep, map.flight_time(p, task.start));
  }
  return task_upper_bound_time(worst_prep, task, map, stations);
}

std::vector<std::string> ProblemInstance::check(const TrajectoryMap& map,
                                                std::span<const Task> tasks,
                                                std::span<const Uav> uavs,
                                                std::span<const RechargeStation> stations) {
  std::vector<std::string> problems;
  auto pos_name = [&](PositionIndex p) {
    return p < map.size() ? "'" + map.position(p).id + "'" : "#" + std::to_string(p);
  };

  // Stations: each on a distinct recharge-kind position, and every
  // recharge-kind position backed by exactly one station.
  std::vector<int> station_refs(map.size(), 0);
  if (stations.empty()) problems.push_back("instance has no recharge station");
  for (std::size_t s = 0; s < stations.size(); ++s) {
    const auto& st = stations[s];
    if (st.pos >= map.size()) {
      problems.push_back("station " + std::to_string(s) + " references unknown position");
      continue;
    }
    if (map.position(st.pos).kind != PositionKind::kRecharge) {
      problems.push_back("station at " + pos_name(st.pos) + " is not a recharge-kind position");
    }
    if (st.slots <= 0) problems.push_back("station at " + pos_name(st.pos) + " needs >= 1 slot");
    ++station_refs[st.pos];
  }
  for (PositionIndex p = 0; p < map.size(); ++p) {
    if (map.position(p).kind == PositionKind::kRecharge && station_refs[p] != 1) {
      problems.push_back("recharge position " + pos_name(p) + " is referenced by " +
                         std::to_string(station_refs[p]) + " stations, expected 1");
    }
  }

  if (uavs.empty()) problems.push_back("instance has no UAV");
  std::vector<std::string> uav_ids;
  Seconds min_capacity = std::numeric_limits<Seconds>::max();
  for (const auto& u : uavs) {
    if (u.id.empty()) problems.push_back("UAV with empty id");
    if (std::find(uav_ids.begin(), uav_ids.end(), u.id) != uav_ids.end()) {
      problems.push_back("duplicate UAV id '" + u.id + "'");
    }
    uav_ids.push_back(u.id);
    if (u.initial_pos >= map.size()) problems.push_back("UAV '" + u.id + "' starts at an unknown position");
    if (u.battery_capacity <= 0) problems.push_back("UAV '" + u.id + "' battery_capacity must be > 0");
    if (u.recharge_duration <= 0) problems.push_back("UAV '" + u.id + "' recharge_duration must be > 0");
    min_capacity = std::min(min_capacity, u.battery_capacity);
  }

  std::vector<TaskId> ids;
  std::vector<PrecedenceEdge> edges;
  bool positions_ok = true;
  for (const auto& t : tasks) {
    const std::string name = "task " + std::to_string(t.id);
    if (t.id <= 0) problems.push_back(name + ": id must be a positive integer");
    if (std::find(ids.begin(), ids.end(), t.id) != ids.end()) {
      problems.push_back("duplicate task id " + std::to_string(t.id));
    }
    ids.push_back(t.id);
    if (t.proc_time <= 0) problems.push_back(name + ": proc_time must be > 0");
    for (PositionIndex p : {t.start, t.end}) {
      if (p >= map.size()) {
        problems.push_back(name + ": unknown position");
        positions_ok = false;
      } else if (map.position(p).kind != PositionKind::kWork) {
        problems.push_back(name + ": position " + pos_name(p) + " is a recharge station");
      }
    }
    if (t.type != TaskType::kMaterialHandling && t.start != t.end) {
      problems.push_back(name + ": inspection tasks must start and end at the same position");
    }
    for (TaskId p : t.predecessors) edges.push_back({p, t.id});
  }

  if (problems.empty()) {
    try {
      PrecedenceGraph graph(ids, edges);
      for (const auto& v : validate_precedence(graph)) problems.push_back(v.describe());
    } catch (const std::invalid_argument& e) {
      problems.emplace_back(e.what());
    }
  }

  if (positions_ok && !stations.empty() && !uavs.empty()) {
    for (const auto& t : tasks) {
      Seconds worst = worst_case_execution_time(t, map, stations);
      if (worst > min_capacity) {
        problems.push_back("task " + std::to_string(t.id) + ": worst-case execution time " +
                           std::to_string(worst) + " s exceeds battery capacity " +
                           std::to_string(min_capacity) + " s");
      }
    }
  }
  return problems;
}

ProblemInstance ProblemInstance::create(TrajectoryMap map, std::vector<Task> tasks,
                                        std::vector<Uav> uavs,
                                        std::vector<RechargeStation> stations) {
  auto problems = check(map, tasks, uavs, stations);
  if (!problems.empty()) {
    std::ostringstream os;
    os << "invalid instance:";
    for (const auto& p : problems) os << "\n  - " << p;
    throw InstanceError(os.str());
  }
  ProblemInstance inst;
  std::vector<TaskId> ids;
  std::vector<PrecedenceEdge> edges;
  for (auto& t : tasks) {
    std::sort(t.predecessors.begin(), t.predecessors.end());
    t.predecessors.erase(std::unique(t.predecessors.begin(), t.predecessors.end()),
                         t.predecessors.end());
    ids.push_back(t.id);
    for (TaskId p : t.predecessors) edges.push_back({p, t.id});
  }
  inst.graph_ = PrecedenceGraph(ids, std::move(edges));
  for (std::size_t i = 0; i < tasks.size(); ++i) inst.task_index_.emplace(tasks[i].id, i);
  inst.station_by_pos_.assign(map.size(), std::nullopt);
  for (std::size_t s = 0; s < stations.size(); ++s) inst.station_by_pos_[stations[s].pos] = s;
  inst.map_ = std::move(map);
  inst.tasks_ = std::move(tasks);
  inst.uavs_ = std::move(uavs);
  inst.stations_ = std::move(stations);
  return inst;
}

std::optional<std::size_t> ProblemInstance::find_task(TaskId id) const {
  auto it = task_index_.find(id);
  if (it == task_index_.end()) return std::nullopt;
  return it->second;
}

const Task& ProblemInstance::task(TaskId id) const {
  auto idx = find_task(id);
  if (!idx) throw InstanceError("unknown task id " + std::to_string(id));
  return tasks_[*idx];
}

std::optional<std::size_t> ProblemInstance::station_at(PositionIndex pos) const {
  return pos < station_by_pos_.size() ? station_by_pos_[pos] : std::nullopt;
}

std::vector<TaskId> ProblemInstance::task_ids() const {
  std::vector<TaskId> ids;
  ids.reserve(tasks_.size());
  for (const auto& t : tasks_) ids.push_back(t.id);
  return ids;
}

}  // namespace uavsched
