#pragma once

// Problem domain: positions, flight-time map, tasks, UAVs, recharge stations.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uavsched/precedence.hpp"

namespace uavsched {

using Seconds = std::int64_t;
using PositionIndex = std::size_t;

inline constexpr Seconds kDefaultBatteryCapacity = 1200;
inline constexpr Seconds kDefaultRechargeDuration = 2700;

// Malformed or inconsistent problem data.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PositionKind { kWork, kRecharge };

struct Position {
  std::string id;
  PositionKind kind = PositionKind::kWork;

  friend bool operator==(const Position&, const Position&) = default;
};

// High-level map: a complete graph of positions with symmetric integer
// flight times. The constructor rejects anything that is not a square,
// symmetric, zero-diagonal matrix with positive off-diagonal entries.
class TrajectoryMap {
 public:
  TrajectoryMap() = default;
  TrajectoryMap(std::vector<Position> positions,
                std::vector<std::vector<Seconds>> flight_time);

  std::size_t size() const { return positions_.size(); }
  std::span<const Position> positions() const { return positions_; }
  const Position& position(PositionIndex p) const { return positions_.at(p); }

  std::optional<PositionIndex> find(std::string_view id) const;
  // Throws InstanceError naming the id when it is not on the map.
  PositionIndex index_of(std::string_view id) const;

  Seconds flight_time(PositionIndex from, PositionIndex to) const {
    return flight_[from * positions_.size() + to];
  }
  Seconds flight_time(std::string_view from, std::string_view to) const {
    return flight_time(index_of(from), index_of(to));
  }

  std::vector<std::vector<Seconds>> matrix() const;

 private:
  std::vector<Position> positions_;
  std::vector<Seconds> flight_;  // row-major
  std::unordered_map<std::string, PositionIndex> index_;
};

enum class TaskType { kSingleInspection, kCompoundInspection, kMaterialHandling };

std::string_view to_string(TaskType type);
std::optional<TaskType> parse_task_type(std::string_view name);

// Type for task data that does not carry one: distinct endpoints are
// material handling, otherwise the single-inspection band (<= 80 s) decides.
TaskType infer_task_type(PositionIndex start, PositionIndex end, std::int64_t proc_time);

struct Task {
  TaskId id = 0;
  TaskType type = TaskType::kSingleInspection;
  PositionIndex start = 0;
  PositionIndex end = 0;
  Seconds proc_time = 0;
  std::vector<TaskId> predecessors;
};

struct RechargeStation {
  PositionIndex pos = 0;
  int slots = 1;
};

struct Uav {
  std::string id;
  PositionIndex initial_pos = 0;
  Seconds battery_capacity = kDefaultBatteryCapacity;
  Seconds recharge_duration = kDefaultRechargeDuration;
};

struct StationDistance {
  std::size_t station = 0;
  Seconds flight = 0;
};

// Station closest to `pos` by flight time; ties go to the lower station index.
// Throws InstanceError when `stations` is empty.
StationDistance nearest_recharge_station(const TrajectoryMap& map,
                                         std::span<const RechargeStation> stations,
                                         PositionIndex pos);

// prep_time + proc_time + flight from the task's end to its nearest station.
// This is what gets compared against the battery left before committing a task.
Seconds task_upper_bound_time(Seconds prep_time, const Task& task,
                              const TrajectoryMap& map,
                              std::span<const RechargeStation> stations);

// Worst-case single-engagement airborne time for a task: the longest
// preparation flight from any position, processing, then the flight to the
// nearest station. Every task must fit in one battery charge by this measure.
Seconds worst_case_execution_time(const Task& task, const TrajectoryMap& map,
                                  std::span<const RechargeStation> stations);

// Immutable, cross-checked problem instance. Safe to share read-only between
// threads.
class ProblemInstance {
 public:
  ProblemInstance() = default;

  // Validates every cross-reference, the precedence DAG and the per-task
  // battery bound; throws InstanceError listing every problem found.
  static ProblemInstance create(TrajectoryMap map, std::vector<Task> tasks,
                                std::vector<Uav> uavs,
                                std::vector<RechargeStation> stations);

  // Same checks as create(), returned as messages instead of thrown.
  static std::vector<std::string> check(const TrajectoryMap& map,
                                        std::span<const Task> tasks,
                                        std::span<const Uav> uavs,
                                        std::span<const RechargeStation> stations);

  const TrajectoryMap& map() const { return map_; }
  std::span<const Task> tasks() const { return tasks_; }
  std::span<const Uav> uavs() const { return uavs_; }
  std::span<const RechargeStation> stations() const { return stations_; }
  const PrecedenceGraph& graph() const { return graph_; }

  std::size_t task_count() const { return tasks_.size(); }
  std::optional<std::size_t> find_task(TaskId id) const;
  const Task& task(TaskId id) const;
  std::optional<std::size_t> station_at(PositionIndex pos) const;
  std::vector<TaskId> task_ids() const;

 private:
  TrajectoryMap map_;
  std::vector<Task> tasks_;
  std::vector<Uav> uavs_;
  std::vector<RechargeStation> stations_;
  PrecedenceGraph graph_;
  std::unordered_map<TaskId, std::size_t> task_index_;
  std::vector<std::optional<std::size_t>> station_by_pos_;
};

}  // namespace uavsched
