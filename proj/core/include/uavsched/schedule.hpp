#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavsched/model.hpp"

namespace uavsched {

enum class ActionKind { kFlight, kTaskExec, kHover, kWaitOnGround, kRecharge };

std::string_view to_string(ActionKind kind);
std::optional<ActionKind> parse_action_kind(std::string_view name);

// Flights, task executions and hovers drain the battery; the rest do not.
constexpr bool is_airborne(ActionKind kind) {
  return kind == ActionKind::kFlight || kind == ActionKind::kTaskExec ||
         kind == ActionKind::kHover;
}

// One interval on a UAV timeline. Stationary actions have from == to.
struct Action {
  ActionKind kind = ActionKind::kFlight;
  Seconds start = 0;
  Seconds end = 0;
  PositionIndex from = 0;
  PositionIndex to = 0;
  std::optional<TaskId> task;
  std::optional<std::size_t> station;

  Seconds duration() const { return end - start; }
  friend bool operator==(const Action&, const Action&) = default;
};

// Per-UAV timelines, indexed like ProblemInstance::uavs().
struct Schedule {
  std::vector<std::vector<Action>> timelines;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Latest action end over all UAVs; 0 for an empty schedule.
Seconds makespan(const Schedule& schedule);

struct TaskPlacement {
  TaskId task = 0;
  std::size_t uav = 0;
  Seconds start = 0;
  Seconds end = 0;
};

// Every task_exec action, ordered by start time then task id.
std::vector<TaskPlacement> task_placements(const Schedule& schedule);

enum class ViolationKind {
  kMalformedAction,
  kTimelineGap,
  kSpatialContinuity,
  kFlightDuration,
  kTaskMismatch,
  kMissingTask,
  kDuplicateTask,
  kPrecedence,
  kPositionExclusivity,
  kBattery,
  kRechargeDuration,
  kBayCapacity,
  kGroundWaitOffStation,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::kMalformedAction;
  std::string detail;
  std::optional<std::size_t> uav;
  std::optional<TaskId> task;
  std::optional<PositionIndex> position;
  Seconds time = 0;
};

// Checks the timeline, spatial, duration, completeness, precedence,
// position-exclusivity, battery and bay-capacity invariants. Returns an empty
// list for a feasible schedule.
std::vector<Violation> validate_schedule(const Schedule& schedule,
                                         const ProblemInstance& instance);

}  // namespace uavsched
