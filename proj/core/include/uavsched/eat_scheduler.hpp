#pragma once

// Earliest Available Time schedule construction: each task of a
// precedence-feasible sequence goes to the UAV able to start it soonest,
// with recharge, hover and wait-on-ground actions inserted as needed.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "uavsched/model.hpp"
#include "uavsched/schedule.hpp"

namespace uavsched {

// A sequence places a task before one of its predecessors, repeats a task, or
// names an unknown task.
class SequencingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Latest release timestamp per position (0 until first used).
struct PositionOccupancy {
  std::vector<Seconds> release;

  explicit PositionOccupancy(std::size_t positions = 0) : release(positions, 0) {}
  Seconds release_of(PositionIndex p) const { return release.at(p); }
};

struct UavState {
  PositionIndex pos = 0;
  Seconds ready = 0;
  Seconds battery_used = 0;  // airborne seconds since the last full charge
};

// Per station, one release timestamp per slot.
using StationSlots = std::vector<std::vector<Seconds>>;

struct RechargeChoice {
  std::size_t station = 0;
  Seconds charge_tstp = 0;     // arrival at the station
  Seconds recharge_start = 0;  // after any wait for a free slot
  Seconds recharge_end = 0;
  Seconds prepared_tstp = 0;   // earliest task start after recharging
};

struct UavCandidate {
  std::size_t uav = 0;
  Seconds flight_to_start = 0;
  Seconds task_prep_time = 0;  // airborne time from ready to task start
  Seconds task_prep_tstp = 0;  // max(ready + flight, task availability)
  Seconds battery_demand = 0;  // battery_used + prep + proc + flight to nearest station
  bool needs_recharge = false;
  std::optional<RechargeChoice> recharge;
  Seconds start_tstp = 0;
  Seconds end_tstp = 0;
};

// Pass-local mutable state of one schedule construction.
struct SchedulerState {
  std::vector<UavState> uavs;
  PositionOccupancy occupancy;
  StationSlots slots;
  std::unordered_map<TaskId, Seconds> task_end;

  static SchedulerState initial(const ProblemInstance& instance);
};

// max(release(start), release(end), end of every predecessor).
// Throws SequencingError if a predecessor has not been scheduled yet.
Seconds task_available_time(const Task& task, const PositionOccupancy& occupancy,
                            const std::unordered_map<TaskId, Seconds>& completed_end);

// Recharge options at every station reachable on the UAV's remaining battery,
// in station order.
std::vector<RechargeChoice> recharge_options(const UavState& state, const Uav& uav,
                                             const Task& task, Seconds task_at,
                                             const ProblemInstance& instance,
                                             const StationSlots& slots);

// Option with the earliest prepared timestamp; ties go to the lower station
// index. Throws std::logic_error when no station is reachable.
RechargeChoice select_recharge_station(const UavState& state, const Uav& uav, const Task& task,
                                       Seconds task_at, const ProblemInstance& instance,
                                       const StationSlots& slots);

UavCandidate uav_candidate(std::size_t uav_index, const UavState& state, const Task& task,
                           Seconds task_at, const ProblemInstance& instance,
                           const StationSlots& slots);

// Earliest start; ties go to the candidate listed first (fleet order).
const UavCandidate& pick_earliest_uav(std::span<const UavCandidate> candidates);

// Appends the chosen engagement to the UAV's timeline and updates the state:
// optional recharge leg, flight, hover or wait-on-ground, then the task.
void put_task_into_schedule(Schedule& schedule, const UavCandidate& candidate, const Task& task,
                            SchedulerState& state, const ProblemInstance& instance);

// What happened when one task was placed; used for tracing and tests.
struct StepRecord {
  TaskId task = 0;
  Seconds task_available = 0;
  std::vector<UavCandidate> candidates;
  std::size_t chosen = 0;  // index into candidates (== UAV index)
};

// Incremental construction over a growing prefix of a sequence.
class EatScheduler {
 public:
  explicit EatScheduler(const ProblemInstance& instance);

  StepRecord place(TaskId task);

  const Schedule& schedule() const { return schedule_; }
  const SchedulerState& state() const { return state_; }
  Schedule release() && { return std::move(schedule_); }

 private:
  const ProblemInstance* instance_;
  SchedulerState state_;
  Schedule schedule_;
};

// Builds the schedule for a full, precedence-feasible permutation of the
// instance's tasks. Throws SequencingError naming the offending pair
// otherwise.
Schedule build_schedule(std::span<const TaskId> sequence, const ProblemInstance& instance);

}  // namespace uavsched
