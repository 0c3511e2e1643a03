#include "uavsched/eat_scheduler.hpp"

#include <algorithm>
#include <string>

namespace uavsched {

SchedulerState SchedulerState::initial(const ProblemInstance& instance) {
  SchedulerState s;
  s.occupancy = PositionOccupancy(instance.map().size());
  for (const auto& u : instance.uavs()) s.uavs.push_back({u.initial_pos, 0, 0});
  for (const auto& st : instance.stations()) {
    s.slots.emplace_back(static_cast<std::size_t>(std::max(st.slots, 1)), Seconds{0});
  }
  return s;
}

Seconds task_available_time(const Task& task, const PositionOccupancy& occupancy,
                            const std::unordered_map<TaskId, Seconds>& completed_end) {
  Seconds pos_at = std::max(occupancy.release_of(task.start), occupancy.release_of(task.end));
  Seconds pred_at = 0;
  for (TaskId p : task.predecessors) {
    auto it = completed_end.find(p);
    if (it == completed_end.end()) {
      throw SequencingError("task " + std::to_string(task.id) +
                            " is sequenced before its predecessor " + std::to_string(p));
    }
    pred_at = std::max(pred_at, it->second);
  }
  return std::max(pos_at, pred_at);
}

std::vector<RechargeChoice> recharge_options(const UavState& state, const Uav& uav,
                                             const Task& task, Seconds task_at,
                                             const ProblemInstance& instance,
                                             const StationSlots& slots) {
  const auto& map = instance.map();
  const auto stations = instance.stations();
  std::vector<RechargeChoice> out;
  for (std::size_t s = 0; s < stations.size(); ++s) {
    Seconds to_station = map.flight_time(state.pos, stations[s].pos);
    if (state.battery_used + to_station > uav.battery_capacity) continue;
    RechargeChoice c;
    c.station = s;
    c.charge_tstp = state.ready + to_station;
    Seconds slot_release = *std::min_element(slots[s].begin(), slots[s].end());
    c.recharge_start = std::max(c.charge_tstp, slot_release);
    c.recharge_end = c.recharge_start + uav.recharge_duration;
    c.prepared_tstp =
        std::max(c.recharge_end + map.flight_time(stations[s].pos, task.start), task_at);
    out.push_back(c);
  }
  return out;
}

RechargeChoice select_recharge_station(const UavState& state, const Uav& uav, const Task& task,
                                       Seconds task_at, const ProblemInstance& instance,
                                       const StationSlots& slots) {
  auto options = recharge_options(state, uav, task, task_at, instance, slots);
  if (options.empty()) {
    throw std::logic_error("UAV '" + uav.id + "' cannot reach any recharge station");
  }
  return *std::min_element(options.begin(), options.end(), [](const auto& a, const auto& b) {
    return a.prepared_tstp < b.prepared_tstp;
  });
}

UavCandidate uav_candidate(std::size_t uav_index, const UavState& state, const Task& task,
                           Seconds task_at, const ProblemInstance& instance,
                           const StationSlots& slots) {
  const auto& map = instance.map();
  const Uav& uav = instance.uavs()[uav_index];
  UavCandidate c;
  c.uav = uav_index;
  c.flight_to_start = map.flight_time(state.pos, task.start);
  c.task_prep_tstp = std::max(state.ready + c.flight_to_start, task_at);
  // Slack before the task is spent on the ground when the UAV sits at a
  // station, otherwise hovering at the destination.
  const bool grounded = instance.station_at(state.pos).has_value();
  c.task_prep_time = grounded ? c.flight_to_start : c.task_prep_tstp - state.ready;
  c.battery_demand =
      state.battery_used + task_upper_bound_time(c.task_prep_time, task, map, instance.stations());
  c.needs_recharge = c.battery_demand > uav.battery_capacity;
  if (c.needs_recharge) {
    c.recharge = select_recharge_station(state, uav, task, task_at, instance, slots);
    c.start_tstp = c.recharge->prepared_tstp;
  } else {
    c.start_tstp = c.task_prep_tstp;
  }
  c.end_tstp = c.start_tstp + task.proc_time;
  return c;
}

const UavCandidate& pick_earliest_uav(std::span<const UavCandidate> candidates) {
  if (candidates.empty()) throw std::invalid_argument("no UAV candidates");
  return *std::min_element(candidates.begin(), candidates.end(),
                           [](const auto& a, const auto& b) { return a.start_tstp < b.start_tstp; });
}

void put_task_into_schedule(Schedule& schedule, const UavCandidate& candidate, const Task& task,
                            SchedulerState& state, const ProblemInstance& instance) {
  const auto& map = instance.map();
  if (schedule.timelines.size() < instance.uavs().size()) {
    schedule.timelines.resize(instance.uavs().size());
  }
  auto& lane = schedule.timelines[candidate.uav];
  UavState& uav = state.uavs[candidate.uav];
  const Seconds start = candidate.start_tstp;

  auto push = [&](ActionKind kind, Seconds from_t, Seconds to_t, PositionIndex from,
                  PositionIndex to, std::optional<std::size_t> station = std::nullopt) {
    if (to_t < from_t) {
      throw std::logic_error("negative " + std::string(to_string(kind)) + " while placing task " +
                             std::to_string(task.id));
    }
    if (to_t == from_t && kind != ActionKind::kTaskExec) return;
    Action a{kind, from_t, to_t, from, to, std::nullopt, station};
    if (kind == ActionKind::kTaskExec) a.task = task.id;
    lane.push_back(a);
  };

  if (candidate.recharge) {
    const RechargeChoice& r = *candidate.recharge;
    const PositionIndex spos = instance.stations()[r.station].pos;
    const Seconds to_task = map.flight_time(spos, task.start);
    const Seconds depart = start - to_task;
    push(ActionKind::kFlight, uav.ready, r.charge_tstp, uav.pos, spos);
    push(ActionKind::kWaitOnGround, r.charge_tstp, r.recharge_start, spos, spos, r.station);
    push(ActionKind::kRecharge, r.recharge_start, r.recharge_end, spos, spos, r.station);
    push(ActionKind::kWaitOnGround, r.recharge_end, depart, spos, spos, r.station);
    push(ActionKind::kFlight, depart, start, spos, task.start);

    auto& bays = state.slots[r.station];
    auto slot = std::min_element(bays.begin(), bays.end());
    if (*slot > r.recharge_start) throw std::logic_error("recharge slot still occupied");
    *slot = depart;  // held until the UAV leaves the station
    uav.battery_used = to_task + task.proc_time;
  } else if (instance.station_at(uav.pos)) {
    const Seconds depart = start - candidate.flight_to_start;
    const auto station = instance.station_at(uav.pos);
    push(ActionKind::kWaitOnGround, uav.ready, depart, uav.pos, uav.pos, station);
    push(ActionKind::kFlight, depart, start, uav.pos, task.start);
    uav.battery_used += candidate.flight_to_start + task.proc_time;
  } else {
    const Seconds arrive = uav.ready + candidate.flight_to_start;
    push(ActionKind::kFlight, uav.ready, arrive, uav.pos, task.start);
    push(ActionKind::kHover, arrive, start, task.start, task.start);
    uav.battery_used += (start - uav.ready) + task.proc_time;
  }
  push(ActionKind::kTaskExec, start, candidate.end_tstp, task.start, task.end);

  uav.pos = task.end;
  uav.ready = candidate.end_tstp;
  state.occupancy.release[task.start] = candidate.end_tstp;
  state.occupancy.release[task.end] = candidate.end_tstp;
  state.task_end[task.id] = candidate.end_tstp;
}

EatScheduler::EatScheduler(const ProblemInstance& instance)
    : instance_(&instance), state_(SchedulerState::initial(instance)) {
  schedule_.timelines.resize(instance.uavs().size());
}

StepRecord EatScheduler::place(TaskId task_id) {
  auto idx = instance_->find_task(task_id);
  if (!idx) throw SequencingError("unknown task " + std::to_string(task_id) + " in sequence");
  if (state_.task_end.contains(task_id)) {
    throw SequencingError("task " + std::to_string(task_id) + " appears twice in sequence");
  }
  const Task& task = instance_->tasks()[*idx];
  StepRecord rec;
  rec.task = task_id;
  rec.task_available = task_available_time(task, state_.occupancy, state_.task_end);
  for (std::size_t u = 0; u < state_.uavs.size(); ++u) {
    rec.candidates.push_back(
        uav_candidate(u, state_.uavs[u], task, rec.task_available, *instance_, state_.slots));
  }
  const UavCandidate& best = pick_earliest_uav(rec.candidates);
  rec.chosen = best.uav;
  put_task_into_schedule(schedule_, best, task, state_, *instance_);
  return rec;
}

Schedule build_schedule(std::span<const TaskId> sequence, const ProblemInstance& instance) {
  if (sequence.size() != instance.task_count()) {
    throw SequencingError("sequence has " + std::to_string(sequence.size()) + " tasks, instance has " +
                          std::to_string(instance.task_count()));
  }
  EatScheduler scheduler(instance);
  for (TaskId t : sequence) scheduler.place(t);
  return std::move(scheduler).release();
}

}  // namespace uavsched
