#include "uavsched/schedule.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace uavsched {

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::kFlight: return "flight";
    case ActionKind::kTaskExec: return "task_exec";
    case ActionKind::kHover: return "hover";
    case ActionKind::kWaitOnGround: return "wait_on_ground";
    case ActionKind::kRecharge: return "recharge";
  }
  return "unknown";
}

std::optional<ActionKind> parse_action_kind(std::string_view name) {
  for (ActionKind k : {ActionKind::kFlight, ActionKind::kTaskExec, ActionKind::kHover,
                       ActionKind::kWaitOnGround, ActionKind::kRecharge}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kMalformedAction: return "malformed_action";
    case ViolationKind::kTimelineGap: return "timeline_gap";
    case ViolationKind::kSpatialContinuity: return "spatial_continuity";
    case ViolationKind::kFlightDuration: return "flight_duration";
    case ViolationKind::kTaskMismatch: return "task_mismatch";
    case ViolationKind::kMissingTask: return "missing_task";
    case ViolationKind::kDuplicateTask: return "duplicate_task";
    case ViolationKind::kPrecedence: return "precedence";
    case ViolationKind::kPositionExclusivity: return "position_exclusivity";
    case ViolationKind::kBattery: return "battery";
    case ViolationKind::kRechargeDuration: return "recharge_duration";
    case ViolationKind::kBayCapacity: return "bay_capacity";
    case ViolationKind::kGroundWaitOffStation: return "ground_wait_off_station";
  }
  return "unknown";
}

Seconds makespan(const Schedule& schedule) {
  Seconds end = 0;
  for (const auto& lane : schedule.timelines) {
    for (const auto& a : lane) end = std::max(end, a.end);
  }
  return end;
}

std::vector<TaskPlacement> task_placements(const Schedule& schedule) {
  std::vector<TaskPlacement> out;
  for (std::size_t u = 0; u < schedule.timelines.size(); ++u) {
    for (const auto& a : schedule.timelines[u]) {
      if (a.kind == ActionKind::kTaskExec && a.task) out.push_back({*a.task, u, a.start, a.end});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.start != b.start ? a.start < b.start : a.task < b.task;
  });
  return out;
}

namespace {

class Checker {
 public:
  Checker(const Schedule& s, const ProblemInstance& inst) : schedule_(s), inst_(inst) {}

  std::vector<Violation> run() {
    const auto& map = inst_.map();
    if (schedule_.timelines.size() > inst_.uavs().size()) {
      add(ViolationKind::kMalformedAction, "schedule has more timelines than the fleet has UAVs");
    }
    const std::size_t lanes = std::min(schedule_.timelines.size(), inst_.uavs().size());
    for (std::size_t u = 0; u < lanes; ++u) check_lane(u);
    if (!well_formed_) return std::move(out_);

    check_completeness();
    check_precedence();
    check_exclusivity(map);
    check_bays();
    return std::move(out_);
  }

 private:
  void add(ViolationKind kind, std::string detail, std::optional<std::size_t> uav = {},
           std::optional<TaskId> task = {}, std::optional<PositionIndex> pos = {},
           Seconds time = 0) {
    out_.push_back({kind, std::move(detail), uav, task, pos, time});
  }

  std::string lane_name(std::size_t u) const { return "UAV '" + inst_.uavs()[u].id + "'"; }

  void check_lane(std::size_t u) {
    const auto& lane = schedule_.timelines[u];
    const auto& uav = inst_.uavs()[u];
    const auto& map = inst_.map();
    PositionIndex where = uav.initial_pos;
    Seconds airborne = 0;
    bool battery_reported = false;

    for (std::size_t i = 0; i < lane.size(); ++i) {
      const Action& a = lane[i];
      if (a.from >= map.size() || a.to >= map.size() || a.end < a.start || a.start < 0) {
        add(ViolationKind::kMalformedAction,
            lane_name(u) + " action " + std::to_string(i) + " has bad bounds or positions", u, a.task,
            {}, a.start);
        well_formed_ = false;
        return;
      }
      if (i > 0 && a.start != lane[i - 1].end) {
        add(ViolationKind::kTimelineGap,
            lane_name(u) + (a.start > lane[i - 1].end ? " is idle" : " overlaps") + " between " +
                std::to_string(lane[i - 1].end) + " and " + std::to_string(a.start),
            u, a.task, a.from, a.start);
      }
      if (a.from != where) {
        add(ViolationKind::kSpatialContinuity,
            lane_name(u) + " starts " + std::string(to_string(a.kind)) + " at '" +
                map.position(a.from).id + "' but is at '" + map.position(where).id + "'",
            u, a.task, a.from, a.start);
      }
      where = a.to;

      switch (a.kind) {
        case ActionKind::kFlight:
          if (a.duration() != map.flight_time(a.from, a.to) || a.from == a.to) {
            add(ViolationKind::kFlightDuration,
                lane_name(u) + " flight " + map.position(a.from).id + "->" + map.position(a.to).id +
                    " lasts " + std::to_string(a.duration()) + " s, map says " +
                    std::to_string(map.flight_time(a.from, a.to)),
                u, {}, a.from, a.start);
          }
          break;
        case ActionKind::kTaskExec: {
          auto idx = a.task ? inst_.find_task(*a.task) : std::nullopt;
          if (!idx) {
            add(ViolationKind::kTaskMismatch, lane_name(u) + " executes an unknown task", u, a.task,
                a.from, a.start);
            well_formed_ = false;
            break;
          }
          const Task& t = inst_.tasks()[*idx];
          if (a.from != t.start || a.to != t.end || a.duration() != t.proc_time) {
            add(ViolationKind::kTaskMismatch,
                lane_name(u) + " runs task " + std::to_string(t.id) +
                    " with wrong positions or duration",
                u, t.id, a.from, a.start);
          }
          execs_.push_back({t.id, u, a.start, a.end});
          break;
        }
        case ActionKind::kHover:
          if (a.from != a.to) {
            add(ViolationKind::kSpatialContinuity, lane_name(u) + " hover moves position", u, {},
                a.from, a.start);
          }
          break;
        case ActionKind::kWaitOnGround:
          if (a.from != a.to || !inst_.station_at(a.from)) {
            add(ViolationKind::kGroundWaitOffStation,
                lane_name(u) + " waits on ground away from a recharge station", u, {}, a.from,
                a.start);
          }
          break;
        case ActionKind::kRecharge: {
          auto st = inst_.station_at(a.from);
          if (a.from != a.to || !st) {
            add(ViolationKind::kGroundWaitOffStation,
                lane_name(u) + " recharges away from a recharge station", u, {}, a.from, a.start);
          } else {
            recharges_[*st].push_back({a.start, a.end});
          }
          if (a.duration() != uav.recharge_duration) {
            add(ViolationKind::kRechargeDuration,
                lane_name(u) + " recharge lasts " + std::to_string(a.duration()) + " s, expected " +
                    std::to_string(uav.recharge_duration),
                u, {}, a.from, a.start);
          }
          break;
        }
      }

      if (a.kind == ActionKind::kRecharge) {
        airborne = 0;
        battery_reported = false;
      } else if (is_airborne(a.kind)) {
        airborne += a.duration();
        if (airborne > uav.battery_capacity && !battery_reported) {
          add(ViolationKind::kBattery,
              lane_name(u) + " airborne for more than " + std::to_string(uav.battery_capacity) +
                  " s without recharging (reached " + std::to_string(airborne) + " s)",
              u, a.task, a.to, a.end);
          battery_reported = true;
        }
      }
    }
  }

  void check_completeness() {
    std::unordered_map<TaskId, int> seen;
    for (const auto& e : execs_) ++seen[e.task];
    for (const auto& t : inst_.tasks()) {
      auto it = seen.find(t.id);
      if (it == seen.end()) {
        add(ViolationKind::kMissingTask, "task " + std::to_string(t.id) + " is never executed", {},
            t.id);
      } else if (it->second > 1) {
        add(ViolationKind::kDuplicateTask,
            "task " + std::to_string(t.id) + " is executed " + std::to_string(it->second) + " times",
            {}, t.id);
      }
    }
  }

  void check_precedence() {
    std::unordered_map<TaskId, const TaskPlacement*> by_id;
    for (const auto& e : execs_) by_id.emplace(e.task, &e);
    for (const auto& e : execs_) {
      for (TaskId p : inst_.task(e.task).predecessors) {
        auto it = by_id.find(p);
        if (it == by_id.end()) continue;  // reported as missing
        if (e.start < it->second->end) {
          add(ViolationKind::kPrecedence,
              "task " + std::to_string(e.task) + " starts at " + std::to_string(e.start) +
                  " before predecessor " + std::to_string(p) + " ends at " +
                  std::to_string(it->second->end),
              e.uav, e.task, {}, e.start);
        }
      }
    }
  }

  void check_exclusivity(const TrajectoryMap& map) {
    // One entry per (position, execution); a task touching one position twice
    // (inspection) is listed once.
    std::map<PositionIndex, std::vector<const TaskPlacement*>> at;
    for (const auto& e : execs_) {
      const Task& t = inst_.task(e.task);
      at[t.start].push_back(&e);
      if (t.end != t.start) at[t.end].push_back(&e);
    }
    std::vector<std::pair<TaskId, TaskId>> reported;
    for (auto& [pos, list] : at) {
      std::sort(list.begin(), list.end(),
                [](const auto* a, const auto* b) { return a->start < b->start; });
      for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size() && list[j]->start < list[i]->end; ++j) {
          if (list[j]->start >= list[i]->end || list[i]->start == list[i]->end ||
              list[j]->start == list[j]->end) {
            continue;
          }
          std::pair<TaskId, TaskId> key{std::min(list[i]->task, list[j]->task),
                                        std::max(list[i]->task, list[j]->task)};
          if (std::find(reported.begin(), reported.end(), key) != reported.end()) continue;
          reported.push_back(key);
          add(ViolationKind::kPositionExclusivity,
              "tasks " + std::to_string(list[i]->task) + " and " + std::to_string(list[j]->task) +
                  " both occupy '" + map.position(pos).id + "' at " +
                  std::to_string(list[j]->start),
              list[j]->uav, list[j]->task, pos, list[j]->start);
        }
      }
    }
  }

  void check_bays() {
    for (auto& [station, intervals] : recharges_) {
      const int slots = inst_.stations()[station].slots;
      // Sweep: ends sort before starts at the same timestamp.
      std::vector<std::pair<Seconds, int>> events;
      for (auto [s, e] : intervals) {
        events.emplace_back(s, +1);
        events.emplace_back(e, -1);
      }
      std::sort(events.begin(), events.end());
      int active = 0;
      for (auto [t, delta] : events) {
        active += delta;
        if (active > slots) {
          PositionIndex pos = inst_.stations()[station].pos;
          add(ViolationKind::kBayCapacity,
              std::to_string(active) + " UAVs recharge at '" + inst_.map().position(pos).id +
                  "' at " + std::to_string(t) + " but it has " + std::to_string(slots) + " slot(s)",
              {}, {}, pos, t);
          break;
        }
      }
    }
  }

  const Schedule& schedule_;
  const ProblemInstance& inst_;
  std::vector<Violation> out_;
  std::vector<TaskPlacement> execs_;
  std::map<std::size_t, std::vector<std::pair<Seconds, Seconds>>> recharges_;
  bool well_formed_ = true;
};

}  // namespace

std::vector<Violation> validate_schedule(const Schedule& schedule, const ProblemInstance& instance) {
  return Checker(schedule, instance).run();
}

}  // namespace uavsched
