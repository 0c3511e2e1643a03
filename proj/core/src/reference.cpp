#include "uavsched/reference.hpp"

namespace uavsched::reference {

TrajectoryMap map() {
  std::vector<Position> positions{
      {"a", PositionKind::kWork},      {"b", PositionKind::kWork},
      {"c", PositionKind::kWork},      {"d", PositionKind::kWork},
      {"e", PositionKind::kWork},      {"f", PositionKind::kWork},
      {"R1", PositionKind::kRecharge}, {"R2", PositionKind::kRecharge},
  };
  std::vector<std::vector<Seconds>> ft{
      //  a    b    c    d    e    f   R1   R2
      {0, 108, 131, 222, 376, 353, 40, 160},     // a
      {108, 0, 120, 241, 347, 371, 60, 160},     // b
      {131, 120, 0, 127, 228, 254, 60, 60},      // c
      {222, 241, 127, 0, 116, 122, 160, 40},     // d
      {376, 347, 228, 116, 0, 123, 260, 60},     // e
      {353, 371, 254, 122, 123, 0, 260, 60},     // f
      {40, 60, 60, 160, 260, 260, 0, 120},       // R1
      {160, 160, 60, 40, 60, 60, 120, 0},        // R2
  };
  return TrajectoryMap(std::move(positions), std::move(ft));
}

std::vector<RechargeStation> stations(const TrajectoryMap& map) {
  return {{map.index_of("R1"), 1}, {map.index_of("R2"), 1}};
}

std::vector<Uav> fleet(const TrajectoryMap& map) {
  return {
      {"UAV1", map.index_of("R1"), kDefaultBatteryCapacity, kDefaultRechargeDuration},
      {"UAV2", map.index_of("R1"), kDefaultBatteryCapacity, kDefaultRechargeDuration},
      {"UAV3", map.index_of("R2"), kDefaultBatteryCapacity, kDefaultRechargeDuration},
  };
}

std::vector<Task> tasks(const TrajectoryMap& map) {
  struct Row {
    TaskId id;
    const char* start;
    const char* end;
    Seconds proc;
    std::vector<TaskId> preds;
  };
  const std::vector<Row> rows{
      {1, "e", "f", 243, {}},     {2, "c", "c", 245, {}},      {3, "d", "a", 719, {}},
      {4, "e", "b", 550, {1}},    {5, "c", "c", 235, {2}},     {6, "d", "d", 241, {2}},
      {7, "a", "e", 478, {4}},    {8, "b", "c", 304, {4, 5}},  {9, "e", "e", 395, {7}},
      {10, "c", "f", 344, {6, 8}}, {11, "f", "f", 270, {10}},  {12, "a", "d", 514, {3, 6}},
  };
  std::vector<Task> out;
  for (const auto& r : rows) {
    Task t;
    t.id = r.id;
    t.start = map.index_of(r.start);
    t.end = map.index_of(r.end);
    t.proc_time = r.proc;
    t.predecessors = r.preds;
    t.type = infer_task_type(t.start, t.end, r.proc);
    out.push_back(t);
  }
  return out;
}

ProblemInstance instance() {
  TrajectoryMap m = map();
  auto st = stations(m);
  auto uavs = fleet(m);
  auto ts = tasks(m);
  return ProblemInstance::create(std::move(m), std::move(ts), std::move(uavs), std::move(st));
}

}  // namespace uavsched::reference
