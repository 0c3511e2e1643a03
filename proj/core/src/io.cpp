#include "uavsched/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace uavsched {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, std::string_view where) {
  if (!obj.is_object()) throw ParseError(std::string(where) + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string(where) + ": missing '" + key + "'");
  return *it;
}

template <typename T>
T get_as(const json& value, std::string_view where) {
  try {
    return value.get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string(where) + ": " + e.what());
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    std::size_t pos = s.find(sep, begin);
    out.push_back(trim(s.substr(begin, pos == std::string_view::npos ? pos : pos - begin)));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, std::string_view where) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string(where) + ": '" + std::string(s) + "' is not an integer");
  }
  return value;
}

PositionIndex position_ref(const TrajectoryMap& map, const json& value, std::string_view where) {
  auto id = get_as<std::string>(value, where);
  auto idx = map.find(id);
  if (!idx) throw ParseError(std::string(where) + ": unknown position '" + id + "'");
  return *idx;
}

}  // namespace

ProblemInstance parse_instance_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }

  std::vector<Position> positions;
  const json& pos_list = field(doc, "positions", "instance");
  if (!pos_list.is_array()) throw ParseError("positions: expected an array");
  for (const auto& p : pos_list) {
    if (p.is_string()) {
      positions.push_back({p.get<std::string>(), PositionKind::kWork});
      continue;
    }
    Position pos;
    pos.id = get_as<std::string>(field(p, "id", "position"), "position id");
    std::string kind = p.contains("kind") ? get_as<std::string>(p["kind"], "position kind") : "work";
    if (kind == "work") {
      pos.kind = PositionKind::kWork;
    } else if (kind == "recharge") {
      pos.kind = PositionKind::kRecharge;
    } else {
      throw ParseError("position '" + pos.id + "': unknown kind '" + kind + "'");
    }
    positions.push_back(std::move(pos));
  }

  auto matrix = get_as<std::vector<std::vector<Seconds>>>(field(doc, "flight_time", "instance"),
                                                          "flight_time");
  TrajectoryMap map(std::move(positions), std::move(matrix));

  std::vector<RechargeStation> stations;
  for (const auto& s : field(doc, "stations", "instance")) {
    RechargeStation st;
    st.pos = position_ref(map, field(s, "pos", "station"), "station pos");
    if (s.contains("slots")) st.slots = get_as<int>(s["slots"], "station slots");
    stations.push_back(st);
  }

  std::vector<Task> tasks;
  for (const auto& t : field(doc, "tasks", "instance")) {
    Task task;
    task.id = get_as<TaskId>(field(t, "id", "task"), "task id");
    const std::string where = "task " + std::to_string(task.id);
    task.start = position_ref(map, field(t, "start", where), where + " start");
    task.end = position_ref(map, field(t, "end", where), where + " end");
    task.proc_time = get_as<Seconds>(field(t, "proc_time", where), where + " proc_time");
    if (t.contains("predecessors")) {
      task.predecessors = get_as<std::vector<TaskId>>(t["predecessors"], where + " predecessors");
    }
    if (t.contains("type")) {
      auto name = get_as<std::string>(t["type"], where + " type");
      auto type = parse_task_type(name);
      if (!type) throw ParseError(where + ": unknown type '" + name + "'");
      task.type = *type;
    } else {
      task.type = infer_task_type(task.start, task.end, task.proc_time);
    }
    tasks.push_back(std::move(task));
  }

  std::vector<Uav> uavs;
  for (const auto& u : field(doc, "uavs", "instance")) {
    Uav uav;
    uav.id = get_as<std::string>(field(u, "id", "uav"), "uav id");
    const std::string where = "uav '" + uav.id + "'";
    uav.initial_pos = position_ref(map, field(u, "initial_pos", where), where + " initial_pos");
    if (u.contains("battery_capacity")) {
      uav.battery_capacity = get_as<Seconds>(u["battery_capacity"], where + " battery_capacity");
    }
    if (u.contains("recharge_duration")) {
      uav.recharge_duration = get_as<Seconds>(u["recharge_duration"], where + " recharge_duration");
    }
    uavs.push_back(std::move(uav));
  }

  return ProblemInstance::create(std::move(map), std::move(tasks), std::move(uavs),
                                 std::move(stations));
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  return parse_instance_json(read_text_file(path));
}

std::string instance_to_json(const ProblemInstance& instance) {
  using ordered = nlohmann::ordered_json;
  const auto& map = instance.map();
  auto id = [&](PositionIndex p) { return map.position(p).id; };
  std::vector<std::pair<std::string, std::vector<ordered>>> sections;

  auto& positions = sections.emplace_back("positions", std::vector<ordered>{}).second;
  for (const auto& p : map.positions()) {
    positions.push_back({{"id", p.id}, {"kind", p.kind == PositionKind::kWork ? "work" : "recharge"}});
  }
  auto& matrix = sections.emplace_back("flight_time", std::vector<ordered>{}).second;
  for (const auto& row : map.matrix()) matrix.push_back(row);
  auto& stations = sections.emplace_back("stations", std::vector<ordered>{}).second;
  for (const auto& s : instance.stations()) stations.push_back({{"pos", id(s.pos)}, {"slots", s.slots}});
  auto& tasks = sections.emplace_back("tasks", std::vector<ordered>{}).second;
  for (const auto& t : instance.tasks()) {
    tasks.push_back({{"id", t.id},
                     {"type", std::string(to_string(t.type))},
                     {"start", id(t.start)},
                     {"end", id(t.end)},
                     {"proc_time", t.proc_time},
                     {"predecessors", t.predecessors}});
  }
  auto& uavs = sections.emplace_back("uavs", std::vector<ordered>{}).second;
  for (const auto& u : instance.uavs()) {
    uavs.push_back({{"id", u.id},
                    {"initial_pos", id(u.initial_pos)},
                    {"battery_capacity", u.battery_capacity},
                    {"recharge_duration", u.recharge_duration}});
  }

  // One array element per line keeps the files diffable.
  std::string out = "{\n";
  for (std::size_t k = 0; k < sections.size(); ++k) {
    const auto& [key, items] = sections[k];
    out += "  \"" + key + "\": [";
    for (std::size_t i = 0; i < items.size(); ++i) {
      out += (i == 0 ? "\n    " : ",\n    ") + items[i].dump();
    }
    out += items.empty() ? "]" : "\n  ]";
    out += k + 1 < sections.size() ? ",\n" : "\n";
  }
  out += "}\n";
  return out;
}

std::vector<Task> parse_task_csv(std::string_view text, const TrajectoryMap& map) {
  auto lines = lines_of(text);
  if (lines.empty()) throw ParseError("task CSV: empty input");
  const std::vector<std::string_view> expected{"TaskID", "Start", "End", "ProcTime", "Precedence"};
  if (split(lines[0], ',') != expected) {
    throw ParseError("task CSV: header must be TaskID,Start,End,ProcTime,Precedence");
  }
  std::vector<Task> tasks;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "task CSV line " + std::to_string(i + 1);
    auto cols = split(lines[i], ',');
    if (cols.size() != 5) throw ParseError(where + ": expected 5 columns");
    Task t;
    t.id = parse_number<TaskId>(cols[0], where);
    auto start = map.find(cols[1]);
    auto end = map.find(cols[2]);
    if (!start || !end) throw ParseError(where + ": unknown position");
    t.start = *start;
    t.end = *end;
    t.proc_time = parse_number<Seconds>(cols[3], where);
    if (cols[4] != "-" && !cols[4].empty()) {
      for (auto p : split(cols[4], ';')) t.predecessors.push_back(parse_number<TaskId>(p, where));
    }
    t.type = infer_task_type(t.start, t.end, t.proc_time);
    tasks.push_back(std::move(t));
  }
  return tasks;
}

std::string schedule_to_csv(const Schedule& schedule, const ProblemInstance& instance) {
  const auto& map = instance.map();
  std::ostringstream os;
  os << "uav,action_kind,start,end,from,to,task_id\n";
  for (std::size_t u = 0; u < schedule.timelines.size(); ++u) {
    for (const auto& a : schedule.timelines[u]) {
      os << instance.uavs()[u].id << ',' << to_string(a.kind) << ',' << a.start << ',' << a.end
         << ',' << map.position(a.from).id << ',' << map.position(a.to).id << ',';
      if (a.task) os << *a.task;
      os << '\n';
    }
  }
  return os.str();
}

Schedule parse_schedule_csv(std::string_view text, const ProblemInstance& instance) {
  auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "uav,action_kind,start,end,from,to,task_id") {
    throw ParseError("schedule CSV: missing header");
  }
  const auto& map = instance.map();
  Schedule schedule;
  schedule.timelines.resize(instance.uavs().size());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "schedule CSV line " + std::to_string(i + 1);
    auto cols = split(lines[i], ',');
    if (cols.size() != 7) throw ParseError(where + ": expected 7 columns");
    auto uav = std::find_if(instance.uavs().begin(), instance.uavs().end(),
                            [&](const Uav& u) { return u.id == cols[0]; });
    if (uav == instance.uavs().end()) throw ParseError(where + ": unknown UAV '" + std::string(cols[0]) + "'");
    Action a;
    auto kind = parse_action_kind(cols[1]);
    if (!kind) throw ParseError(where + ": unknown action kind '" + std::string(cols[1]) + "'");
    a.kind = *kind;
    a.start = parse_number<Seconds>(cols[2], where);
    a.end = parse_number<Seconds>(cols[3], where);
    auto from = map.find(cols[4]);
    auto to = map.find(cols[5]);
    if (!from || !to) throw ParseError(where + ": unknown position");
    a.from = *from;
    a.to = *to;
    if (!cols[6].empty()) a.task = parse_number<TaskId>(cols[6], where);
    if (a.kind == ActionKind::kRecharge || a.kind == ActionKind::kWaitOnGround) {
      a.station = instance.station_at(a.from);
    }
    schedule.timelines[static_cast<std::size_t>(uav - instance.uavs().begin())].push_back(a);
  }
  return schedule;
}

std::string schedule_to_json(const Schedule& schedule, const ProblemInstance& instance) {
  const auto& map = instance.map();
  json doc = json::object();
  doc["makespan"] = makespan(schedule);
  json lanes = json::array();
  for (std::size_t u = 0; u < schedule.timelines.size(); ++u) {
    json actions = json::array();
    for (const auto& a : schedule.timelines[u]) {
      json item = {{"kind", std::string(to_string(a.kind))},
                   {"start", a.start},
                   {"end", a.end},
                   {"from", map.position(a.from).id},
                   {"to", map.position(a.to).id}};
      if (a.task) item["task"] = *a.task;
      actions.push_back(std::move(item));
    }
    lanes.push_back({{"uav", instance.uavs()[u].id}, {"actions", std::move(actions)}});
  }
  doc["timelines"] = std::move(lanes);
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace uavsched
