#include <gtest/gtest.h>

#include <filesystem>

#include "oracle.hpp"
#include "uavsched/eat_scheduler.hpp"
#include "uavsched/io.hpp"
#include "uavsched/reference.hpp"
#include "uavsched/svg.hpp"

namespace uavsched {
namespace {

TEST(InstanceJson, RoundTrip) {
  auto inst = reference::instance();
  auto text = instance_to_json(inst);
  auto back = parse_instance_json(text);
  EXPECT_EQ(instance_to_json(back), text);
  EXPECT_EQ(back.task(8).predecessors, (std::vector<TaskId>{4, 5}));
  EXPECT_EQ(back.map().flight_time("a", "d"), 222);
}

TEST(InstanceJson, MinimalForm) {
  const char* doc = R"({
    "positions": ["x", {"id": "y"}, {"id": "S", "kind": "recharge"}],
    "flight_time": [[0, 50, 30], [50, 0, 40], [30, 40, 0]],
    "stations": [{"pos": "S"}],
    "tasks": [{"id": 1, "start": "x", "end": "y", "proc_time": 110},
              {"id": 2, "start": "y", "end": "y", "proc_time": 60, "predecessors": [1]}],
    "uavs": [{"id": "U", "initial_pos": "S"}]
  })";
  auto inst = parse_instance_json(doc);
  EXPECT_EQ(inst.task(1).type, TaskType::kMaterialHandling);
  EXPECT_EQ(inst.task(2).type, TaskType::kSingleInspection);
  EXPECT_EQ(inst.uavs()[0].battery_capacity, 1200);
  EXPECT_EQ(inst.stations()[0].slots, 1);
}

TEST(InstanceJson, Errors) {
  EXPECT_THROW(parse_instance_json("{"), ParseError);
  EXPECT_THROW(parse_instance_json("{}"), ParseError);
  const char* bad_pos = R"({"positions": ["x", {"id": "S", "kind": "recharge"}],
    "flight_time": [[0, 5], [5, 0]], "stations": [{"pos": "S"}],
    "tasks": [{"id": 1, "start": "q", "end": "x", "proc_time": 10}],
    "uavs": [{"id": "U", "initial_pos": "S"}]})";
  try {
    parse_instance_json(bad_pos);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'q'"), std::string::npos);
  }
  const char* asym = R"({"positions": ["x", {"id": "S", "kind": "recharge"}],
    "flight_time": [[0, 5], [6, 0]], "stations": [{"pos": "S"}],
    "tasks": [], "uavs": [{"id": "U", "initial_pos": "S"}]})";
  EXPECT_THROW(parse_instance_json(asym), InstanceError);
}

TEST(TaskCsv, TableLayout) {
  auto map = reference::map();
  const char* csv =
      "TaskID,Start,End,ProcTime,Precedence\n"
      "1,e,f,243,-\n"
      "2,c,c,245,-\n"
      "4,e,b,550,1\n"
      "8,b,c,304,4;5\n"
      "5,c,c,235,2\n";
  auto tasks = parse_task_csv(csv, map);
  ASSERT_EQ(tasks.size(), 5u);
  EXPECT_EQ(tasks[3].predecessors, (std::vector<TaskId>{4, 5}));
  EXPECT_EQ(tasks[0].type, TaskType::kMaterialHandling);
  EXPECT_TRUE(tasks[1].predecessors.empty());
  EXPECT_THROW(parse_task_csv("TaskID,Start\n1,a\n", map), ParseError);
  EXPECT_THROW(parse_task_csv("TaskID,Start,End,ProcTime,Precedence\n1,a,zz,5,-\n", map), ParseError);
  EXPECT_THROW(parse_task_csv("TaskID,Start,End,ProcTime,Precedence\n1,a,a,5x,-\n", map), ParseError);
}

TEST(TaskCsv, GoldenFileMatchesReference) {
  auto map = reference::map();
  auto text = read_text_file(std::filesystem::path(UAVSCHED_DATA_DIR) / "golden_tasks.csv");
  auto tasks = parse_task_csv(text, map);
  auto ref = reference::tasks(map);
  ASSERT_EQ(tasks.size(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    EXPECT_EQ(tasks[i].id, ref[i].id);
    EXPECT_EQ(tasks[i].start, ref[i].start);
    EXPECT_EQ(tasks[i].end, ref[i].end);
    EXPECT_EQ(tasks[i].proc_time, ref[i].proc_time);
    EXPECT_EQ(tasks[i].predecessors, ref[i].predecessors);
    EXPECT_EQ(tasks[i].type, ref[i].type);
  }
}

TEST(TaskCsv, GoldenInstanceFileMatchesReference) {
  auto inst = load_instance(std::filesystem::path(UAVSCHED_DATA_DIR) / "golden_instance.json");
  EXPECT_EQ(instance_to_json(inst), instance_to_json(reference::instance()));
}

TEST(ScheduleCsv, RoundTripStaysValid) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    testing::RandomInstanceSpec spec;
    spec.tasks = 10;
    spec.uavs = 3;
    auto inst = testing::random_instance(seed, spec);
    Rng rng(seed);
    auto s = build_schedule(testing::random_feasible_sequence(inst, rng), inst);
    auto back = parse_schedule_csv(schedule_to_csv(s, inst), inst);
    EXPECT_EQ(back, s);
    EXPECT_TRUE(validate_schedule(back, inst).empty());
  }
}

TEST(ScheduleCsv, Format) {
  auto inst = reference::instance();
  auto s = build_schedule(Sequence{3, 2, 1, 4, 6, 5, 7, 8, 9, 10, 11, 12}, inst);
  auto csv = schedule_to_csv(s, inst);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "uav,action_kind,start,end,from,to,task_id");
  EXPECT_NE(csv.find("UAV3,task_exec,40,759,d,a,3\n"), std::string::npos);
  EXPECT_NE(csv.find("UAV2,hover,625,759,d,d,\n"), std::string::npos);
  EXPECT_THROW(parse_schedule_csv("nope\n", inst), ParseError);
}

TEST(ScheduleJson, CarriesMakespan) {
  auto inst = reference::instance();
  auto s = build_schedule(Sequence{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, inst);
  auto json = schedule_to_json(s, inst);
  EXPECT_NE(json.find("\"makespan\": " + std::to_string(makespan(s))), std::string::npos);
}

TEST(Svg, GanttHasLanesAndLegend) {
  auto inst = reference::instance();
  auto s = build_schedule(Sequence{3, 2, 1, 4, 6, 5, 7, 8, 9, 10, 11, 12}, inst);
  auto svg = gantt_svg(s, inst);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  for (const char* text : {"UAV1", "UAV2", "UAV3", "Hover", "Recharge", "Wait on ground"}) {
    EXPECT_NE(svg.find(text), std::string::npos) << text;
  }
  EXPECT_EQ(gantt_svg(s, inst), svg);
  std::vector<double> values{5, 4, 6, 3};
  auto plot = run_plot_svg(values, 2, "a < b");
  EXPECT_NE(plot.find("a &lt; b"), std::string::npos);
  EXPECT_NE(plot.find("polyline"), std::string::npos);
}

TEST(Files, AtomicWrite) {
  auto dir = std::filesystem::temp_directory_path() / "uavsched_io_test";
  std::filesystem::remove_all(dir);
  auto path = dir / "nested" / "out.txt";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  EXPECT_EQ(read_text_file(path), "second");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(path.parent_path())) ++entries;
  EXPECT_EQ(entries, 1u);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(read_text_file(path), ParseError);
}

}  // namespace
}  // namespace uavsched
