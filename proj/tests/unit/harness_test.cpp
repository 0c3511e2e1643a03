#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "harness.hpp"
#include "uavsched/eat_scheduler.hpp"
#include "uavsched/io.hpp"
#include "uavsched/reference.hpp"

namespace uavsched::harness {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() /
             ("uavsched_harness_" + name + "_" + std::to_string(std::random_device{}()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) { return read_text_file(p); }

fs::path golden() { return fs::path(UAVSCHED_DATA_DIR) / "golden_instance.json"; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  EXPECT_NE(it, header.end()) << name;
  return static_cast<std::size_t>(it - header.begin());
}

TEST(Harness, ParseIdList) {
  EXPECT_EQ(parse_id_list("3,2, 1\n4"), (std::vector<TaskId>{3, 2, 1, 4}));
  EXPECT_TRUE(parse_id_list("  ").empty());
  EXPECT_THROW(parse_id_list("3,x"), ParseError);
}

TEST(Harness, CompleteSequenceAppendsRemainingTasks) {
  auto inst = reference::instance();
  auto seq = complete_sequence({3, 2, 1, 4, 6, 5, 7}, inst);
  EXPECT_EQ(seq, (Sequence{3, 2, 1, 4, 6, 5, 7, 8, 9, 10, 11, 12}));
  EXPECT_THROW(complete_sequence({3, 3}, inst), SequencingError);
  EXPECT_THROW(complete_sequence({99}, inst), SequencingError);
}

TEST(Harness, ScheduleCommandReproducesGoldenPrefix) {
  auto dir = scratch_dir("schedule");
  ScheduleOptions o;
  o.instance = golden();
  o.sequence = "3,2,1,4,6,5,7";
  o.output.out_dir = dir;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_schedule(o, out, err), kOk) << err.str();
  EXPECT_NE(out.str().find("task 7 -> UAV1 @3883"), std::string::npos) << out.str();
  EXPECT_NE(out.str().find("task 6 -> UAV2 @759"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "schedule.csv"));
  EXPECT_TRUE(fs::exists(dir / "schedule.json"));
  EXPECT_TRUE(fs::exists(dir / "schedule.svg"));
  auto inst = load_instance(golden());
  auto parsed = parse_schedule_csv(slurp(dir / "schedule.csv"), inst);
  EXPECT_TRUE(validate_schedule(parsed, inst).empty());
  fs::remove_all(dir);
}

TEST(Harness, ScheduleCommandRejectsInfeasibleSequence) {
  auto dir = scratch_dir("infeasible");
  ScheduleOptions o;
  o.instance = golden();
  o.sequence = "12,3,6";
  o.output.out_dir = dir;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_schedule(o, out, err), kValidation);
  EXPECT_NE(err.str().find("task 12"), std::string::npos) << err.str();
  EXPECT_NE(err.str().find("predecessor 3"), std::string::npos) << err.str();
  fs::remove_all(dir);
}

TEST(Harness, ScheduleCommandUsageAndIoErrors) {
  std::ostringstream out, err;
  ScheduleOptions none;
  none.instance = golden();
  EXPECT_EQ(cmd_schedule(none, out, err), kUsage);
  ScheduleOptions missing;
  missing.instance = "/nonexistent/instance.json";
  missing.rule = "max-task-time";
  EXPECT_EQ(cmd_schedule(missing, out, err), kRuntime);
}

TEST(Harness, EmptyInstanceHasZeroMakespan) {
  auto dir = scratch_dir("empty");
  const auto ref = reference::instance();
  auto empty = ProblemInstance::create(ref.map(), {}, {ref.uavs().begin(), ref.uavs().end()},
                                       {ref.stations().begin(), ref.stations().end()});
  write_file_atomic(dir / "empty.json", instance_to_json(empty));
  ScheduleOptions o;
  o.instance = dir / "empty.json";
  o.sequence = "";
  o.output.out_dir = dir;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_schedule(o, out, err), kOk) << err.str();
  EXPECT_NE(out.str().find("makespan: 0"), std::string::npos) << out.str();
  fs::remove_all(dir);
}

TEST(Harness, GenerateIsByteReproducible) {
  auto dir = scratch_dir("generate");
  GenerateOptions o;
  o.spec.n_tasks = 10;
  o.spec.seed = 7;
  o.output = dir / "a.json";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_generate(o, out, err), kOk) << err.str();
  o.output = dir / "b.json";
  ASSERT_EQ(cmd_generate(o, out, err), kOk);
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
  EXPECT_EQ(load_instance(dir / "a.json").task_count(), 10u);

  GenerateOptions bad = o;
  bad.spec.type_weights = {0.0, 0.0, 0.0};
  EXPECT_EQ(cmd_generate(bad, out, err), kValidation);
  fs::remove_all(dir);
}

TEST(Harness, SearchWritesDeterministicReports) {
  auto dir = scratch_dir("search");
  GenerateOptions g;
  g.spec.n_tasks = 10;
  g.spec.seed = 3;
  g.output = dir / "inst.json";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_generate(g, out, err), kOk);

  SearchOptions s;
  s.instance = g.output;
  s.pso.seed = 11;
  for (const char* run : {"r1", "r2"}) {
    s.output.out_dir = dir / run;
    ASSERT_EQ(cmd_search(s, out, err), kOk) << err.str();
  }
  for (const char* f : {"schedule.csv", "schedule.json", "history.csv", "report.json"}) {
    EXPECT_EQ(slurp(dir / "r1" / f), slurp(dir / "r2" / f)) << f;
  }
  auto rows = csv_rows(slurp(dir / "r1" / "history.csv"));
  ASSERT_GT(rows.size(), 2u);
  EXPECT_LE(rows.size() - 2, 40u);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    EXPECT_LE(std::stoll(rows[i][1]), std::stoll(rows[i - 1][1]));
  }
  fs::remove_all(dir);
}

TEST(Harness, ExperimentGridAndSummaryStatistics) {
  auto dir = scratch_dir("experiment");
  ExperimentOptions o;
  o.c1 = {1.0, 2.0};
  o.c2 = {2.0};
  o.particles = {8, 20};
  o.task_counts = {8};
  o.repetitions = 3;
  o.seed = 5;
  o.jobs = 3;
  o.output.out_dir = dir;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_experiment(o, out, err), kOk) << err.str();

  auto runs = csv_rows(slurp(dir / "runs.csv"));
  ASSERT_EQ(runs.size(), 1u + 2 * 1 * 2 * 3);
  const auto& h = runs[0];
  const auto c_run = column(h, "run"), c_seed = column(h, "seed"), c_c1 = column(h, "c1"),
             c_m = column(h, "particles"), c_mk = column(h, "makespan");
  std::map<std::string, std::vector<double>> cells;
  std::vector<std::string> order;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    EXPECT_EQ(std::stoul(runs[i][c_run]), i - 1);
    EXPECT_EQ(std::stoul(runs[i][c_seed]), 5 + i - 1);
    std::string key = runs[i][c_c1] + "|" + runs[i][c_m];
    if (!cells.contains(key)) order.push_back(key);
    cells[key].push_back(std::stod(runs[i][c_mk]));
  }
  auto summary = csv_rows(slurp(dir / "summary.csv"));
  ASSERT_EQ(summary.size(), 1u + order.size());
  const auto& sh = summary[0];
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto v = cells[order[i]];
    std::sort(v.begin(), v.end());
    const double avg = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    const auto& row = summary[i + 1];
    EXPECT_EQ(row[column(sh, "c1")] + "|" + row[column(sh, "particles")], order[i]);
    EXPECT_DOUBLE_EQ(std::stod(row[column(sh, "min")]), v.front());
    EXPECT_DOUBLE_EQ(std::stod(row[column(sh, "max")]), v.back());
    EXPECT_NEAR(std::stod(row[column(sh, "average")]), avg, 0.005);
    EXPECT_NEAR(std::stod(row[column(sh, "median")]), v[1], 0.005);
    EXPECT_EQ(row[column(sh, "runs")], "3");
  }
  EXPECT_EQ(std::distance(fs::directory_iterator(dir / "runs"), fs::directory_iterator{}), 12);

  // Thread count does not change the written results.
  ExperimentOptions serial = o;
  serial.jobs = 1;
  serial.output.out_dir = dir / "serial";
  ASSERT_EQ(cmd_experiment(serial, out, err), kOk);
  EXPECT_EQ(slurp(dir / "runs.csv"), slurp(dir / "serial" / "runs.csv"));
  EXPECT_EQ(slurp(dir / "summary.csv"), slurp(dir / "serial" / "summary.csv"));
  fs::remove_all(dir);
}

TEST(Harness, SingleRepetitionCellHasEqualStatistics) {
  CellSummary c;
  c.makespans = {1818};
  EXPECT_EQ(c.min(), 1818);
  EXPECT_EQ(c.max(), 1818);
  EXPECT_DOUBLE_EQ(c.average(), 1818.0);
  EXPECT_DOUBLE_EQ(c.median(), 1818.0);
  c.makespans = {4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(c.median(), 2.5);
  EXPECT_DOUBLE_EQ(c.average(), 2.5);
}

TEST(Harness, SummarizeRunsSkipsFailedRows) {
  const std::string csv =
      "run,instance,tasks,c1,c2,particles,rep,seed,status,makespan\n"
      "0,a,10,1,2,8,0,1,ok,100\n"
      "1,a,10,1,2,8,1,2,failed,\n"
      "2,a,10,1,2,8,2,3,ok,300\n"
      "3,b,50,1,2,8,0,4,ok,7\n";
  auto cells = summarize_runs(csv);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0].instance, "a");
  EXPECT_EQ(cells[0].runs, 3u);
  EXPECT_EQ(cells[0].failed, 1u);
  EXPECT_DOUBLE_EQ(cells[0].median(), 200.0);
  EXPECT_EQ(cells[1].tasks, 50);
}

}  // namespace
}  // namespace uavsched::harness
