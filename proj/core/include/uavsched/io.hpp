#pragma once

// File formats: JSON instances, tabular task CSV, schedule CSV/JSON.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavsched/model.hpp"
#include "uavsched/schedule.hpp"

namespace uavsched {

// Syntax or shape error in an input file. Semantic problems surface as
// InstanceError from ProblemInstance::create.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance document:
//   positions    [{"id": "a", "kind": "work"|"recharge"}] or ["a", ...]
//                (bare strings are work positions)
//   flight_time  n x n matrix, rows in position order
//   stations     [{"pos": "R1", "slots": 1}]
//   tasks        [{"id", "type"?, "start", "end", "proc_time", "predecessors"}]
//   uavs         [{"id", "initial_pos", "battery_capacity"?, "recharge_duration"?}]
// A missing task type is inferred from the endpoints and processing time.
ProblemInstance parse_instance_json(std::string_view text);
ProblemInstance load_instance(const std::filesystem::path& path);

// Canonical, deterministic rendering (2-space indent, trailing newline).
std::string instance_to_json(const ProblemInstance& instance);

// Header TaskID,Start,End,ProcTime,Precedence; predecessor ids separated by
// ';' with '-' for none. Types are inferred.
std::vector<Task> parse_task_csv(std::string_view text, const TrajectoryMap& map);

// uav,action_kind,start,end,from,to,task_id (task_id empty when not a task).
std::string schedule_to_csv(const Schedule& schedule, const ProblemInstance& instance);
Schedule parse_schedule_csv(std::string_view text, const ProblemInstance& instance);

std::string schedule_to_json(const Schedule& schedule, const ProblemInstance& instance);

std::string read_text_file(const std::filesystem::path& path);

// Writes to a sibling temporary and renames over `path`, so readers never see
// a partial file. Creates missing parent directories.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace uavsched
