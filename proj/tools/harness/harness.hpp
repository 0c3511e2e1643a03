#pragma once

// Command implementations behind the uavsched CLI. Each returns a process exit
// code and writes human-readable progress to `out` and problems to `err`.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "uavsched/datagen.hpp"
#include "uavsched/model.hpp"
#include "uavsched/pso.hpp"

namespace uavsched::harness {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kRuntime = 3 };

enum class Format { kCsv, kJson, kSvg };

std::optional<Format> parse_format(std::string_view name);

struct OutputOptions {
  std::filesystem::path out_dir = ".";
  std::set<Format> formats{Format::kCsv, Format::kJson, Format::kSvg};
  bool timings = false;  // include wall-clock figures in written files

  bool wants(Format f) const { return formats.contains(f); }
};

struct ScheduleOptions {
  std::filesystem::path instance;
  std::optional<std::string> rule;
  std::optional<std::string> sequence;  // "3,2,1" (a prefix is completed)
  std::optional<std::filesystem::path> sequence_file;
  OutputOptions output;
};

struct SearchOptions {
  std::filesystem::path instance;
  PsoConfig pso;
  OutputOptions output;
};

struct ExperimentOptions {
  std::vector<double> c1{1.0, 2.0};
  std::vector<double> c2{1.0, 2.0};
  std::vector<std::size_t> particles{8, 20, 40};
  std::vector<int> task_counts{10, 50, 100};      // generated instances
  std::vector<std::filesystem::path> instances;   // used instead when given
  int max_predecessors = 3;
  int repetitions = 20;
  std::uint64_t seed = 1;
  int max_iterations = 40;
  int convergence_window = 10;
  unsigned jobs = 1;
  bool plot = false;
  OutputOptions output;
};

struct GenerateOptions {
  GenSpec spec;
  // Instance file supplying map, fleet and stations; the built-in 8-position
  // map with its three UAVs otherwise.
  std::optional<std::filesystem::path> base;
  std::filesystem::path output;
};

int cmd_schedule(const ScheduleOptions& options, std::ostream& out, std::ostream& err);
int cmd_search(const SearchOptions& options, std::ostream& out, std::ostream& err);
int cmd_experiment(const ExperimentOptions& options, std::ostream& out, std::ostream& err);
int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err);

// Resolves a full sequence from an explicit (possibly partial) list. The
// given ids must be distinct, known and precedence-ordered; the remaining
// tasks follow in id order, repaired. Throws SequencingError naming the
// offending task or pair.
Sequence complete_sequence(const std::vector<TaskId>& prefix, const ProblemInstance& instance);

// Ids separated by commas and/or whitespace.
std::vector<TaskId> parse_id_list(std::string_view text);

struct CellSummary {
  std::string instance;
  int tasks = 0;
  double c1 = 0;
  double c2 = 0;
  std::size_t particles = 0;
  std::size_t runs = 0;
  std::size_t failed = 0;
  std::vector<std::int64_t> makespans;  // successful runs, in run order

  std::int64_t min() const;
  std::int64_t max() const;
  double average() const;
  double median() const;  // mean of the two middle values for even counts
};

// Groups the rows of a runs CSV by cell, preserving first-seen cell order.
std::vector<CellSummary> summarize_runs(std::string_view runs_csv);
std::string summary_csv(const std::vector<CellSummary>& cells);

// Fixed two-decimal rendering used in every written table.
std::string fixed2(double value);

}  // namespace uavsched::harness
