#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "harness.hpp"

namespace h = uavsched::harness;

namespace {

void add_output_flags(CLI::App* cmd, h::OutputOptions& out, std::vector<std::string>& formats) {
  cmd->add_option("--out-dir", out.out_dir, "Directory for written files")->capture_default_str();
  cmd->add_option("--format", formats, "Output formats (csv, json, svg); default all")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  cmd->add_flag("--timings", out.timings, "Record wall-clock times in written files");
}

void apply_formats(h::OutputOptions& out, const std::vector<std::string>& formats) {
  if (formats.empty()) return;
  out.formats.clear();
  for (const auto& f : formats) out.formats.insert(*h::parse_format(f));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-UAV task scheduling with the EAT heuristic and discrete PSO"};
  app.require_subcommand(1);

  h::ScheduleOptions sched;
  std::vector<std::string> sched_formats;
  std::string rule, sequence, sequence_file;
  auto* schedule = app.add_subcommand("schedule", "Build a schedule from a rule or explicit sequence");
  schedule->add_option("--instance", sched.instance, "Instance JSON")->required();
  schedule->add_option("--rule", rule, "Priority rule ordering the tasks");
  schedule->add_option("--sequence", sequence, "Comma-separated task ids; a prefix is completed");
  schedule->add_option("--sequence-file", sequence_file, "File holding the task ids");
  add_output_flags(schedule, sched.output, sched_formats);

  h::SearchOptions search;
  std::vector<std::string> search_formats;
  auto* srch = app.add_subcommand("search", "Run the particle swarm search on one instance");
  srch->add_option("--instance", search.instance, "Instance JSON")->required();
  srch->add_option("--seed", search.pso.seed, "Random seed")->capture_default_str();
  srch->add_option("--c1", search.pso.c1, "Cognitive weight")->capture_default_str();
  srch->add_option("--c2", search.pso.c2, "Social weight")->capture_default_str();
  srch->add_option("--particles", search.pso.swarm_size, "Swarm size")->capture_default_str();
  srch->add_option("--max-iter", search.pso.max_iterations, "Iteration limit")->capture_default_str();
  srch->add_option("--window", search.pso.convergence_window, "Stagnation window")->capture_default_str();
  srch->add_option("--jobs", search.pso.threads, "Fitness evaluation threads")->capture_default_str();
  add_output_flags(srch, search.output, search_formats);

  h::ExperimentOptions exp;
  std::vector<std::string> exp_formats;
  auto* experiment = app.add_subcommand("experiment", "Run the parameter grid and summarize");
  experiment->add_option("--c1", exp.c1, "Cognitive weights")->delimiter(',')->capture_default_str();
  experiment->add_option("--c2", exp.c2, "Social weights")->delimiter(',')->capture_default_str();
  experiment->add_option("--particles", exp.particles, "Swarm sizes")->delimiter(',')->capture_default_str();
  experiment->add_option("--tasks", exp.task_counts, "Generated instance sizes")
      ->delimiter(',')
      ->capture_default_str();
  experiment->add_option("--instances", exp.instances, "Instance files used instead of generated ones")
      ->delimiter(',');
  experiment->add_option("--max-pred", exp.max_predecessors, "Predecessor cap for generated instances")
      ->capture_default_str();
  experiment->add_option("--reps", exp.repetitions, "Repetitions per cell")->capture_default_str();
  experiment->add_option("--seed", exp.seed, "Base seed; run k uses seed + k")->capture_default_str();
  experiment->add_option("--max-iter", exp.max_iterations, "Iteration limit")->capture_default_str();
  experiment->add_option("--window", exp.convergence_window, "Stagnation window")->capture_default_str();
  experiment->add_option("--jobs", exp.jobs, "Concurrent runs")->capture_default_str();
  experiment->add_flag("--plot", exp.plot, "Write a makespan-per-run plot for each instance");
  add_output_flags(experiment, exp.output, exp_formats);

  h::GenerateOptions gen;
  std::vector<double> weights;
  auto* generate = app.add_subcommand("generate", "Generate a random instance");
  generate->add_option("--tasks", gen.spec.n_tasks, "Number of tasks")->capture_default_str();
  generate->add_option("--seed", gen.spec.seed, "Random seed")->capture_default_str();
  generate->add_option("--max-pred", gen.spec.max_predecessors, "Predecessor cap")->capture_default_str();
  generate->add_option("--weights", weights, "Type weights: single,compound,handling")
      ->delimiter(',')
      ->expected(3);
  generate->add_option("--base", gen.base, "Instance supplying map, UAVs and stations");
  generate->add_option("--output", gen.output, "Output instance JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return h::kUsage;
  }

  if (*schedule) {
    if (!rule.empty()) sched.rule = rule;
    if (!sequence.empty()) sched.sequence = sequence;
    if (!sequence_file.empty()) sched.sequence_file = sequence_file;
    apply_formats(sched.output, sched_formats);
    return h::cmd_schedule(sched, std::cout, std::cerr);
  }
  if (*srch) {
    apply_formats(search.output, search_formats);
    return h::cmd_search(search, std::cout, std::cerr);
  }
  if (*experiment) {
    apply_formats(exp.output, exp_formats);
    return h::cmd_experiment(exp, std::cout, std::cerr);
  }
  if (!weights.empty()) gen.spec.type_weights = {weights[0], weights[1], weights[2]};
  return h::cmd_generate(gen, std::cout, std::cerr);
}
