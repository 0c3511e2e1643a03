#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "harness.hpp"
#include "uavsched/eat_scheduler.hpp"
#include "uavsched/io.hpp"
#include "uavsched/priority_rules.hpp"
#include "uavsched/reference.hpp"
#include "uavsched/schedule.hpp"
#include "uavsched/svg.hpp"

namespace uavsched::harness {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Maps library exceptions onto exit codes with a one-line message.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  } catch (const InstanceError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const SequencingError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
}

void write_schedule_artifacts(const Schedule& schedule, const ProblemInstance& instance,
                              const OutputOptions& output, std::ostream& out) {
  const auto& dir = output.out_dir;
  if (output.wants(Format::kCsv)) {
    write_file_atomic(dir / "schedule.csv", schedule_to_csv(schedule, instance));
    out << "wrote " << (dir / "schedule.csv").string() << '\n';
  }
  if (output.wants(Format::kJson)) {
    write_file_atomic(dir / "schedule.json", schedule_to_json(schedule, instance));
    out << "wrote " << (dir / "schedule.json").string() << '\n';
  }
  if (output.wants(Format::kSvg)) {
    write_file_atomic(dir / "schedule.svg", gantt_svg(schedule, instance));
    out << "wrote " << (dir / "schedule.svg").string() << '\n';
  }
}

void print_assignments(const Schedule& schedule, const ProblemInstance& instance, std::ostream& out) {
  for (const auto& p : task_placements(schedule)) {
    out << "  task " << p.task << " -> " << instance.uavs()[p.uav].id << " @" << p.start << " .. "
        << p.end << '\n';
  }
}

int report_violations(const std::vector<Violation>& violations, std::ostream& err) {
  if (violations.empty()) return kOk;
  err << violations.size() << " schedule violation(s):\n";
  for (const auto& v : violations) err << "  [" << to_string(v.kind) << "] " << v.detail << '\n';
  return kValidation;
}

std::string join(const Sequence& seq) {
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? "," : "") + std::to_string(seq[i]);
  return s;
}

std::string history_csv(const std::vector<IterationRecord>& history) {
  std::ostringstream os;
  os << "iteration,best_fitness,mean_fitness\n";
  for (const auto& h : history) {
    os << h.iteration << ',' << h.best_fitness << ',' << fixed2(h.mean_fitness) << '\n';
  }
  return os.str();
}

ordered_json config_json(const PsoConfig& c) {
  ordered_json j;
  j["c1"] = c.c1;
  j["c2"] = c.c2;
  j["particles"] = c.swarm_size;
  j["max_iterations"] = c.max_iterations;
  j["convergence_window"] = c.convergence_window;
  j["initial_velocity_pairs"] = c.initial_velocity_pairs ? ordered_json(*c.initial_velocity_pairs)
                                                         : ordered_json(nullptr);
  j["seed"] = c.seed;
  return j;
}

ordered_json report_json(const PsoConfig& config, const PsoResult& r, bool timings) {
  ordered_json j;
  j["config"] = config_json(config);
  j["best_makespan"] = r.best_fitness;
  j["initial_best_makespan"] = r.initial_best_fitness;
  j["best_sequence"] = r.best_sequence;
  j["convergence_iteration"] = r.convergence_iteration;
  j["iterations_run"] = r.iterations_run;
  j["converged"] = r.converged;
  if (timings) j["wall_clock_ms"] = r.wall_clock_ms;
  ordered_json hist = ordered_json::array();
  for (const auto& h : r.history) {
    hist.push_back({{"iteration", h.iteration},
                    {"best_fitness", h.best_fitness},
                    {"mean_fitness", std::stod(fixed2(h.mean_fitness))}});
  }
  j["history"] = std::move(hist);
  return j;
}

// One-decimal milliseconds for stdout summaries.
std::string ms(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f ms", v);
  return buf;
}

struct ExperimentInstance {
  std::string label;
  ProblemInstance instance;
};

struct PaperFigures {
  int tasks;
  double time_ms;
  double min, max, average, median;
};

// Published figures for the c1=1, c2=2, 40-particle cell on unpublished datasets.
constexpr PaperFigures kPaperFigures[] = {
    {10, 102.1, 1818, 1937, 1835.85, 1818},
    {50, 639.25, 17076, 18948, 18559.65, 18677.5},
    {100, 1158.25, 30009, 31876, 30865.65, 30865},
};

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  if (name == "svg") return Format::kSvg;
  return std::nullopt;
}

std::vector<TaskId> parse_id_list(std::string_view text) {
  std::vector<TaskId> ids;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(cur, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != cur.size()) throw ParseError("'" + cur + "' is not a task id");
    ids.push_back(v);
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return ids;
}

Sequence complete_sequence(const std::vector<TaskId>& prefix, const ProblemInstance& instance) {
  std::set<TaskId> seen;
  for (TaskId id : prefix) {
    if (!instance.find_task(id)) throw SequencingError("unknown task " + std::to_string(id));
    if (!seen.insert(id).second) throw SequencingError("task " + std::to_string(id) + " listed twice");
    for (TaskId p : instance.task(id).predecessors) {
      if (!seen.contains(p)) {
        throw SequencingError("task " + std::to_string(id) + " is sequenced before its predecessor " +
                              std::to_string(p));
      }
    }
  }
  Sequence seq = prefix;
  auto ids = instance.task_ids();
  std::sort(ids.begin(), ids.end());
  for (TaskId id : ids) {
    if (!seen.contains(id)) seq.push_back(id);
  }
  return repair(seq, instance.graph());
}

int cmd_schedule(const ScheduleOptions& o, std::ostream& out, std::ostream& err) {
  const int sources = (o.rule ? 1 : 0) + (o.sequence ? 1 : 0) + (o.sequence_file ? 1 : 0);
  if (sources != 1) {
    err << "error: give exactly one of --rule, --sequence, --sequence-file\n";
    return kUsage;
  }
  return guarded(err, [&] {
    ProblemInstance instance = load_instance(o.instance);
    Sequence seq;
    if (o.rule) {
      auto rule = parse_rule(*o.rule);
      if (!rule) {
        err << "error: unknown rule '" << *o.rule << "'\n";
        return static_cast<int>(kUsage);
      }
      seq = priority_ordering(instance, *rule);
    } else {
      std::string text = o.sequence ? *o.sequence : read_text_file(*o.sequence_file);
      seq = complete_sequence(parse_id_list(text), instance);
    }
    Schedule schedule = build_schedule(seq, instance);
    out << "sequence: " << join(seq) << '\n';
    print_assignments(schedule, instance, out);
    out << "makespan: " << makespan(schedule) << '\n';
    write_schedule_artifacts(schedule, instance, o.output, out);
    return report_violations(validate_schedule(schedule, instance), err);
  });
}

int cmd_search(const SearchOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ProblemInstance instance = load_instance(o.instance);
    validate(o.pso);
    PsoResult r = run_pso(instance, o.pso);
    out << "best makespan: " << r.best_fitness << " (initial best " << r.initial_best_fitness << ")\n";
    out << "best sequence: " << join(r.best_sequence) << '\n';
    out << "last improvement at iteration " << r.convergence_iteration << ", ran "
        << r.iterations_run << (r.converged ? " (converged)" : " (iteration limit)") << '\n';
    out << "wall clock: " << ms(r.wall_clock_ms) << '\n';
    write_schedule_artifacts(r.best_schedule, instance, o.output, out);
    write_file_atomic(o.output.out_dir / "history.csv", history_csv(r.history));
    write_file_atomic(o.output.out_dir / "report.json",
                      report_json(o.pso, r, o.output.timings).dump(2) + "\n");
    out << "wrote " << (o.output.out_dir / "history.csv").string() << '\n';
    out << "wrote " << (o.output.out_dir / "report.json").string() << '\n';
    return report_violations(validate_schedule(r.best_schedule, instance), err);
  });
}

int cmd_experiment(const ExperimentOptions& o, std::ostream& out, std::ostream& err) {
  if (o.c1.empty() || o.c2.empty() || o.particles.empty() || o.repetitions <= 0) {
    err << "error: the grid needs at least one value per axis and >= 1 repetition\n";
    return kUsage;
  }
  return guarded(err, [&] {
    std::vector<ExperimentInstance> instances;
    if (!o.instances.empty()) {
      for (const auto& p : o.instances) instances.push_back({p.stem().string(), load_instance(p)});
    } else {
      const TrajectoryMap map = reference::map();
      for (int n : o.task_counts) {
        GenSpec spec;
        spec.n_tasks = n;
        spec.max_predecessors = o.max_predecessors;
        spec.seed = o.seed;
        instances.push_back({"gen" + std::to_string(n),
                             generate_instance(spec, map, reference::fleet(map), reference::stations(map))});
      }
    }

    struct Run {
      std::size_t instance;
      double c1, c2;
      std::size_t particles;
      int rep;
      std::uint64_t seed;
    };
    std::vector<Run> runs;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      for (double c1 : o.c1) {
        for (double c2 : o.c2) {
          for (std::size_t m : o.particles) {
            for (int rep = 0; rep < o.repetitions; ++rep) {
              runs.push_back({i, c1, c2, m, rep, o.seed + runs.size()});
            }
          }
        }
      }
    }

    struct Outcome {
      bool ok = false;
      std::string error;
      PsoResult result;
    };
    std::vector<Outcome> outcomes(runs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k = next++; k < runs.size(); k = next++) {
        const Run& run = runs[k];
        PsoConfig config;
        config.c1 = run.c1;
        config.c2 = run.c2;
        config.swarm_size = run.particles;
        config.max_iterations = o.max_iterations;
        config.convergence_window = o.convergence_window;
        config.seed = run.seed;
        try {
          outcomes[k].result = run_pso(instances[run.instance].instance, config);
          outcomes[k].ok = true;
          if (!o.output.wants(Format::kJson)) continue;
          char name[32];
          std::snprintf(name, sizeof name, "run_%05zu.json", k);
          write_file_atomic(o.output.out_dir / "runs" / name,
                            report_json(config, outcomes[k].result, o.output.timings).dump(2) + "\n");
        } catch (const std::exception& e) {
          outcomes[k].error = e.what();
        }
      }
    };
    {
      const unsigned workers = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(runs.size())));
      std::vector<std::jthread> pool;
      for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
      worker();
    }

    std::ostringstream csv;
    csv << "run,instance,tasks,c1,c2,particles,rep,seed,status,makespan,initial_best,"
           "convergence_iteration,iterations_run,converged";
    if (o.output.timings) csv << ",wall_clock_ms";
    csv << '\n';
    for (std::size_t k = 0; k < runs.size(); ++k) {
      const Run& run = runs[k];
      const Outcome& oc = outcomes[k];
      csv << k << ',' << instances[run.instance].label << ','
          << instances[run.instance].instance.task_count() << ',' << compact(run.c1) << ','
          << compact(run.c2) << ',' << run.particles << ',' << run.rep << ',' << run.seed << ',';
      if (oc.ok) {
        csv << "ok," << oc.result.best_fitness << ',' << oc.result.initial_best_fitness << ','
            << oc.result.convergence_iteration << ',' << oc.result.iterations_run << ','
            << (oc.result.converged ? 1 : 0);
        if (o.output.timings) csv << ',' << fixed2(oc.result.wall_clock_ms);
      } else {
        csv << "failed,,,,,";
        if (o.output.timings) csv << ',';
        err << "run " << k << " failed: " << oc.error << '\n';
      }
      csv << '\n';
    }
    const std::string runs_text = csv.str();
    const auto cells = summarize_runs(runs_text);
    if (o.output.wants(Format::kCsv)) {
      write_file_atomic(o.output.out_dir / "runs.csv", runs_text);
      write_file_atomic(o.output.out_dir / "summary.csv", summary_csv(cells));
    }

    if (o.plot && o.output.wants(Format::kSvg)) {
      std::map<std::string, std::vector<double>> per_instance;
      for (std::size_t k = 0; k < runs.size(); ++k) {
        if (outcomes[k].ok) {
          per_instance[instances[runs[k].instance].label].push_back(
              static_cast<double>(outcomes[k].result.best_fitness));
        }
      }
      for (const auto& [label, values] : per_instance) {
        auto path = o.output.out_dir / ("makespan_" + label + ".svg");
        write_file_atomic(path, run_plot_svg(values, std::max(1, o.repetitions),
                                             "Makespan per run, " + label));
        out << "wrote " << path.string() << '\n';
      }
    }

    out << "runs: " << runs.size() << " (" << cells.size() << " cells x " << o.repetitions
        << " repetitions)\n";
    out << "cell                         runs  fail       min       max     average      median\n";
    for (const auto& c : cells) {
      char line[200];
      std::snprintf(line, sizeof line, "%-8s c1=%-4s c2=%-4s m=%-4zu %5zu %5zu %9lld %9lld %11s %11s\n",
                    c.instance.c_str(), compact(c.c1).c_str(), compact(c.c2).c_str(), c.particles,
                    c.runs, c.failed, static_cast<long long>(c.min()),
                    static_cast<long long>(c.max()), fixed2(c.average()).c_str(),
                    fixed2(c.median()).c_str());
      out << line;
    }

    // Side-by-side with the published figures; datasets differ, so only the
    // order of magnitude is comparable.
    bool header = false;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const int n = static_cast<int>(instances[i].instance.task_count());
      const PaperFigures* paper = nullptr;
      for (const auto& f : kPaperFigures) {
        if (f.tasks == n) paper = &f;
      }
      double total_ms = 0;
      std::size_t timed = 0;
      for (std::size_t k = 0; k < runs.size(); ++k) {
        if (runs[k].instance == i && runs[k].c1 == 1.0 && runs[k].c2 == 2.0 &&
            runs[k].particles == 40 && outcomes[k].ok) {
          total_ms += outcomes[k].result.wall_clock_ms;
          ++timed;
        }
      }
      if (!paper || timed == 0) continue;
      if (!header) {
        out << "reference cell c1=1 c2=2 m=40 (published figures from different datasets):\n";
        header = true;
      }
      const CellSummary* cell = nullptr;
      for (const auto& c : cells) {
        if (c.instance == instances[i].label && c.c1 == 1.0 && c.c2 == 2.0 && c.particles == 40) cell = &c;
      }
      out << "  " << n << " tasks: mean time " << ms(total_ms / static_cast<double>(timed))
          << " vs published " << ms(paper->time_ms);
      if (cell && !cell->makespans.empty()) {
        out << "; makespan min/max/avg/median " << cell->min() << '/' << cell->max() << '/'
            << fixed2(cell->average()) << '/' << fixed2(cell->median()) << " vs published "
            << paper->min << '/' << paper->max << '/' << fixed2(paper->average) << '/'
            << fixed2(paper->median);
      }
      out << '\n';
    }
    if (o.output.wants(Format::kCsv)) {
      out << "wrote " << (o.output.out_dir / "runs.csv").string() << '\n';
      out << "wrote " << (o.output.out_dir / "summary.csv").string() << '\n';
    }
    if (o.output.wants(Format::kJson)) {
      out << "wrote " << runs.size() << " run reports under " << (o.output.out_dir / "runs").string() << '\n';
    }
    const bool any_failed = std::any_of(outcomes.begin(), outcomes.end(),
                                        [](const Outcome& oc) { return !oc.ok; });
    return any_failed ? static_cast<int>(kRuntime) : static_cast<int>(kOk);
  });
}

int cmd_generate(const GenerateOptions& o, std::ostream& out, std::ostream& err) {
  if (o.output.empty()) {
    err << "error: --output is required\n";
    return kUsage;
  }
  return guarded(err, [&] {
    TrajectoryMap map;
    std::vector<Uav> uavs;
    std::vector<RechargeStation> stations;
    if (o.base) {
      ProblemInstance base = load_instance(*o.base);
      map = base.map();
      uavs.assign(base.uavs().begin(), base.uavs().end());
      stations.assign(base.stations().begin(), base.stations().end());
    } else {
      map = reference::map();
      uavs = reference::fleet(map);
      stations = reference::stations(map);
    }
    ProblemInstance instance = generate_instance(o.spec, map, std::move(uavs), std::move(stations));
    write_file_atomic(o.output, instance_to_json(instance));

    std::map<TaskType, int> per_type;
    for (const auto& t : instance.tasks()) ++per_type[t.type];
    out << "generated " << instance.task_count() << " tasks (seed " << o.spec.seed << ")\n";
    for (auto [type, count] : per_type) out << "  " << to_string(type) << ": " << count << '\n';
    out << "  precedence edges: " << instance.graph().edges().size() << '\n';
    out << "  positions: " << instance.map().size() << ", UAVs: " << instance.uavs().size()
        << ", stations: " << instance.stations().size() << '\n';
    auto problems = ProblemInstance::check(instance.map(), instance.tasks(), instance.uavs(),
                                           instance.stations());
    out << "  load checks: " << (problems.empty() ? "pass" : "FAIL") << '\n';
    out << "wrote " << o.output.string() << '\n';
    return problems.empty() ? static_cast<int>(kOk) : static_cast<int>(kValidation);
  });
}

}  // namespace uavsched::harness
