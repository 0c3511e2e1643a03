#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "harness.hpp"

namespace uavsched::harness {

namespace {

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string fixed2(double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::int64_t CellSummary::min() const {
  return makespans.empty() ? 0 : *std::min_element(makespans.begin(), makespans.end());
}

std::int64_t CellSummary::max() const {
  return makespans.empty() ? 0 : *std::max_element(makespans.begin(), makespans.end());
}

double CellSummary::average() const {
  if (makespans.empty()) return 0;
  return static_cast<double>(std::accumulate(makespans.begin(), makespans.end(), std::int64_t{0})) /
         static_cast<double>(makespans.size());
}

double CellSummary::median() const {
  if (makespans.empty()) return 0;
  auto v = makespans;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return static_cast<double>(v[n / 2]);
  return (static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2])) / 2.0;
}

std::vector<CellSummary> summarize_runs(std::string_view runs_csv) {
  std::vector<std::string_view> lines;
  std::size_t begin = 0;
  while (begin < runs_csv.size()) {
    std::size_t end = runs_csv.find('\n', begin);
    if (end == std::string_view::npos) end = runs_csv.size();
    if (end > begin) lines.push_back(runs_csv.substr(begin, end - begin));
    begin = end + 1;
  }
  if (lines.empty()) throw std::invalid_argument("runs CSV is empty");
  auto header = split_line(lines[0]);
  auto col = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::invalid_argument("runs CSV lacks column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_inst = col("instance"), c_tasks = col("tasks"), c_c1 = col("c1"),
                    c_c2 = col("c2"), c_part = col("particles"), c_status = col("status"),
                    c_span = col("makespan");

  std::vector<CellSummary> cells;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto row = split_line(lines[i]);
    if (row.size() != header.size()) {
      throw std::invalid_argument("runs CSV line " + std::to_string(i + 1) + " has " +
                                  std::to_string(row.size()) + " fields");
    }
    const std::string key = row[c_inst] + "|" + row[c_c1] + "|" + row[c_c2] + "|" + row[c_part];
    auto [it, fresh] = index.emplace(key, cells.size());
    if (fresh) {
      CellSummary cell;
      cell.instance = row[c_inst];
      cell.tasks = std::stoi(row[c_tasks]);
      cell.c1 = std::stod(row[c_c1]);
      cell.c2 = std::stod(row[c_c2]);
      cell.particles = std::stoul(row[c_part]);
      cells.push_back(std::move(cell));
    }
    CellSummary& cell = cells[it->second];
    ++cell.runs;
    if (row[c_status] == "ok") {
      cell.makespans.push_back(std::stoll(row[c_span]));
    } else {
      ++cell.failed;
    }
  }
  return cells;
}

std::string summary_csv(const std::vector<CellSummary>& cells) {
  std::ostringstream os;
  os << "instance,tasks,c1,c2,particles,runs,failed,min,max,average,median\n";
  for (const auto& c : cells) {
    os << c.instance << ',' << c.tasks << ',' << compact(c.c1) << ',' << compact(c.c2) << ','
       << c.particles << ',' << c.runs << ',' << c.failed << ',';
    if (c.makespans.empty()) {
      os << ",,,\n";
    } else {
      os << c.min() << ',' << c.max() << ',' << fixed2(c.average()) << ',' << fixed2(c.median())
         << '\n';
    }
  }
  return os.str();
}

}  // namespace uavsched::harness
