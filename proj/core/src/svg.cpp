#include "uavsched/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace uavsched {

namespace {

const char* colour(ActionKind kind) {
  switch (kind) {
    case ActionKind::kFlight: return "#4e79a7";
    case ActionKind::kTaskExec: return "#59a14f";
    case ActionKind::kHover: return "#f28e2b";
    case ActionKind::kWaitOnGround: return "#bab0ac";
    case ActionKind::kRecharge: return "#e15759";
  }
  return "#000000";
}

const char* label(ActionKind kind) {
  switch (kind) {
    case ActionKind::kFlight: return "Flight";
    case ActionKind::kTaskExec: return "Task execution";
    case ActionKind::kHover: return "Hover";
    case ActionKind::kWaitOnGround: return "Wait on ground";
    case ActionKind::kRecharge: return "Recharge";
  }
  return "";
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Fixed-precision number text so output does not depend on stream state.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// 1, 2 or 5 times a power of ten, giving roughly `target` ticks.
double tick_step(double span, int target) {
  if (span <= 0) return 1;
  double raw = span / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10 * mag;
}

}  // namespace

std::string gantt_svg(const Schedule& schedule, const ProblemInstance& instance) {
  const double left = 90, right = 30, top = 40, lane_h = 36, lane_gap = 14, width = 1100;
  const std::size_t lanes = schedule.timelines.size();
  const double plot_w = width - left - right;
  const double plot_bottom = top + static_cast<double>(lanes) * (lane_h + lane_gap);
  const double height = plot_bottom + 90;
  const Seconds span = std::max<Seconds>(makespan(schedule), 1);
  auto x = [&](Seconds t) { return left + plot_w * static_cast<double>(t) / static_cast<double>(span); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(left) << "\" y=\"22\" font-size=\"14\">Makespan " << makespan(schedule)
     << " s</text>\n";

  const double step = tick_step(static_cast<double>(span), 10);
  for (double t = 0; t <= static_cast<double>(span) + 1e-9; t += step) {
    double px = left + plot_w * t / static_cast<double>(span);
    os << "<line x1=\"" << num(px) << "\" y1=\"" << num(top - 4) << "\" x2=\"" << num(px)
       << "\" y2=\"" << num(plot_bottom) << "\" stroke=\"#e0e0e0\"/>\n";
    os << "<text x=\"" << num(px) << "\" y=\"" << num(plot_bottom + 16)
       << "\" text-anchor=\"middle\">" << static_cast<long long>(t) << "</text>\n";
  }
  os << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(plot_bottom + 34)
     << "\" text-anchor=\"middle\">time (s)</text>\n";

  for (std::size_t u = 0; u < lanes; ++u) {
    double y = top + static_cast<double>(u) * (lane_h + lane_gap);
    os << "<text x=\"" << num(left - 10) << "\" y=\"" << num(y + lane_h / 2 + 4)
       << "\" text-anchor=\"end\">" << escape(instance.uavs()[u].id) << "</text>\n";
    for (const auto& a : schedule.timelines[u]) {
      double x0 = x(a.start);
      double w = std::max(x(a.end) - x0, 0.5);
      os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
         << "\" height=\"" << num(lane_h) << "\" fill=\"" << colour(a.kind)
         << "\" stroke=\"white\" stroke-width=\"0.5\"><title>" << to_string(a.kind) << ' '
         << a.start << "-" << a.end << ' ' << escape(instance.map().position(a.from).id) << "&gt;"
         << escape(instance.map().position(a.to).id);
      if (a.task) os << " task " << *a.task;
      os << "</title></rect>\n";
      if (a.task && w > 14) {
        os << "<text x=\"" << num(x0 + w / 2) << "\" y=\"" << num(y + lane_h / 2 + 4)
           << "\" text-anchor=\"middle\" fill=\"white\">" << *a.task << "</text>\n";
      }
    }
  }

  double lx = left;
  const double ly = plot_bottom + 56;
  for (ActionKind k : {ActionKind::kFlight, ActionKind::kTaskExec, ActionKind::kHover,
                       ActionKind::kWaitOnGround, ActionKind::kRecharge}) {
    os << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" width=\"14\" height=\"14\" fill=\""
       << colour(k) << "\"/>\n";
    os << "<text x=\"" << num(lx + 20) << "\" y=\"" << num(ly + 11) << "\">" << label(k)
       << "</text>\n";
    lx += 150;
  }
  os << "</svg>\n";
  return os.str();
}

std::string run_plot_svg(std::span<const double> values, int window, const std::string& title) {
  const double left = 70, right = 30, top = 40, bottom = 50, width = 800, height = 420;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  double lo = values.empty() ? 0 : *std::min_element(values.begin(), values.end());
  double hi = values.empty() ? 1 : *std::max_element(values.begin(), values.end());
  if (hi - lo < 1e-9) {
    lo -= 1;
    hi += 1;
  }
  const double n = static_cast<double>(std::max<std::size_t>(values.size(), 2) - 1);
  auto px = [&](std::size_t i) { return left + plot_w * static_cast<double>(i) / n; };
  auto py = [&](double v) { return top + plot_h * (1 - (v - lo) / (hi - lo)); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(left) << "\" y=\"22\" font-size=\"14\">" << escape(title) << "</text>\n";
  os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(plot_w)
     << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"#888\"/>\n";
  const double step = tick_step(hi - lo, 6);
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9; v += step) {
    os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(v) + 4)
       << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }
  os << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(height - 14)
     << "\" text-anchor=\"middle\">run</text>\n";

  for (std::size_t i = 0; i < values.size(); ++i) {
    os << "<circle cx=\"" << num(px(i)) << "\" cy=\"" << num(py(values[i]))
       << "\" r=\"2.5\" fill=\"#4e79a7\"/>\n";
  }
  if (!values.empty() && window > 0) {
    os << "<polyline fill=\"none\" stroke=\"#e15759\" stroke-width=\"2\" points=\"";
    double sum = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      sum += values[i];
      if (i >= static_cast<std::size_t>(window)) sum -= values[i - static_cast<std::size_t>(window)];
      double count = static_cast<double>(std::min<std::size_t>(i + 1, static_cast<std::size_t>(window)));
      os << num(px(i)) << ',' << num(py(sum / count)) << ' ';
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace uavsched
