#pragma once

// Vector charts: schedule Gantt and makespan-per-run overview.

#include <span>
#include <string>

#include "uavsched/model.hpp"
#include "uavsched/schedule.hpp"

namespace uavsched {

// One lane per UAV, x-axis in seconds, actions coloured by kind with a legend.
std::string gantt_svg(const Schedule& schedule, const ProblemInstance& instance);

// Raw values as points against run index plus a trailing simple moving
// average over `window` runs.
std::string run_plot_svg(std::span<const double> values, int window, const std::string& title);

}  // namespace uavsched
