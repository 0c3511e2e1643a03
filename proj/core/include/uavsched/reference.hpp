#pragma once

// The 12-task illustration instance: six work positions a..f, recharge
// stations R1 and R2, and three UAVs (UAV1 and UAV2 at R1, UAV3 at R2).

#include <vector>

#include "uavsched/model.hpp"

namespace uavsched::reference {

TrajectoryMap map();
std::vector<RechargeStation> stations(const TrajectoryMap& map);
std::vector<Uav> fleet(const TrajectoryMap& map);
std::vector<Task> tasks(const TrajectoryMap& map);

ProblemInstance instance();

}  // namespace uavsched::reference
