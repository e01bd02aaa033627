#pragma once

// Static SVG charts written directly as text.

#include <string>

#include "rumorgame/dynamics.hpp"
#include "rumorgame/sweep.hpp"

namespace rumorgame::svg {

// p(t) and q(t) on a shared [0,1] axis.
std::string timeseries(const Trajectory& traj, const std::string& title);

// q against p on the unit square.
std::string phase(const Trajectory& traj, const std::string& title);

// One cell per (r1, r2) coloured by regime; failed cells are grey.
std::string regime_heatmap(const SweepGrid& grid, const std::string& title);

}  // namespace rumorgame::svg
