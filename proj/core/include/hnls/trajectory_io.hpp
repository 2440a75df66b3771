#pragma once

#include <iosfwd>
#include <string>

#include "hnls/trajectory.hpp"

namespace hnls {

/// Binary snapshot layout: header u64 N, f64 L, u64 count; then per snapshot
/// f64 t followed by N interleaved re/im doubles. Little-endian host order.
void save_trajectory_binary(std::ostream& os, const Trajectory& traj);
void save_trajectory_binary(const std::string& path, const Trajectory& traj);

/// Reads the binary layout back; only times/states and the grid are restored.
Trajectory load_trajectory_binary(std::istream& is);
Trajectory load_trajectory_binary(const std::string& path);

/// Long-format CSV t,x,re,im; intended for small N.
void save_trajectory_csv(std::ostream& os, const Trajectory& traj);
void save_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace hnls
