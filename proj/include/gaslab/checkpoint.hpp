#pragma once

#include <string>

#include "gaslab/bgk.hpp"

namespace gaslab {

/// Binary checkpoint layout (little-endian):
///   magic "GKCK", u32 version = 1,
///   u64 n_x, n_v1, n_v2,
///   f64 v_max, scale, time, kn, f0,
///   u64 step_count,
///   f64 G[n_v1*n_v2*n_x], f64 H[...]   (row-major, x fastest)
void save_checkpoint(const std::string& path, const BgkSolver& solver);

/// Restores grid scale/time/step and the (G,H) arrays into a solver built
/// from the given config; kn/f0/dims must match the config (error otherwise).
void load_checkpoint(const std::string& path, BgkSolver& solver);

}  // namespace gaslab
