#pragma once

// Discretely sampled paths on a uniform time grid.
//
// Row k of `values` is the state at time k * step. Column labels follow the
// block convention x1..xN, y1..yL, z1..zN (b1..bN for reconstructed Brownian
// paths); block boundaries are recovered from the label prefixes.
//
// Serialization: CSV with a "time,<labels...>" header, and a compact binary
// format for replication farms (magic "LANTRAJ1", little-endian f64 matrix).

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace lanlab {

struct Trajectory {
  double step = 0.0;
  uint64_t seed = 0;
  Eigen::MatrixXd values;            // (K+1) rows, one column per component
  std::vector<std::string> labels;   // column labels
  // Realized noise increments sigma(Z_k) dW_k of the Z-block, one row per
  // step, recorded so likelihood code can reproduce the simulator's noise
  // bitwise. Not serialized; empty for paths that were not simulated.
  Eigen::MatrixXd increments;

  int steps() const { return static_cast<int>(values.rows()) - 1; }
  double horizon() const { return steps() * step; }
  double time(int k) const { return k * step; }

  /// (offset, count) of the contiguous label block with the given prefix,
  /// e.g. block("z") on an (x,y,z) trajectory. count = 0 if absent.
  std::pair<int, int> block(const std::string& prefix) const;

  /// Columns of the Z-block (labels z*), or all columns when the trajectory
  /// has no block labels at all (plain paths).
  Eigen::MatrixXd z_values() const;
};

/// Standard labels for an (x, y, z) system with the given block sizes.
std::vector<std::string> block_labels(int n, int l);

void write_csv(const Trajectory& traj, const std::string& path);
Trajectory read_csv(const std::string& path);

void write_binary(const Trajectory& traj, const std::string& path);
Trajectory read_binary(const std::string& path);

}  // namespace lanlab
