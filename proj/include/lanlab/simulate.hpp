#pragma once

// Fixed-step strong simulation of the full system and of the external
// variable alone, plus grid-chain / path-segment extraction for ergodicity
// diagnostics.
//
// Scheme: Euler-Maruyama with a fixed step. At every step the SAME block of
// Gaussian increments sigma(Z_k) dW_k is added to the X-update and to the
// Z-update; Y is updated by drift only. Increments come from the
// counter-based generator keyed by (seed, step index, component), so a
// trajectory is a pure function of its arguments.

#include <vector>

#include "lanlab/models.hpp"
#include "lanlab/signals.hpp"
#include "lanlab/trajectory.hpp"

namespace lanlab {

/// Thrown when a path leaves the declared state space (e.g. a gating
/// variable escapes [0,1] beyond the clamp tolerance).
struct EscapeError : std::runtime_error {
  double time;
  explicit EscapeError(const std::string& what, double t)
      : std::runtime_error(what), time(t) {}
};

/// Euler-Maruyama path of the full (X, Y, Z) system.
///
/// Clamped coordinates (HH gating variables) are projected back into their
/// box after each step; the simulation aborts with EscapeError if the
/// accumulated projection distance exceeds 1e-3, or if any non-clamped
/// coordinate leaves its box.
Trajectory simulate_full(const DiffusionModel& model, const SignalModel& signal,
                         const ParamPoint& p, const FullState& start, double horizon,
                         double step, uint64_t seed);

/// Euler-Maruyama path of the external variable alone:
/// dZ = [S_{(theta,T)}(t) + b(Z)] dt + sigma(Z) dW.
Trajectory simulate_external(const DiffusionModel& model, const SignalModel& signal,
                             const ParamPoint& p, const Eigen::VectorXd& z0, double horizon,
                             double step, uint64_t seed);

/// Z sampled at times 0, T, 2T, ...; the Markov chain whose recurrence
/// drives all ergodic averages. If T is not an integer multiple of the step,
/// the nearest grid node is used and *warned is set.
std::vector<Eigen::VectorXd> grid_chain(const Trajectory& traj, const ParamPoint& p,
                                        bool* warned = nullptr);

/// Restrictions of the Z-path to the windows [(k-1)T, kT]; consecutive
/// segments share their endpoints.
std::vector<Trajectory> path_segments(const Trajectory& traj, const ParamPoint& p,
                                      bool* warned = nullptr);

/// Lag-1 autocorrelation of a chain of vectors, averaged over components
/// (mixing diagnostic for the grid chain).
double chain_autocorrelation(const std::vector<Eigen::VectorXd>& chain);

}  // namespace lanlab
