#pragma once

// Coefficient functions of the degenerate SDE system
//
//   dX_t = f(X_t, Y_t) dt + dZ_t
//   dY_t = g(X_t, Y_t) dt
//   dZ_t = [S_{(theta,T)}(t) + b(Z_t)] dt + sigma(Z_t) dW_t
//
// X (dimension N) receives the perturbed input directly, Y (dimension L) only
// through X, and Z (dimension N) is the autonomous noisy input itself. The
// stacked drift is B = (f + S + b, g, S + b) and the stacked diffusion matrix
// carries sigma(z) in both the X-rows and the Z-rows with zero Y-rows, so X
// and Z share the same Brownian increments.
//
// Presets: the stochastic Hodgkin-Huxley neuron, a chain of three coupled
// rotors with driven end(s), and a pure Ornstein-Uhlenbeck external variable.

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "lanlab/signals.hpp"

namespace lanlab {

/// Componentwise box description of the state space; +/-infinity marks an
/// unconstrained coordinate. `clamp` flags coordinates (gating variables)
/// that the simulator may project back into their box after a step.
struct StateSpace {
  Eigen::VectorXd lower, upper;  // length N + L + N
  std::vector<bool> clamp;       // same length; true = projectable

  static StateSpace unconstrained(int dim);
  bool contains(const Eigen::VectorXd& state, double tol = 0.0) const;
};

/// Full state (x, y, z) of the system.
struct FullState {
  Eigen::VectorXd x, y, z;

  Eigen::VectorXd stacked() const;
  static FullState from_stacked(const Eigen::VectorXd& v, int n, int l);
};

/// Coefficient functions and dimensions of the SDE system.
struct DiffusionModel {
  int dim_n = 1;  // adjustable/external dimension N
  int dim_l = 0;  // internal dimension L
  int dim_m = 1;  // Brownian dimension M >= N

  std::function<Eigen::VectorXd(const Eigen::VectorXd& x, const Eigen::VectorXd& y)> f;
  std::function<Eigen::VectorXd(const Eigen::VectorXd& x, const Eigen::VectorXd& y)> g;
  std::function<Eigen::VectorXd(const Eigen::VectorXd& z)> b;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& z)> sigma;  // N x M

  StateSpace state_space;
  bool sigma_constant = false;  // true lets callers cache sigma(z)

  int dim_total() const { return dim_n + dim_l + dim_n; }
};

/// Stacked drift B(t, state) = (f + S + b, g, S + b) of the full system.
Eigen::VectorXd drift(const DiffusionModel& model, const SignalModel& signal,
                      const ParamPoint& p, double t, const FullState& s);

/// Stacked diffusion matrix: rows 1..N and rows N+L+1..N+L+N are sigma(z),
/// the Y-rows are zero.
Eigen::MatrixXd diffusion(const DiffusionModel& model, const FullState& s);

/// Hodgkin-Huxley channel rates (alpha_1, beta_1, alpha_2, beta_2, alpha_3,
/// beta_3) at membrane potential x, with the removable singularities at
/// x = 10 (alpha_1 = 0.1) and x = 25 (alpha_2 = 1) evaluated exactly.
std::array<double, 6> hh_rates(double x);

/// Empirical ellipticity probe: extreme eigenvalues of sigma sigma^T over a
/// state sample, plus a random-direction verification of the two-sided
/// quadratic-form bound they imply.
struct EllipticityReport {
  double sigma0_hat = 0.0;    // min over samples of lambda_min
  double sigma_inf_hat = 0.0; // max over samples of lambda_max
  bool quadratic_bounds_ok = false;
  bool bounds_look_uniform = false;  // false when the extremes drift with |z|
};

EllipticityReport check_ellipticity(const DiffusionModel& model,
                                    const std::vector<Eigen::VectorXd>& sample_states);

// ---------------------------------------------------------------- presets

/// Stochastic Hodgkin-Huxley neuron: N = 1, L = 3, gating variables in
/// [0,1]^3, input reversion b(z) = -beta z, constant volatility.
DiffusionModel make_hodgkin_huxley(double beta = 1.0, double sigma = 1.0);

/// Resting state of the Hodgkin-Huxley system at membrane potential x
/// (gating variables at their equilibrium values alpha/(alpha+beta)).
FullState hh_resting_state(double x = 0.0, double z = 0.0);

struct RotorChainConfig {
  std::vector<int> driven = {1};        // subset of {1, 3}: rotors with input
  std::array<double, 3> delta = {0.5, 0.0, 0.5};  // dissipation, driven rotors
  std::array<double, 3> tau = {1.0, 1.0, 1.0};    // heat-bath temperatures
  double beta = 1.0;                    // input reversion b_i(z) = -beta z
  std::function<double(double)> interaction = [](double r) { return std::sin(r); };
  std::function<double(double)> pinning = [](double q) { return std::sin(q); };
};

/// Chain of three rotors coupled in a row; the driven outer rotors receive
/// the perturbed torque and a Langevin heat bath with volatility
/// sqrt(2 delta_i tau_i). X = driven momenta, Y = (angles, undriven momenta).
DiffusionModel make_rotor_chain(const RotorChainConfig& config = {});

/// External variable alone: N = M = dim, L = 0, b(z) = -beta z, constant
/// scalar volatility. With a Fourier signal this is the closed-form benchmark.
DiffusionModel make_ou_external(double beta = 1.0, double sigma = 1.0, int dim = 1);

/// Preset lookup by name: "hodgkin-huxley", "rotor-chain", "ou-external".
DiffusionModel make_preset(const std::string& name);

}  // namespace lanlab
