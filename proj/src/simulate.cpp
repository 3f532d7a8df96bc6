#include "lanlab/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "lanlab/rng.hpp"

namespace lanlab {

namespace {

int step_count(double horizon, double step) {
  if (horizon < 0.0) throw std::invalid_argument("simulate: horizon must be >= 0");
  if (step <= 0.0) throw std::invalid_argument("simulate: step must be positive");
  return static_cast<int>(std::llround(horizon / step));
}

}  // namespace

Trajectory simulate_full(const DiffusionModel& model, const SignalModel& signal,
                         const ParamPoint& p, const FullState& start, double horizon,
                         double step, uint64_t seed) {
  const int n = model.dim_n, l = model.dim_l, m = model.dim_m;
  if (start.x.size() != n || start.y.size() != l || start.z.size() != n)
    throw std::invalid_argument("simulate_full: start state has wrong block sizes");
  if (!model.state_space.contains(start.stacked()))
    throw std::invalid_argument("simulate_full: start state outside the state space");

  const int K = step_count(horizon, step);
  Trajectory traj;
  traj.step = step;
  traj.seed = seed;
  traj.labels = block_labels(n, l);
  traj.values.resize(K + 1, model.dim_total());
  traj.increments.resize(K, n);

  Eigen::VectorXd x = start.x, y = start.y, z = start.z;
  traj.values.row(0) << x.transpose(), y.transpose(), z.transpose();

  Eigen::VectorXd dw(m);
  double clamp_budget = 1e-3;
  const bool cache_sigma = model.sigma_constant;
  Eigen::MatrixXd sigma_cached;
  if (cache_sigma) sigma_cached = model.sigma(z);

  for (int k = 0; k < K; ++k) {
    const double t = k * step;
    const Eigen::VectorXd input = (eval_signal(signal, p, t) + model.b(z)) * step;
    const Eigen::VectorXd fdt = model.f(x, y) * step;

    for (int c = 0; c < m; ++c)
      dw[c] = gaussian_at(seed, static_cast<uint64_t>(k), static_cast<uint32_t>(c)) *
              std::sqrt(step);
    const Eigen::VectorXd noise = (cache_sigma ? sigma_cached : model.sigma(z)) * dw;

    const Eigen::VectorXd gdt = l > 0 ? Eigen::VectorXd(model.g(x, y) * step) : Eigen::VectorXd();

    const Eigen::VectorXd z_prev = z;
    x += fdt + input + noise;
    if (l > 0) y += gdt;
    z += input + noise;

    // Record the increment exactly as drift removal will recover it:
    // dm_k = (Z_{k+1} - Z_k) - [S + b] h, evaluated in this operation order.
    traj.increments.row(k) = ((z - z_prev) - input).transpose();

    // Project clamped coordinates (gating variables) back into their box and
    // abort if either the projections accumulate or a hard bound is crossed.
    for (int i = 0; i < l; ++i) {
      const int idx = n + i;
      if (!model.state_space.clamp[static_cast<size_t>(idx)]) continue;
      const double lo = model.state_space.lower[idx], hi = model.state_space.upper[idx];
      if (y[i] < lo) { clamp_budget -= (lo - y[i]); y[i] = lo; }
      if (y[i] > hi) { clamp_budget -= (y[i] - hi); y[i] = hi; }
    }
    if (clamp_budget < 0.0)
      throw EscapeError("simulate_full: cumulative gating clamp exceeded 1e-3", t + step);

    traj.values.row(k + 1) << x.transpose(), y.transpose(), z.transpose();
    if (!traj.values.row(k + 1).allFinite() ||
        !model.state_space.contains(traj.values.row(k + 1).transpose(), 1e-12))
      throw EscapeError("simulate_full: path left the state space", t + step);
  }
  return traj;
}

Trajectory simulate_external(const DiffusionModel& model, const SignalModel& signal,
                             const ParamPoint& p, const Eigen::VectorXd& z0, double horizon,
                             double step, uint64_t seed) {
  const int n = model.dim_n, m = model.dim_m;
  if (z0.size() != n) throw std::invalid_argument("simulate_external: z0 has wrong dimension");

  const int K = step_count(horizon, step);
  Trajectory traj;
  traj.step = step;
  traj.seed = seed;
  for (int i = 1; i <= n; ++i) traj.labels.push_back("z" + std::to_string(i));
  traj.values.resize(K + 1, n);
  traj.increments.resize(K, n);

  Eigen::VectorXd z = z0;
  traj.values.row(0) = z.transpose();

  Eigen::VectorXd dw(m);
  const bool cache_sigma = model.sigma_constant;
  Eigen::MatrixXd sigma_cached;
  if (cache_sigma) sigma_cached = model.sigma(z);

  for (int k = 0; k < K; ++k) {
    const double t = k * step;
    const Eigen::VectorXd input = (eval_signal(signal, p, t) + model.b(z)) * step;
    for (int c = 0; c < m; ++c)
      dw[c] = gaussian_at(seed, static_cast<uint64_t>(k), static_cast<uint32_t>(c)) *
              std::sqrt(step);
    const Eigen::VectorXd noise = (cache_sigma ? sigma_cached : model.sigma(z)) * dw;

    const Eigen::VectorXd z_prev = z;
    z += input + noise;
    traj.increments.row(k) = ((z - z_prev) - input).transpose();
    traj.values.row(k + 1) = z.transpose();
    if (!z.allFinite())
      throw EscapeError("simulate_external: path diverged", t + step);
  }
  return traj;
}

namespace {

int period_in_steps(const Trajectory& traj, const ParamPoint& p, bool* warned) {
  if (traj.step <= 0.0) throw std::invalid_argument("grid extraction: trajectory has no step");
  const double ratio = p.period / traj.step;
  const int rounded = static_cast<int>(std::llround(ratio));
  if (warned) *warned = std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio));
  if (rounded < 1) throw std::invalid_argument("grid extraction: period below one step");
  return rounded;
}

}  // namespace

std::vector<Eigen::VectorXd> grid_chain(const Trajectory& traj, const ParamPoint& p,
                                        bool* warned) {
  const int stride = period_in_steps(traj, p, warned);
  if (traj.steps() < stride)
    throw std::invalid_argument("grid_chain: horizon shorter than one period");
  const Eigen::MatrixXd z = traj.z_values();
  std::vector<Eigen::VectorXd> chain;
  for (int k = 0; k * stride <= traj.steps(); ++k)
    chain.push_back(z.row(k * stride).transpose());
  return chain;
}

std::vector<Trajectory> path_segments(const Trajectory& traj, const ParamPoint& p,
                                      bool* warned) {
  const int stride = period_in_steps(traj, p, warned);
  if (traj.steps() < stride)
    throw std::invalid_argument("path_segments: horizon shorter than one period");
  const Eigen::MatrixXd z = traj.z_values();
  const auto [z_off, z_cnt] = traj.block("z");
  const int n = z_cnt > 0 ? z_cnt : static_cast<int>(z.cols());

  std::vector<Trajectory> segments;
  for (int k = 0; (k + 1) * stride <= traj.steps(); ++k) {
    Trajectory seg;
    seg.step = traj.step;
    seg.seed = traj.seed;
    for (int i = 1; i <= n; ++i) seg.labels.push_back("z" + std::to_string(i));
    seg.values = z.middleRows(k * stride, stride + 1);
    segments.push_back(std::move(seg));
  }
  return segments;
}

double chain_autocorrelation(const std::vector<Eigen::VectorXd>& chain) {
  if (chain.size() < 3) throw std::invalid_argument("chain_autocorrelation: chain too short");
  const int len = static_cast<int>(chain.size());
  const int dim = static_cast<int>(chain.front().size());
  double acc = 0.0;
  for (int c = 0; c < dim; ++c) {
    double mean = 0.0;
    for (const auto& v : chain) mean += v[c];
    mean /= len;
    double num = 0.0, den = 0.0;
    for (int k = 0; k < len; ++k) {
      const double d = chain[static_cast<size_t>(k)][c] - mean;
      den += d * d;
      if (k + 1 < len) num += d * (chain[static_cast<size_t>(k + 1)][c] - mean);
    }
    acc += den > 0 ? num / den : 0.0;
  }
  return acc / dim;
}

}  // namespace lanlab
