#include "lanlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lanlab/rng.hpp"

namespace lanlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

StateSpace StateSpace::unconstrained(int dim) {
  StateSpace space;
  space.lower = Eigen::VectorXd::Constant(dim, -kInf);
  space.upper = Eigen::VectorXd::Constant(dim, kInf);
  space.clamp.assign(static_cast<size_t>(dim), false);
  return space;
}

bool StateSpace::contains(const Eigen::VectorXd& state, double tol) const {
  if (state.size() != lower.size()) return false;
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    if (state[i] < lower[i] - tol || state[i] > upper[i] + tol) return false;
  }
  return true;
}

Eigen::VectorXd FullState::stacked() const {
  Eigen::VectorXd v(x.size() + y.size() + z.size());
  v << x, y, z;
  return v;
}

FullState FullState::from_stacked(const Eigen::VectorXd& v, int n, int l) {
  FullState s;
  s.x = v.segment(0, n);
  s.y = v.segment(n, l);
  s.z = v.segment(n + l, n);
  return s;
}

Eigen::VectorXd drift(const DiffusionModel& model, const SignalModel& signal,
                      const ParamPoint& p, double t, const FullState& s) {
  if (!model.state_space.contains(s.stacked(), 1e-9))
    throw std::runtime_error("drift: state outside the declared state space");
  const Eigen::VectorXd input = eval_signal(signal, p, t) + model.b(s.z);
  Eigen::VectorXd out(model.dim_total());
  out.segment(0, model.dim_n) = model.f(s.x, s.y) + input;
  if (model.dim_l > 0) out.segment(model.dim_n, model.dim_l) = model.g(s.x, s.y);
  out.segment(model.dim_n + model.dim_l, model.dim_n) = input;
  return out;
}

Eigen::MatrixXd diffusion(const DiffusionModel& model, const FullState& s) {
  const Eigen::MatrixXd sig = model.sigma(s.z);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(model.dim_total(), model.dim_m);
  out.topRows(model.dim_n) = sig;
  out.bottomRows(model.dim_n) = sig;
  return out;
}

std::array<double, 6> hh_rates(double x) {
  // alpha_1 = (0.1 - 0.01 x)/(e^{1-0.1x} - 1) and
  // alpha_2 = (2.5 - 0.1 x)/(e^{2.5-0.1x} - 1) share the shape c*u/(e^u - 1),
  // which expm1 evaluates stably through the removable singularity at u = 0.
  auto u_over_expm1 = [](double u) { return u == 0.0 ? 1.0 : u / std::expm1(u); };
  const double a1 = 0.1 * u_over_expm1(1.0 - 0.1 * x);
  const double b1 = 0.125 * std::exp(-x / 80.0);
  const double a2 = u_over_expm1(2.5 - 0.1 * x);
  const double b2 = 4.0 * std::exp(-x / 18.0);
  const double a3 = 0.07 * std::exp(-x / 20.0);
  const double b3 = 1.0 / (std::exp(3.0 - 0.1 * x) + 1.0);
  return {a1, b1, a2, b2, a3, b3};
}

EllipticityReport check_ellipticity(const DiffusionModel& model,
                                    const std::vector<Eigen::VectorXd>& sample_states) {
  if (sample_states.empty())
    throw std::invalid_argument("check_ellipticity: empty state sample");

  EllipticityReport report;
  report.sigma0_hat = kInf;
  report.sigma_inf_hat = 0.0;
  double first_min = 0.0, first_max = 0.0, last_min = 0.0, last_max = 0.0;

  for (size_t i = 0; i < sample_states.size(); ++i) {
    const Eigen::VectorXd& z = sample_states[i];
    const Eigen::MatrixXd sig = model.sigma(z);
    const Eigen::MatrixXd gram = sig * sig.transpose();
    if (!gram.isApprox(gram.transpose(), 1e-12))
      throw std::runtime_error("check_ellipticity: sigma sigma^T is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (lo < -1e-12 * std::max(1.0, hi))
      throw std::runtime_error("check_ellipticity: sigma sigma^T has a negative eigenvalue");
    report.sigma0_hat = std::min(report.sigma0_hat, lo);
    report.sigma_inf_hat = std::max(report.sigma_inf_hat, hi);
    if (i == 0) { first_min = lo; first_max = hi; }
    last_min = lo;
    last_max = hi;
  }

  // Spot-check x^T (sigma sigma^T)^{-1} x within [sigma_inf^{-1}|x|^2,
  // sigma_0^{-1}|x|^2] on random directions at a few sampled states.
  report.quadratic_bounds_ok = true;
  const int n = model.dim_n;
  for (int trial = 0; trial < 32 && report.quadratic_bounds_ok; ++trial) {
    const Eigen::VectorXd& z = sample_states[trial % sample_states.size()];
    Eigen::VectorXd dir(n);
    for (int i = 0; i < n; ++i)
      dir[i] = gaussian_at(0xE11127u, static_cast<uint64_t>(trial), static_cast<uint32_t>(i));
    const Eigen::MatrixXd gram = model.sigma(z) * model.sigma(z).transpose();
    const double quad = dir.dot(gram.llt().solve(dir));
    const double norm2 = dir.squaredNorm();
    const double lo_bound = norm2 / report.sigma_inf_hat;
    const double hi_bound = norm2 / report.sigma0_hat;
    if (quad < lo_bound * (1 - 1e-9) || quad > hi_bound * (1 + 1e-9))
      report.quadratic_bounds_ok = false;
  }

  // Heuristic uniformity flag: if the extremes at the first and last sampled
  // state differ grossly, the bounds are sample-range artifacts.
  const double drift_ratio = std::max({first_max, last_max, 1e-300}) /
                             std::max(std::min(first_max, last_max), 1e-300);
  report.bounds_look_uniform = drift_ratio < 10.0 && first_min > 0 && last_min > 0;
  return report;
}

// ---------------------------------------------------------------- presets

DiffusionModel make_hodgkin_huxley(double beta, double sigma) {
  DiffusionModel model;
  model.dim_n = 1;
  model.dim_l = 3;
  model.dim_m = 1;
  model.f = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const double v = x[0];
    Eigen::VectorXd out(1);
    out[0] = -36.0 * std::pow(y[0], 4) * (v + 12.0) -
             120.0 * std::pow(y[1], 3) * y[2] * (v - 120.0) - 0.3 * (v - 10.6);
    return out;
  };
  model.g = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const auto r = hh_rates(x[0]);
    Eigen::VectorXd out(3);
    out[0] = r[0] * (1.0 - y[0]) - r[1] * y[0];
    out[1] = r[2] * (1.0 - y[1]) - r[3] * y[1];
    out[2] = r[4] * (1.0 - y[2]) - r[5] * y[2];
    return out;
  };
  model.b = [beta](const Eigen::VectorXd& z) -> Eigen::VectorXd { return -beta * z; };
  Eigen::MatrixXd sig = Eigen::MatrixXd::Constant(1, 1, sigma);
  model.sigma = [sig](const Eigen::VectorXd&) { return sig; };
  model.sigma_constant = true;

  // State space R x [0,1]^3 x R; the gating box is projectable because the
  // exact dynamics stay inside it and only discretization can overshoot.
  model.state_space = StateSpace::unconstrained(5);
  for (int i = 1; i <= 3; ++i) {
    model.state_space.lower[i] = 0.0;
    model.state_space.upper[i] = 1.0;
    model.state_space.clamp[static_cast<size_t>(i)] = true;
  }
  return model;
}

FullState hh_resting_state(double x, double z) {
  const auto r = hh_rates(x);
  FullState s;
  s.x = Eigen::VectorXd::Constant(1, x);
  s.y.resize(3);
  s.y << r[0] / (r[0] + r[1]), r[2] / (r[2] + r[3]), r[4] / (r[4] + r[5]);
  s.z = Eigen::VectorXd::Constant(1, z);
  return s;
}

DiffusionModel make_rotor_chain(const RotorChainConfig& config) {
  for (int i : config.driven)
    if (i != 1 && i != 3)
      throw std::invalid_argument("make_rotor_chain: only the outer rotors 1 and 3 can be driven");
  if (config.driven.empty() || config.driven.size() > 2)
    throw std::invalid_argument("make_rotor_chain: driven set must be {1}, {3}, or {1,3}");

  const bool drive1 = std::find(config.driven.begin(), config.driven.end(), 1) != config.driven.end();
  const bool drive3 = std::find(config.driven.begin(), config.driven.end(), 3) != config.driven.end();
  const int n = (drive1 ? 1 : 0) + (drive3 ? 1 : 0);
  const int l = 6 - n;

  DiffusionModel model;
  model.dim_n = n;
  model.dim_l = l;
  model.dim_m = n;
  const auto w = config.interaction;
  const auto u = config.pinning;
  const auto delta = config.delta;

  // State layout: x = driven momenta (ascending rotor index),
  // y = (q1, q2, q3, undriven momenta ascending). Helpers below unpack it.
  auto momenta = [drive1, drive3](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    Eigen::Vector3d p;
    int xi = 0, yi = 3;
    p[0] = drive1 ? x[xi++] : y[yi++];
    p[1] = y[yi++];
    p[2] = drive3 ? x[xi] : y[yi];
    return p;
  };

  model.f = [w, u, delta, drive1, drive3, momenta](const Eigen::VectorXd& x,
                                                   const Eigen::VectorXd& y) {
    const Eigen::Vector3d q(y[0], y[1], y[2]);
    const Eigen::Vector3d p = momenta(x, y);
    Eigen::VectorXd out(x.size());
    int xi = 0;
    if (drive1) out[xi++] = w(q[1] - q[0]) - u(q[0]) - delta[0] * p[0];
    if (drive3) out[xi] = w(q[1] - q[2]) - u(q[2]) - delta[2] * p[2];
    return out;
  };
  model.g = [w, u, drive1, drive3, momenta](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::Vector3d q(y[0], y[1], y[2]);
    const Eigen::Vector3d p = momenta(x, y);
    Eigen::VectorXd out(y.size());
    out[0] = p[0];
    out[1] = p[1];
    out[2] = p[2];
    int yi = 3;
    if (!drive1) out[yi++] = w(q[1] - q[0]) - u(q[0]);
    out[yi++] = -(w(q[1] - q[0]) + w(q[1] - q[2])) - u(q[1]);
    if (!drive3) out[yi] = w(q[1] - q[2]) - u(q[2]);
    return out;
  };
  const double beta = config.beta;
  model.b = [beta](const Eigen::VectorXd& z) -> Eigen::VectorXd { return -beta * z; };

  Eigen::MatrixXd sig = Eigen::MatrixXd::Zero(n, n);
  int row = 0;
  if (drive1) { sig(row, row) = std::sqrt(2.0 * delta[0] * config.tau[0]); ++row; }
  if (drive3) sig(row, row) = std::sqrt(2.0 * delta[2] * config.tau[2]);
  model.sigma = [sig](const Eigen::VectorXd&) { return sig; };
  model.sigma_constant = true;

  model.state_space = StateSpace::unconstrained(model.dim_total());
  return model;
}

DiffusionModel make_ou_external(double beta, double sigma, int dim) {
  DiffusionModel model;
  model.dim_n = dim;
  model.dim_l = 0;
  model.dim_m = dim;
  model.f = [dim](const Eigen::VectorXd&, const Eigen::VectorXd&) {
    return Eigen::VectorXd::Zero(dim);
  };
  model.g = [](const Eigen::VectorXd&, const Eigen::VectorXd&) { return Eigen::VectorXd(); };
  model.b = [beta](const Eigen::VectorXd& z) -> Eigen::VectorXd { return -beta * z; };
  Eigen::MatrixXd sig = sigma * Eigen::MatrixXd::Identity(dim, dim);
  model.sigma = [sig](const Eigen::VectorXd&) { return sig; };
  model.sigma_constant = true;
  model.state_space = StateSpace::unconstrained(model.dim_total());
  return model;
}

DiffusionModel make_preset(const std::string& name) {
  if (name == "hodgkin-huxley") return make_hodgkin_huxley();
  if (name == "rotor-chain") return make_rotor_chain();
  if (name == "ou-external") return make_ou_external();
  throw std::invalid_argument("unknown model preset: " + name);
}

}  // namespace lanlab
