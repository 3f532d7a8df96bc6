#include "lanlab/signals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lanlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Eigen::VectorXd LinearFourierBasis::phi(int j, double s) const {
  const Term& term = terms.at(static_cast<size_t>(j));
  const double w = kTwoPi * term.harmonic * s;
  return std::sin(w) * term.g_col + std::cos(w) * term.h_col;
}

SignalModel to_signal_model(const FourierSignal& fs) {
  const int n = fs.dim_n;
  auto harmonics = std::make_shared<const std::vector<FourierSignal::Harmonic>>(fs.harmonics);

  SignalModel model;
  model.dim_n = n;
  model.eval = [harmonics, n](const Eigen::VectorXd& theta, double s) {
    Eigen::VectorXd value = Eigen::VectorXd::Zero(n);
    for (size_t i = 0; i < harmonics->size(); ++i) {
      const double w = kTwoPi * static_cast<double>(i + 1) * s;
      value += std::sin(w) * (*harmonics)[i].G(theta);
      value += std::cos(w) * (*harmonics)[i].H(theta);
    }
    return value;
  };
  model.grad_theta = [harmonics, n](const Eigen::VectorXd& theta, double s) {
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, theta.size());
    for (size_t i = 0; i < harmonics->size(); ++i) {
      const double w = kTwoPi * static_cast<double>(i + 1) * s;
      grad += std::sin(w) * (*harmonics)[i].G_jac(theta);
      grad += std::cos(w) * (*harmonics)[i].H_jac(theta);
    }
    return grad;
  };
  model.time_deriv = [harmonics, n](const Eigen::VectorXd& theta, double s) {
    Eigen::VectorXd deriv = Eigen::VectorXd::Zero(n);
    for (size_t i = 0; i < harmonics->size(); ++i) {
      const double k = static_cast<double>(i + 1);
      const double w = kTwoPi * k * s;
      deriv += kTwoPi * k * std::cos(w) * (*harmonics)[i].G(theta);
      deriv -= kTwoPi * k * std::sin(w) * (*harmonics)[i].H(theta);
    }
    return deriv;
  };
  return model;
}

SignalModel linear_fourier_signal(LinearFourierBasis basis) {
  if (basis.terms.empty()) throw std::invalid_argument("linear_fourier_signal: no basis terms");
  for (const auto& term : basis.terms) {
    if (term.harmonic < 1) throw std::invalid_argument("linear_fourier_signal: harmonic must be >= 1");
    if (term.g_col.size() != basis.dim_n || term.h_col.size() != basis.dim_n)
      throw std::invalid_argument("linear_fourier_signal: coefficient column has wrong length");
  }
  auto shared = std::make_shared<const LinearFourierBasis>(std::move(basis));
  const int n = shared->dim_n;
  const int d = shared->dim_d();

  SignalModel model;
  model.dim_n = n;
  model.linear_basis = shared;
  model.eval = [shared, n, d](const Eigen::VectorXd& theta, double s) {
    Eigen::VectorXd value = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < d; ++j) value += theta[j] * shared->phi(j, s);
    return value;
  };
  model.grad_theta = [shared, n, d](const Eigen::VectorXd&, double s) {
    Eigen::MatrixXd grad(n, d);
    for (int j = 0; j < d; ++j) grad.col(j) = shared->phi(j, s);
    return grad;
  };
  model.time_deriv = [shared, n, d](const Eigen::VectorXd& theta, double s) {
    Eigen::VectorXd deriv = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < d; ++j) {
      const auto& term = shared->terms[static_cast<size_t>(j)];
      const double w = kTwoPi * term.harmonic * s;
      deriv += theta[j] * kTwoPi * term.harmonic *
               (std::cos(w) * term.g_col - std::sin(w) * term.h_col);
    }
    return deriv;
  };
  return model;
}

SignalModel zero_signal(int dim_n) {
  SignalModel model;
  model.dim_n = dim_n;
  model.eval = [dim_n](const Eigen::VectorXd&, double) { return Eigen::VectorXd::Zero(dim_n); };
  model.grad_theta = [dim_n](const Eigen::VectorXd& theta, double) {
    return Eigen::MatrixXd::Zero(dim_n, theta.size());
  };
  model.time_deriv = [dim_n](const Eigen::VectorXd&, double) { return Eigen::VectorXd::Zero(dim_n); };
  return model;
}

Eigen::VectorXd eval_signal(const SignalModel& signal, const ParamPoint& p, double t) {
  if (p.period <= 0.0) throw std::invalid_argument("eval_signal: period must be positive");
  Eigen::VectorXd value = signal.eval(p.theta, t / p.period);
  if (!value.allFinite()) throw std::runtime_error("eval_signal: non-finite signal value");
  return value;
}

Eigen::MatrixXd eval_sdot(const SignalModel& signal, const ParamPoint& p, double t) {
  if (p.period <= 0.0) throw std::invalid_argument("eval_sdot: period must be positive");
  const double s = t / p.period;
  const int d = p.dim();
  Eigen::MatrixXd sdot(signal.dim_n, d + 1);
  sdot.leftCols(d) = signal.grad_theta(p.theta, s);
  sdot.col(d) = (-t / (p.period * p.period)) * signal.time_deriv(p.theta, s);
  return sdot;
}

double simpson(const std::function<double(double)>& f, double a, double b, int points) {
  int intervals = std::max(2, points);
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
  return sum * h / 3.0;
}

L2DiffReport check_l2_differentiability(const SignalModel& signal, const ParamPoint& p,
                                        double horizon, double tol,
                                        const std::vector<double>& displacement_norms) {
  if (horizon <= 0.0) throw std::invalid_argument("check_l2_differentiability: horizon must be positive");
  if (displacement_norms.empty())
    throw std::invalid_argument("check_l2_differentiability: empty displacement sequence");

  const int d = p.dim();
  // Displace all coordinates of (theta, T) equally; the probe only needs one
  // direction and the uniform one exercises every column of Sdot.
  Eigen::VectorXd direction = Eigen::VectorXd::Constant(d + 1, 1.0 / std::sqrt(d + 1.0));

  L2DiffReport report;
  report.tol = tol;
  report.displacement_norms = displacement_norms;
  const int points_per_unit = 4096;
  const int points = static_cast<int>(std::ceil(horizon * points_per_unit));

  for (double norm : displacement_norms) {
    if (norm <= 0.0) throw std::invalid_argument("check_l2_differentiability: displacement must be positive");
    ParamPoint shifted;
    shifted.theta = p.theta + norm * direction.head(d);
    shifted.period = p.period + norm * direction[d];
    if (shifted.period <= 0.0)
      throw std::invalid_argument("check_l2_differentiability: displacement drives period below zero");

    auto integrand = [&](double t) {
      const Eigen::VectorXd diff = eval_signal(signal, shifted, t) - eval_signal(signal, p, t) -
                                   eval_sdot(signal, p, t) * (norm * direction);
      return diff.squaredNorm();
    };
    const double integral = simpson(integrand, 0.0, horizon, points);
    if (!std::isfinite(integral))
      throw std::runtime_error("check_l2_differentiability: quadrature returned non-finite value");
    report.ratios.push_back(integral / (norm * norm));
  }
  report.pass = report.ratios.back() < tol;
  return report;
}

double check_linear_independence(const SignalModel& signal, const Eigen::VectorXd& theta,
                                 int quad_points) {
  const int d = static_cast<int>(theta.size());
  const int m = d + 1;  // gradient columns plus the time derivative
  if (quad_points < 2 * m)
    throw std::invalid_argument("check_linear_independence: need at least 2(D+1) quadrature points");

  // Gram matrix under the plain L2([0,1]) inner product, entry by entry via
  // Simpson quadrature of the pairwise products.
  auto column = [&](int i, double s) -> Eigen::VectorXd {
    if (i < d) return signal.grad_theta(theta, s).col(i);
    return signal.time_deriv(theta, s);
  };
  Eigen::MatrixXd gram(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double value = simpson(
          [&](double s) { return column(i, s).dot(column(j, s)); }, 0.0, 1.0, quad_points);
      gram(i, j) = value;
      gram(j, i) = value;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  return eig.eigenvalues().minCoeff();
}

HolderEstimate estimate_holder_exponents(const SignalModel& signal, const Eigen::VectorXd& theta,
                                         double T, const std::vector<double>& t_grid,
                                         const std::vector<double>& dT_grid) {
  if (t_grid.empty() || dT_grid.empty())
    throw std::invalid_argument("estimate_holder_exponents: empty grid");
  for (double dT : dT_grid)
    if (std::abs(dT) >= T / 2 || dT == 0.0)
      throw std::invalid_argument("estimate_holder_exponents: dT must be nonzero and within (-T/2, T/2)");

  const double t0 = 1.0;
  std::vector<Eigen::Vector3d> rows;   // (log t, log|dT|, log integral)
  bool all_zero = true;

  for (double t : t_grid) {
    for (double dT : dT_grid) {
      auto integrand = [&](double s) {
        const Eigen::MatrixXd diff = signal.grad_theta(theta, s / (T + dT)) -
                                     signal.grad_theta(theta, s / T);
        return diff.squaredNorm();
      };
      const int points = static_cast<int>(std::ceil((t - t0) * 4096 / T));
      const double integral = simpson(integrand, t0, t, std::max(points, 256));
      if (integral > 1e-300) all_zero = false;
      rows.push_back({std::log(t), std::log(std::abs(dT)),
                      integral > 1e-300 ? std::log(integral) : 0.0});
    }
  }

  HolderEstimate estimate;
  if (all_zero) {
    estimate.t_invariant = true;
    return estimate;
  }

  // Least squares for log I = c + beta log t + alpha log|dT|.
  const int m = static_cast<int>(rows.size());
  Eigen::MatrixXd A(m, 3);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = rows[static_cast<size_t>(i)][0];
    A(i, 2) = rows[static_cast<size_t>(i)][1];
    y[i] = rows[static_cast<size_t>(i)][2];
  }
  const Eigen::Vector3d coef = A.colPivHouseholderQr().solve(y);
  estimate.beta_hat = coef[1];
  estimate.alpha_hat = coef[2];
  return estimate;
}

}  // namespace lanlab
