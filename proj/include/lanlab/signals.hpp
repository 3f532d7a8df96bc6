#pragma once

// Parametric 1-periodic input signals.
//
// A signal model bundles three analytic evaluators for a family s -> S_theta(s)
// of 1-periodic functions: the value, its gradient in the shape parameter
// theta, and its derivative in s. The driving input of the SDE is the
// rescaled signal S_theta(t / T), where T is the period parameter; the
// combined parameter (theta, T) is a ParamPoint.

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace lanlab {

/// Parameter of the statistical experiment: shape theta in R^D and period T.
struct ParamPoint {
  Eigen::VectorXd theta;
  double period = 1.0;

  int dim() const { return static_cast<int>(theta.size()); }
};

/// Basis description of a signal that is linear in theta:
///   S_theta(s) = sum_j theta_j * (sin(2 pi k_j s) g_j + cos(2 pi k_j s) h_j).
/// Kept alongside the generic evaluators so that estimation code can solve
/// the theta-step in closed form.
struct LinearFourierBasis {
  struct Term {
    int harmonic = 1;        // k_j >= 1
    Eigen::VectorXd g_col;   // sine coefficient column, length N
    Eigen::VectorXd h_col;   // cosine coefficient column, length N
  };
  int dim_n = 1;
  std::vector<Term> terms;   // D = terms.size()

  int dim_d() const { return static_cast<int>(terms.size()); }
  /// Basis function phi_j evaluated at phase s (1-periodic).
  Eigen::VectorXd phi(int j, double s) const;
};

/// Analytic evaluators of a parametric 1-periodic signal family.
struct SignalModel {
  int dim_n = 1;
  /// S_theta(s), 1-periodic in s.
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> eval;
  /// D_theta S_theta(s), an N x D matrix.
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&, double)> grad_theta;
  /// S'_theta(s), the derivative in s.
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> time_deriv;
  /// Set when the family is linear in theta (enables closed-form estimation).
  std::shared_ptr<const LinearFourierBasis> linear_basis;
};

/// Finite Fourier family S_theta(s) = sum_k sin(2 k pi s) G_k(theta)
///                                  + cos(2 k pi s) H_k(theta), k = 1..d.
/// The jacobians of the coefficient maps supply the theta-gradient.
struct FourierSignal {
  struct Harmonic {
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> G, H;          // Theta -> R^N
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> G_jac, H_jac;  // Theta -> R^{N x D}
  };
  int dim_n = 1;
  std::vector<Harmonic> harmonics;  // index k-1 holds harmonic k
};

/// Wrap a Fourier family into the generic evaluator interface.
SignalModel to_signal_model(const FourierSignal& fs);

/// Signal linear in theta, built from explicit basis terms. The returned
/// model carries its LinearFourierBasis.
SignalModel linear_fourier_signal(LinearFourierBasis basis);

/// The identically-zero signal in R^N (useful for signal-free simulations).
SignalModel zero_signal(int dim_n);

/// S_{(theta,T)}(t) = S_theta(t / T); T-periodic in t.
Eigen::VectorXd eval_signal(const SignalModel& signal, const ParamPoint& p, double t);

/// Derivative matrix of (theta, T) -> S_{(theta,T)}(t), N x (D+1):
/// columns 1..D are D_theta S_theta(t/T), column D+1 is -t T^{-2} S'_theta(t/T).
Eigen::MatrixXd eval_sdot(const SignalModel& signal, const ParamPoint& p, double t);

// ---------------------------------------------------------------------------
// Numeric checkers. These probe regularity conditions on a grid; they are
// diagnostics, not proofs.
// ---------------------------------------------------------------------------

/// Outcome of the L2-differentiability probe: for a shrinking sequence of
/// parameter displacements d, the quadrature value of
///   integral_0^horizon |S_{p+d} - S_p - Sdot_p d|^2 ds / |d|^2
/// must fall below tol at the smallest displacement.
struct L2DiffReport {
  std::vector<double> displacement_norms;
  std::vector<double> ratios;
  double tol = 0.0;
  bool pass = false;
};

L2DiffReport check_l2_differentiability(
    const SignalModel& signal, const ParamPoint& p, double horizon, double tol,
    const std::vector<double>& displacement_norms = {1e-2, 3e-3, 1e-3, 3e-4});

/// Smallest eigenvalue of the L2([0,1]) Gram matrix of
/// {d/dtheta_1 S, ..., d/dtheta_D S, S'}; the functions are numerically
/// linearly independent iff it clears a scale-free tolerance.
double check_linear_independence(const SignalModel& signal,
                                 const Eigen::VectorXd& theta, int quad_points);

/// Least-squares fit of the local Hoelder behaviour of the theta-gradient in
/// the period:  log integral_{t0}^{t} |D_theta S_{(theta,T+dT)} -
/// D_theta S_{(theta,T)}|^2 ds ~ log C + beta log t + alpha log|dT|.
/// Returns (alpha_hat, beta_hat); all-zero integrals report exact
/// T-invariance via the flag.
struct HolderEstimate {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  bool t_invariant = false;
};

HolderEstimate estimate_holder_exponents(const SignalModel& signal,
                                         const Eigen::VectorXd& theta, double T,
                                         const std::vector<double>& t_grid,
                                         const std::vector<double>& dT_grid);

/// Composite-Simpson quadrature of a scalar function on [a,b]; `points` is
/// rounded up to an even subinterval count. Shared by the signal checkers.
double simpson(const std::function<double(double)>& f, double a, double b,
               int points = 4096);

}  // namespace lanlab
