#pragma once

// Exact covariance-matrix flow:
//   d(sigma)/dt = Y sigma + sigma Y^T + 2D
//   sigma(t)    = M(t) [sigma(0) - sigma_inf] M(t)^T + sigma_inf,  M(t) = exp(Y t)
//   Y sigma_inf + sigma_inf Y^T = -2D

#include <vector>

#include "gaussent/core_types.hpp"

namespace gaussent {

/// M(t) = exp(Y t) for the damped-oscillator drift.
class Propagator {
 public:
  Propagator(const Matrix4& entries, double time) : entries_(entries), time_(time) {}

  const Matrix4& matrix() const noexcept { return entries_; }
  double time() const noexcept { return time_; }

 private:
  Matrix4 entries_;
  double time_;
};

/// Closed form: two identical blocks
/// e^{-lambda t} [[cos wt, sin(wt)/(m w)], [-m w sin wt, cos wt]]. Throws for t < 0.
Propagator propagator(const EnvironmentSpec& env, double t);

/// Steady state from the Lyapunov equation, solved as a 10x10 linear system
/// on the symmetric basis with partially pivoted LU. Throws NumericalError if
/// the system is numerically singular.
CovarianceMatrix steady_covariance(const EnvironmentSpec& env);

/// Steady state from the analytic entries (thermal environments only):
///   m w s_xx = s_pxpx / (m w) = C/2,  s_xpx = 0,
///   s_xy   = (m^2 (l^2+w^2) D_xy + m l D_xpy) / (m^2 l (l^2+w^2)),
///   s_xpy  = s_ypx = l D_xpy / (l^2+w^2),
///   s_pxpy = (m^2 w^2 (l^2+w^2) D_xy - m w^2 l D_xpy) / (l (l^2+w^2)).
CovarianceMatrix steady_covariance_closed_form(const EnvironmentSpec& env);

/// max |Y sigma + sigma Y^T + 2D|.
double lyapunov_residual(const EnvironmentSpec& env, const Matrix4& sigma);

/// Right-hand side Y sigma + sigma Y^T + 2D of the covariance equation.
Matrix4 covariance_rate(const EnvironmentSpec& env, const Matrix4& sigma);

/// Binds an environment to its steady state so repeated evaluations skip
/// the Lyapunov solve.
class Flow {
 public:
  explicit Flow(const EnvironmentSpec& env);

  const EnvironmentSpec& environment() const noexcept { return env_; }
  const CovarianceMatrix& steady() const noexcept { return steady_; }

  /// sigma(t) from sigma(0) = initial. t = 0 returns initial unchanged.
  CovarianceMatrix at(const CovarianceMatrix& initial, double t) const;

 private:
  EnvironmentSpec env_;
  CovarianceMatrix steady_;
};

CovarianceMatrix evolve(const CovarianceMatrix& initial, const EnvironmentSpec& env, double t);

struct Trajectory {
  std::vector<double> times;
  std::vector<CovarianceMatrix> states;
  EnvironmentSpec env;
  CovarianceMatrix initial;
};

/// n_steps + 1 uniformly spaced samples on [0, t_max], each evaluated in
/// closed form from t = 0.
Trajectory sample_trajectory(const CovarianceMatrix& initial, const EnvironmentSpec& env,
                             double t_max, int n_steps);

/// Largest max-norm deviation between the centered finite difference of the
/// sampled states and the covariance equation's right-hand side, over the
/// interior samples. Second order in the sample spacing.
double ode_residual(const Trajectory& trajectory);

}  // namespace gaussent
