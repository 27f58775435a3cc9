#include "gaussent/dynamics.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace gaussent {

namespace {

using Matrix10 = Eigen::Matrix<double, 10, 10>;
using Vector10 = Eigen::Matrix<double, 10, 1>;

// (row, col) of the k-th symmetric basis element, row-major upper triangle
constexpr std::array<std::pair<int, int>, 10> kUpper = {{
    {0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}};

Matrix4 basis(int k) {
  Matrix4 e = Matrix4::Zero();
  const auto [i, j] = kUpper[static_cast<std::size_t>(k)];
  e(i, j) = 1.0;
  e(j, i) = 1.0;
  return e;
}

}  // namespace

Propagator propagator(const EnvironmentSpec& env, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidArgument("propagator time must be finite and non-negative");
  }
  const double mw = env.mass() * env.omega();
  const double decay = std::exp(-env.lambda() * t);
  const double cs = std::cos(env.omega() * t);
  const double sn = std::sin(env.omega() * t);

  Matrix2 block;
  block << decay * cs, decay * sn / mw, -decay * mw * sn, decay * cs;
  Matrix4 m = Matrix4::Zero();
  m.topLeftCorner<2, 2>() = block;
  m.bottomRightCorner<2, 2>() = block;
  return Propagator(m, t);
}

Matrix4 covariance_rate(const EnvironmentSpec& env, const Matrix4& sigma) {
  const Matrix4 y = DriftMatrix(env).matrix();
  return y * sigma + sigma * y.transpose() + 2.0 * DiffusionMatrix(env).matrix();
}

double lyapunov_residual(const EnvironmentSpec& env, const Matrix4& sigma) {
  const Matrix4 y = DriftMatrix(env).matrix();
  const Matrix4 r = y * sigma + sigma * y.transpose() + 2.0 * DiffusionMatrix(env).matrix();
  return r.cwiseAbs().maxCoeff();
}

CovarianceMatrix steady_covariance(const EnvironmentSpec& env) {
  if (!(env.lambda() > 0.0)) {
    throw InvalidArgument("steady state requires lambda > 0");
  }
  const Matrix4 y = DriftMatrix(env).matrix();
  const Matrix4 d = DiffusionMatrix(env).matrix();

  // L(E_k) = Y E_k + E_k Y^T is symmetric; its upper triangle is column k.
  Matrix10 lhs;
  for (int k = 0; k < 10; ++k) {
    const Matrix4 e = basis(k);
    const Matrix4 image = y * e + e * y.transpose();
    for (int r = 0; r < 10; ++r) {
      const auto [i, j] = kUpper[static_cast<std::size_t>(r)];
      lhs(r, k) = image(i, j);
    }
  }
  Vector10 rhs;
  for (int r = 0; r < 10; ++r) {
    const auto [i, j] = kUpper[static_cast<std::size_t>(r)];
    rhs(r) = -2.0 * d(i, j);
  }

  const Eigen::PartialPivLU<Matrix10> lu(lhs);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-13)) {
    std::ostringstream os;
    os << "Lyapunov system is numerically singular (rcond = " << rcond << ")";
    throw NumericalError(os.str());
  }
  Vector10 x = lu.solve(rhs);
  // one step of iterative refinement
  x += lu.solve(rhs - lhs * x);

  std::array<double, 10> upper{};
  for (int k = 0; k < 10; ++k) upper[static_cast<std::size_t>(k)] = x(k);
  return CovarianceMatrix::from_upper(upper);
}

CovarianceMatrix steady_covariance_closed_form(const EnvironmentSpec& env) {
  if (!env.is_thermal()) {
    throw InvalidArgument("closed-form steady state requires a thermal environment");
  }
  const double m = env.mass();
  const double w = env.omega();
  const double l = env.lambda();
  const double c = env.thermal_c();
  const double d_xy = env.diffusion().xy;
  const double d_xpy = env.diffusion().xpy;
  const double l2w2 = l * l + w * w;

  const double s_xx = 0.5 * c / (m * w);
  const double s_pp = 0.5 * c * m * w;
  const double s_xy = (m * m * l2w2 * d_xy + m * l * d_xpy) / (m * m * l * l2w2);
  const double s_xpy = l * d_xpy / l2w2;
  const double s_pxpy = (m * m * w * w * l2w2 * d_xy - m * w * w * l * d_xpy) / (l * l2w2);

  // xx, xpx, xy, xpy, pxpx, ypx, pxpy, yy, ypy, pypy
  return CovarianceMatrix::from_upper({s_xx, 0.0, s_xy, s_xpy, s_pp, s_xpy, s_pxpy, s_xx, 0.0, s_pp});
}

Flow::Flow(const EnvironmentSpec& env) : env_(env), steady_(steady_covariance(env)) {}

CovarianceMatrix Flow::at(const CovarianceMatrix& initial, double t) const {
  if (t == 0.0) return initial;
  const Matrix4 m = propagator(env_, t).matrix();
  const Matrix4& inf = steady_.matrix();
  const Matrix4 s = m * (initial.matrix() - inf) * m.transpose() + inf;
  return CovarianceMatrix(0.5 * (s + s.transpose()));
}

CovarianceMatrix evolve(const CovarianceMatrix& initial, const EnvironmentSpec& env, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidArgument("evolution time must be finite and non-negative");
  }
  return Flow(env).at(initial, t);
}

Trajectory sample_trajectory(const CovarianceMatrix& initial, const EnvironmentSpec& env,
                             double t_max, int n_steps) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw InvalidArgument("t_max must be finite and positive");
  }
  if (n_steps < 2) throw InvalidArgument("n_steps must be >= 2");

  const Flow flow(env);
  Trajectory traj{{}, {}, env, initial};
  traj.times.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  for (int k = 0; k <= n_steps; ++k) {
    // last sample pinned to t_max exactly
    const double t = (k == n_steps) ? t_max : t_max * static_cast<double>(k) / n_steps;
    traj.times.push_back(t);
    traj.states.push_back(flow.at(initial, t));
  }
  return traj;
}

double ode_residual(const Trajectory& trajectory) {
  const auto& ts = trajectory.times;
  const auto& ss = trajectory.states;
  if (ts.size() < 3 || ss.size() != ts.size()) {
    throw InvalidArgument("ode_residual needs at least 3 samples");
  }
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < ts.size(); ++k) {
    const Matrix4 derivative = (ss[k + 1].matrix() - ss[k - 1].matrix()) / (ts[k + 1] - ts[k - 1]);
    const Matrix4 rhs = covariance_rate(trajectory.env, ss[k].matrix());
    worst = std::max(worst, (derivative - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace gaussent
