#include "gaussent/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

namespace gaussent {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw InvalidArgument(std::string(name) + " must be finite");
  }
}

bool close_rel(double a, double b, double rel_tol) {
  return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

ValidationReport::Check inequality(std::string name, double lhs, double rhs, double scale) {
  constexpr double kTol = 1e-12;
  ValidationReport::Check check;
  check.name = std::move(name);
  check.margin = lhs - rhs;
  check.passed = check.margin >= -kTol * std::max(1.0, scale);
  return check;
}

}  // namespace

EnvironmentSpec EnvironmentSpec::create(double mass, double omega, double lambda, double thermal_c,
                                        const DiffusionCoefficients& d) {
  for (auto [value, name] : {std::pair{mass, "mass"}, {omega, "omega"}, {lambda, "lambda"},
                             {thermal_c, "thermal_c"}, {d.xx, "d_xx"}, {d.xpx, "d_xpx"},
                             {d.pxpx, "d_pxpx"}, {d.xy, "d_xy"}, {d.xpy, "d_xpy"},
                             {d.pxpy, "d_pxpy"}}) {
    require_finite(value, name);
  }
  if (mass <= 0.0) throw InvalidArgument("mass must be positive");
  if (omega <= 0.0) throw InvalidArgument("omega must be positive");
  if (lambda <= 0.0) throw InvalidArgument("lambda must be positive (no stable asymptotic state otherwise)");
  if (thermal_c < 1.0) throw InvalidArgument("thermal_c = coth(omega/2T) must be >= 1");

  EnvironmentSpec env;
  env.mass_ = mass;
  env.omega_ = omega;
  env.lambda_ = lambda;
  env.thermal_c_ = thermal_c;
  env.diffusion_ = d;
  return env;
}

bool EnvironmentSpec::is_thermal(double rel_tol) const noexcept {
  const double mw = mass_ * omega_;
  const double half = 0.5 * lambda_ * thermal_c_;
  return close_rel(mw * diffusion_.xx, half, rel_tol) &&
         close_rel(diffusion_.pxpx / mw, half, rel_tol) &&
         close_rel(diffusion_.xpx, 0.0, rel_tol) &&
         close_rel(mw * mw * diffusion_.xy, diffusion_.pxpy, rel_tol);
}

EnvironmentSpec thermal_environment(double lambda, double thermal_c, double d_xy, double d_xpy,
                                    double mass, double omega) {
  if (!(mass > 0.0) || !(omega > 0.0)) {
    throw InvalidArgument("mass and omega must be positive");
  }
  const double mw = mass * omega;
  const double half = 0.5 * lambda * thermal_c;
  DiffusionCoefficients d;
  d.xx = half / mw;
  d.xpx = 0.0;
  d.pxpx = half * mw;
  d.xy = d_xy;
  d.xpy = d_xpy;
  d.pxpy = mw * mw * d_xy;
  return EnvironmentSpec::create(mass, omega, lambda, thermal_c, d);
}

double thermal_c_from_temperature(double omega, double temperature) {
  if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw InvalidArgument("temperature must be finite and non-negative");
  }
  if (temperature == 0.0) return 1.0;
  return 1.0 / std::tanh(omega / (2.0 * temperature));
}

double temperature_from_thermal_c(double omega, double thermal_c) {
  if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");
  if (!(thermal_c >= 1.0)) throw InvalidArgument("thermal_c must be >= 1");
  if (thermal_c == 1.0) return 0.0;
  return omega / (2.0 * std::atanh(1.0 / thermal_c));
}

double asymmetry(const Matrix4& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

CovarianceMatrix::CovarianceMatrix(const Matrix4& entries) {
  if (!entries.allFinite()) {
    throw InvalidArgument("covariance matrix has non-finite entries");
  }
  const double residual = asymmetry(entries);
  if (residual > kSymmetryTolerance) {
    std::ostringstream os;
    os << "covariance matrix is not symmetric (max |M - M^T| = " << residual << ")";
    throw InvalidArgument(os.str());
  }
  entries_ = 0.5 * (entries + entries.transpose());
}

CovarianceMatrix CovarianceMatrix::from_upper(const std::array<double, 10>& u) {
  Matrix4 m;
  std::size_t k = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      m(i, j) = u[k];
      m(j, i) = u[k];
      ++k;
    }
  }
  return CovarianceMatrix(m);
}

CovarianceMatrix CovarianceMatrix::from_blocks(const Matrix2& a, const Matrix2& b, const Matrix2& c) {
  Matrix4 m;
  m << a, c, c.transpose(), b;
  return CovarianceMatrix(m);
}

std::array<double, 10> CovarianceMatrix::upper() const {
  std::array<double, 10> u{};
  std::size_t k = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) u[k++] = entries_(i, j);
  }
  return u;
}

DriftMatrix::DriftMatrix(const EnvironmentSpec& env) {
  Matrix2 block;
  block << -env.lambda(), 1.0 / env.mass(), -env.mass() * env.omega() * env.omega(), -env.lambda();
  entries_.setZero();
  entries_.topLeftCorner<2, 2>() = block;
  entries_.bottomRightCorner<2, 2>() = block;
}

DiffusionMatrix::DiffusionMatrix(const EnvironmentSpec& env) {
  const auto& d = env.diffusion();
  // symmetric environment: D_yy = D_xx, D_yp_y = D_xp_x, D_p_yp_y = D_p_xp_x, D_yp_x = D_xp_y
  entries_ << d.xx, d.xpx, d.xy, d.xpy,
              d.xpx, d.pxpx, d.xpy, d.pxpy,
              d.xy, d.xpy, d.xx, d.xpx,
              d.xpy, d.pxpy, d.xpx, d.pxpx;
}

bool ValidationReport::ok() const noexcept {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed || !c.required; });
}

std::vector<std::string> ValidationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (c.required && !c.passed) out.push_back(c.name);
  }
  return out;
}

std::vector<std::string> ValidationReport::advisories() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.required && !c.passed) out.push_back(c.name);
  }
  return out;
}

ValidationReport validate_diffusion(const EnvironmentSpec& env) {
  const auto& d = env.diffusion();
  const double lam2 = 0.25 * env.lambda() * env.lambda();
  // y-mode coefficients mirror the x-mode ones
  const double d_yy = d.xx, d_ypy = d.xpx, d_pypy = d.pxpx, d_ypx = d.xpy;

  ValidationReport report;
  auto add = [&](std::string name, double product, double square, double rhs) {
    report.checks.push_back(inequality(std::move(name), product - square, rhs,
                                       std::abs(product) + square + rhs));
  };
  add("D_xx*D_pxpx - D_xpx^2 >= lambda^2/4", d.xx * d.pxpx, d.xpx * d.xpx, lam2);
  add("D_yy*D_pypy - D_ypy^2 >= lambda^2/4", d_yy * d_pypy, d_ypy * d_ypy, lam2);
  add("D_xx*D_yy - D_xy^2 >= 0", d.xx * d_yy, d.xy * d.xy, 0.0);
  add("D_pxpx*D_pypy - D_pxpy^2 >= 0", d.pxpx * d_pypy, d.pxpy * d.pxpy, 0.0);
  add("D_xx*D_pypy - D_xpy^2 >= 0", d.xx * d_pypy, d.xpy * d.xpy, 0.0);
  add("D_yy*D_pxpx - D_ypx^2 >= 0", d_yy * d.pxpx, d_ypx * d_ypx, 0.0);

  // Hermitian coefficient matrix; PSD iff every principal minor is >= 0.
  using C = std::complex<double>;
  const C i_half_lambda{0.0, 0.5 * env.lambda()};
  Eigen::Matrix4cd h;
  h << C(d.xx), -d.xpx - i_half_lambda, C(d.xy), C(-d.xpy),
       -d.xpx + i_half_lambda, C(d.pxpx), C(-d_ypx), C(d.pxpy),
       C(d.xy), C(-d_ypx), C(d_yy), -d_ypy - i_half_lambda,
       C(-d.xpy), C(d.pxpy), -d_ypy + i_half_lambda, C(d_pypy);

  const double scale = std::max(1e-300, h.cwiseAbs().maxCoeff());
  double worst = std::numeric_limits<double>::infinity();
  bool all_ok = true;
  for (unsigned mask = 1; mask < 16; ++mask) {
    std::vector<int> idx;
    for (int k = 0; k < 4; ++k) {
      if (mask & (1u << k)) idx.push_back(k);
    }
    const auto n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd sub(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) sub(r, c) = h(idx[r], idx[c]);
    }
    const double minor = sub.determinant().real();
    const double normalized = minor / std::pow(scale, static_cast<double>(n));
    worst = std::min(worst, minor);
    if (normalized < -1e-12) all_ok = false;
  }
  ValidationReport::Check psd;
  psd.name = "coefficient matrix principal minors >= 0";
  psd.margin = worst;
  psd.passed = all_ok;
  psd.required = false;
  report.checks.push_back(psd);
  return report;
}

PhysicalStateReport check_physical_state(const Matrix4& raw) {
  constexpr double kTol = 1e-12;
  PhysicalStateReport out;
  out.symmetry_residual = asymmetry(raw);
  const Matrix4 sigma = 0.5 * (raw + raw.transpose());

  auto& checks = out.report.checks;
  checks.push_back({"symmetric", -out.symmetry_residual,
                    out.symmetry_residual <= CovarianceMatrix::kSymmetryTolerance, true});

  if (!sigma.allFinite()) {
    checks.push_back({"finite", -1.0, false, true});
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Matrix4> eig(sigma, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  checks.push_back({"positive semidefinite", out.min_eigenvalue, out.min_eigenvalue >= -kTol * scale, true});

  const Matrix2 a = sigma.topLeftCorner<2, 2>();
  const Matrix2 b = sigma.bottomRightCorner<2, 2>();
  const Matrix2 c = sigma.topRightCorner<2, 2>();
  out.determinant = sigma.determinant();
  const double delta = det2(a) + det2(b) + 2.0 * det2(c);
  const double disc = delta * delta - 4.0 * out.determinant;
  // equal symplectic eigenvalues give disc = 0 up to rounding
  if (disc < -kTol * delta * delta) {
    out.complex_spectrum = true;
    out.nu_minus_sq = out.nu_plus_sq = 0.5 * delta;
    checks.push_back({"symplectic eigenvalues real", disc, false, true});
  } else {
    const double root = std::sqrt(std::max(disc, 0.0));
    out.nu_minus_sq = 0.5 * (delta - root);
    out.nu_plus_sq = 0.5 * (delta + root);
  }
  const double margin = out.nu_minus_sq - 0.25;
  checks.push_back({"uncertainty nu_- >= 1/2", margin,
                    !out.complex_spectrum && margin >= -kTol * scale * scale, true});
  return out;
}

PhysicalStateReport check_physical_state(const CovarianceMatrix& sigma) {
  return check_physical_state(sigma.matrix());
}

void require_valid(const ValidationReport& report, std::string_view what) {
  if (report.ok()) return;
  std::ostringstream os;
  os << what << " failed:";
  for (const auto& name : report.failures()) os << " [" << name << "]";
  throw PhysicalityError(os.str());
}

}  // namespace gaussent
