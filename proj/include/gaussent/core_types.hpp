#pragma once

/**
 * @file core_types.hpp
 * @brief Environment description, covariance matrices and physicality checks
 * for two identical oscillators coupled to a common thermal bath.
 *
 * Units are fixed to hbar = k = 1. All 4x4 matrices use the quadrature
 * ordering (x, p_x, y, p_y): mode 1 occupies rows/cols 0-1, mode 2 rows/cols 2-3.
 */

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace gaussent {

using Matrix2 = Eigen::Matrix2d;
using Matrix4 = Eigen::Matrix4d;

/// Precondition or argument violation (bad parameters, malformed matrices).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A diffusion matrix or covariance matrix failed a required physicality check.
class PhysicalityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine could not produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Independent diffusion coefficients of a symmetric environment. The y-mode
/// coefficients mirror the x-mode ones: D_yy = D_xx, D_yp_y = D_xp_x,
/// D_p_yp_y = D_p_xp_x and D_yp_x = D_xp_y.
struct DiffusionCoefficients {
  double xx = 0.0;
  double xpx = 0.0;
  double pxpx = 0.0;
  double xy = 0.0;
  double xpy = 0.0;
  double pxpy = 0.0;

  friend bool operator==(const DiffusionCoefficients&, const DiffusionCoefficients&) = default;
};

/// Oscillator and bath parameters. Immutable once created; fully determines
/// the drift and diffusion matrices.
class EnvironmentSpec {
 public:
  /// Rejects lambda <= 0, thermal_c < 1, non-positive mass or omega and
  /// non-finite coefficients.
  static EnvironmentSpec create(double mass, double omega, double lambda, double thermal_c,
                                const DiffusionCoefficients& diffusion);

  double mass() const noexcept { return mass_; }
  double omega() const noexcept { return omega_; }
  double lambda() const noexcept { return lambda_; }
  /// C = coth(omega / 2T).
  double thermal_c() const noexcept { return thermal_c_; }
  const DiffusionCoefficients& diffusion() const noexcept { return diffusion_; }

  /// True when the coefficients follow the Gibbs-state choice
  /// m w D_xx = D_pxpx / (m w) = (lambda/2) C, D_xpx = 0, m^2 w^2 D_xy = D_pxpy.
  bool is_thermal(double rel_tol = 1e-12) const noexcept;

  friend bool operator==(const EnvironmentSpec&, const EnvironmentSpec&) = default;

 private:
  EnvironmentSpec() = default;

  double mass_ = 1.0;
  double omega_ = 1.0;
  double lambda_ = 0.0;
  double thermal_c_ = 1.0;
  DiffusionCoefficients diffusion_{};
};

/// Environment whose asymptotic state is a Gibbs state at thermal parameter C.
EnvironmentSpec thermal_environment(double lambda, double thermal_c, double d_xy, double d_xpy,
                                    double mass = 1.0, double omega = 1.0);

/// C = coth(omega / 2T); T = 0 maps to C = 1.
double thermal_c_from_temperature(double omega, double temperature);
/// Inverse of thermal_c_from_temperature; C = 1 maps to T = 0.
double temperature_from_thermal_c(double omega, double thermal_c);

/// Names of the ten independent covariance entries, in the order used by
/// CovarianceMatrix::from_upper and upper(): row-major upper triangle.
inline constexpr std::array<std::string_view, 10> kEntryNames = {
    "xx", "xpx", "xy", "xpy", "pxpx", "ypx", "pxpy", "yy", "ypy", "pypy"};

/// Real symmetric 4x4 covariance matrix with block structure [[A, C], [C^T, B]].
class CovarianceMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  /// Symmetrizes via (M + M^T)/2 when max|M - M^T| <= kSymmetryTolerance,
  /// otherwise throws InvalidArgument.
  explicit CovarianceMatrix(const Matrix4& entries);

  static CovarianceMatrix from_upper(const std::array<double, 10>& upper);
  static CovarianceMatrix from_blocks(const Matrix2& a, const Matrix2& b, const Matrix2& c);

  const Matrix4& matrix() const noexcept { return entries_; }
  double operator()(int row, int col) const { return entries_(row, col); }

  Matrix2 a() const { return entries_.topLeftCorner<2, 2>(); }
  Matrix2 b() const { return entries_.bottomRightCorner<2, 2>(); }
  Matrix2 c() const { return entries_.topRightCorner<2, 2>(); }

  std::array<double, 10> upper() const;

  friend bool operator==(const CovarianceMatrix& lhs, const CovarianceMatrix& rhs) {
    return lhs.entries_ == rhs.entries_;
  }

 private:
  Matrix4 entries_;
};

/// Largest absolute entry of m - m^T.
double asymmetry(const Matrix4& m);

inline double det2(const Matrix2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

/// Drift matrix Y: block diagonal with per-mode blocks [[-lambda, 1/m], [-m w^2, -lambda]].
class DriftMatrix {
 public:
  explicit DriftMatrix(const EnvironmentSpec& env);
  const Matrix4& matrix() const noexcept { return entries_; }

 private:
  Matrix4 entries_;
};

/// Symmetric diffusion matrix D assembled from the environment coefficients.
class DiffusionMatrix {
 public:
  explicit DiffusionMatrix(const EnvironmentSpec& env);
  const Matrix4& matrix() const noexcept { return entries_; }

 private:
  Matrix4 entries_;
};

/// Outcome of a set of named inequality checks. Advisory checks are reported
/// but never make the report fail.
struct ValidationReport {
  struct Check {
    std::string name;
    double margin = 0.0;  // >= 0 means satisfied (before tolerance)
    bool passed = false;
    bool required = true;
  };

  std::vector<Check> checks;

  bool ok() const noexcept;
  std::vector<std::string> failures() const;
  std::vector<std::string> advisories() const;
};

/// Cauchy-Schwarz inequalities on the diffusion coefficients (required) plus
/// the principal-minor test of the full complex coefficient matrix (advisory).
ValidationReport validate_diffusion(const EnvironmentSpec& env);

struct PhysicalStateReport {
  ValidationReport report;
  double symmetry_residual = 0.0;
  double min_eigenvalue = 0.0;
  double determinant = 0.0;
  /// Squared symplectic eigenvalues of sigma; may be negative or complex
  /// (complex_spectrum) for matrices that are not positive.
  double nu_minus_sq = 0.0;
  double nu_plus_sq = 0.0;
  bool complex_spectrum = false;

  bool physical() const noexcept { return report.ok(); }
};

/// Symmetry, positivity and the uncertainty relation nu_- >= 1/2. Never throws.
PhysicalStateReport check_physical_state(const Matrix4& sigma);
PhysicalStateReport check_physical_state(const CovarianceMatrix& sigma);

enum class Strictness { lenient, strict };

/// Throws PhysicalityError listing the failed checks when !report.ok().
void require_valid(const ValidationReport& report, std::string_view what);

}  // namespace gaussent
