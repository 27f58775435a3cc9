#pragma once

/**
 * @file entanglement.hpp
 * @brief PPT separability (Simon function), partially transposed symplectic
 * spectrum, logarithmic negativity, and the closed-form asymptotic results
 * for thermal environments.
 */

#include <optional>

#include "gaussent/core_types.hpp"

namespace gaussent {

/// |S| at or below this value is reported as a separability boundary.
inline constexpr double kPptBand = 1e-12;
/// Discriminants above -kDegenerateBand * seralian^2 are rounded to a degenerate pair.
inline constexpr double kDegenerateBand = 1e-12;

/**
 * @brief Simon function
 *   S = det A det B + (1/4 - |det C|)^2 - Tr[A J C J B J C^T J] - (det A + det B)/4
 * with J = [[0, 1], [-1, 0]]. The state is separable iff S >= 0.
 */
double simon_function(const CovarianceMatrix& sigma);

/// Symplectic invariants of the partially transposed covariance matrix.
struct PtSpectrum {
  double seralian = 0.0;     ///< det A + det B - 2 det C
  double determinant = 0.0;  ///< det sigma (invariant under partial transposition)
  double discriminant = 0.0; ///< seralian^2 - 4 det sigma
  double nu_minus_sq = 0.0;
  double nu_plus_sq = 0.0;
  bool complex_pair = false;       ///< discriminant < 0: no real spectrum
  bool nonpositive_minus = false;  ///< nu_minus_sq <= 0 (unphysical or degenerate input)
};

/// 2 nu~_{-/+}^2 = seralian -/+ sqrt(seralian^2 - 4 det sigma). Flags instead of throwing.
PtSpectrum symplectic_spectrum_pt(const CovarianceMatrix& sigma);

/// f(sigma) = (det A + det B)/2 - det C - sqrt([(det A + det B)/2 - det C]^2 - det sigma).
/// Empty when the square-root argument is negative.
std::optional<double> negativity_argument(const CovarianceMatrix& sigma);

/// max{0, -(1/2) log2(4 f)} in ebits; empty ("undefined") when f <= 0 or f is complex.
std::optional<double> log_negativity(const CovarianceMatrix& sigma);

struct EntanglementMetrics {
  double simon_s = 0.0;
  double seralian_tilde = 0.0;
  double nu_tilde_minus_sq = 0.0;
  double nu_tilde_plus_sq = 0.0;
  std::optional<double> log_negativity;
  bool separable = true;  ///< simon_s >= 0
  bool boundary = false;  ///< |simon_s| <= kPptBand
  bool complex_pair = false;

  bool defined() const noexcept { return log_negativity.has_value(); }
};

/// Bundles the Simon function, PT spectrum and log negativity. Throws
/// NumericalError if f(sigma) and nu~_-^2 disagree by more than 1e-12.
EntanglementMetrics metrics(const CovarianceMatrix& sigma);

/// S at t -> infinity in closed form for a thermal environment:
///   (1/4 (C^2 - 1) - m^2 w^2 D_xy^2 / l^2 + d)^2 - d C^2,  d = D_xpy^2 / (l^2 + w^2)
/// valid when det C(inf) <= 0. When det C(inf) > 0 the |det C| branch of the
/// Simon function applies and det C(inf) is subtracted.
/// Throws InvalidArgument for non-thermal environments.
double asymptotic_simon(const EnvironmentSpec& env);

struct AsymptoticThreshold {
  /// 2 D_xpy / sqrt(l^2 + w^2)
  double mixed_ratio = 0.0;
  /// 1 + mixed_ratio: the asymptotic state is entangled for C below this value.
  double c_threshold = 1.0;
  bool lower_holds = false;  ///< C - 1 < mixed_ratio
  bool upper_holds = false;  ///< mixed_ratio < C + 1
  bool entangled_range = false;
  /// (l/2) C >= D_xpy
  bool constraint_ok = false;
};

/// Entanglement range of the asymptotic state when D_xy = 0.
/// Throws InvalidArgument for non-thermal environments or D_xy != 0.
AsymptoticThreshold asymptotic_threshold(const EnvironmentSpec& env);

/// L(inf) = max{0, -log2 |C - 2 D_xpy / sqrt(l^2 + w^2)|}; empty when the
/// absolute value is 0. Requires a thermal environment with D_xy = 0.
std::optional<double> asymptotic_log_negativity(const EnvironmentSpec& env);

struct AsymptoticEntanglement {
  double s_infinity = 0.0;
  std::optional<double> l_infinity;
  bool entangled_at_infinity = false;
  std::optional<double> c_threshold;  ///< only for D_xy = 0
};

/// Closed-form asymptotic summary; L and the threshold are filled in when D_xy = 0.
AsymptoticEntanglement asymptotic_entanglement(const EnvironmentSpec& env);

}  // namespace gaussent
