#include "gaussent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "gaussent/dynamics.hpp"

namespace gaussent {

namespace {

const Matrix2& symplectic_j() {
  static const Matrix2 j = (Matrix2() << 0.0, 1.0, -1.0, 0.0).finished();
  return j;
}

void require_thermal(const EnvironmentSpec& env, const char* what) {
  if (!env.is_thermal()) {
    throw InvalidArgument(std::string(what) + " requires a thermal environment");
  }
}

void require_no_position_cross_diffusion(const EnvironmentSpec& env, const char* what) {
  if (env.diffusion().xy != 0.0) {
    throw InvalidArgument(std::string(what) + " is only defined for D_xy = 0");
  }
}

double mixed_ratio(const EnvironmentSpec& env) {
  const double l = env.lambda();
  const double w = env.omega();
  return 2.0 * env.diffusion().xpy / std::sqrt(l * l + w * w);
}

}  // namespace

double simon_function(const CovarianceMatrix& sigma) {
  const Matrix2 a = sigma.a();
  const Matrix2 b = sigma.b();
  const Matrix2 c = sigma.c();
  const Matrix2& j = symplectic_j();

  const double det_a = det2(a);
  const double det_b = det2(b);
  const double cross = 0.25 - std::abs(det2(c));
  const double trace_term = (a * j * c * j * b * j * c.transpose() * j).trace();
  return det_a * det_b + cross * cross - trace_term - 0.25 * (det_a + det_b);
}

PtSpectrum symplectic_spectrum_pt(const CovarianceMatrix& sigma) {
  PtSpectrum out;
  out.seralian = det2(sigma.a()) + det2(sigma.b()) - 2.0 * det2(sigma.c());
  out.determinant = sigma.matrix().determinant();
  out.discriminant = out.seralian * out.seralian - 4.0 * out.determinant;
  if (out.discriminant < -kDegenerateBand * out.seralian * out.seralian) {
    out.complex_pair = true;
    out.nu_minus_sq = out.nu_plus_sq = 0.5 * out.seralian;
  } else {
    const double root = std::sqrt(std::max(out.discriminant, 0.0));
    out.nu_minus_sq = 0.5 * (out.seralian - root);
    out.nu_plus_sq = 0.5 * (out.seralian + root);
  }
  out.nonpositive_minus = out.complex_pair || out.nu_minus_sq <= 0.0;
  return out;
}

std::optional<double> negativity_argument(const CovarianceMatrix& sigma) {
  const double half = 0.5 * (det2(sigma.a()) + det2(sigma.b())) - det2(sigma.c());
  const double radicand = half * half - sigma.matrix().determinant();
  if (radicand < -kDegenerateBand * half * half) return std::nullopt;
  return half - std::sqrt(std::max(radicand, 0.0));
}

std::optional<double> log_negativity(const CovarianceMatrix& sigma) {
  const auto f = negativity_argument(sigma);
  if (!f || *f <= 0.0) return std::nullopt;
  return std::max(0.0, -0.5 * std::log2(4.0 * *f));
}

EntanglementMetrics metrics(const CovarianceMatrix& sigma) {
  EntanglementMetrics out;
  out.simon_s = simon_function(sigma);
  out.separable = out.simon_s >= 0.0;
  out.boundary = std::abs(out.simon_s) <= kPptBand;

  const PtSpectrum pt = symplectic_spectrum_pt(sigma);
  out.seralian_tilde = pt.seralian;
  out.nu_tilde_minus_sq = pt.nu_minus_sq;
  out.nu_tilde_plus_sq = pt.nu_plus_sq;
  out.complex_pair = pt.complex_pair;

  const auto f = negativity_argument(sigma);
  if (f && !pt.complex_pair) {
    const double gap = std::abs(*f - pt.nu_minus_sq);
    if (gap > 1e-12 * std::max(1.0, std::abs(pt.seralian))) {
      std::ostringstream os;
      os << "f(sigma) and nu_-^2 disagree by " << gap;
      throw NumericalError(os.str());
    }
  }
  out.log_negativity = log_negativity(sigma);
  return out;
}

double asymptotic_simon(const EnvironmentSpec& env) {
  require_thermal(env, "asymptotic_simon");
  const double m = env.mass();
  const double w = env.omega();
  const double l = env.lambda();
  const double c2 = env.thermal_c() * env.thermal_c();
  const double d_xy = env.diffusion().xy;
  const double d_xpy = env.diffusion().xpy;

  const double d = d_xpy * d_xpy / (l * l + w * w);
  const double inner = 0.25 * (c2 - 1.0) - m * m * w * w * d_xy * d_xy / (l * l) + d;
  const double s_pt = inner * inner - d * c2;

  // With det C(inf) > 0 the (1/4 - |det C|)^2 term differs from (1/4 + det C)^2 by det C.
  const double det_c = det2(steady_covariance_closed_form(env).c());
  return det_c > 0.0 ? s_pt - det_c : s_pt;
}

AsymptoticThreshold asymptotic_threshold(const EnvironmentSpec& env) {
  require_thermal(env, "asymptotic_threshold");
  require_no_position_cross_diffusion(env, "asymptotic_threshold");
  const double c = env.thermal_c();

  AsymptoticThreshold out;
  out.mixed_ratio = mixed_ratio(env);
  out.c_threshold = 1.0 + out.mixed_ratio;
  out.lower_holds = c - 1.0 < out.mixed_ratio;
  // redundant for C >= 1 under the constraint below, evaluated anyway
  out.upper_holds = out.mixed_ratio < c + 1.0;
  out.entangled_range = out.lower_holds && out.upper_holds;
  out.constraint_ok = 0.5 * env.lambda() * c >= env.diffusion().xpy;
  return out;
}

std::optional<double> asymptotic_log_negativity(const EnvironmentSpec& env) {
  require_thermal(env, "asymptotic_log_negativity");
  require_no_position_cross_diffusion(env, "asymptotic_log_negativity");
  const double arg = std::abs(env.thermal_c() - mixed_ratio(env));
  if (arg == 0.0) return std::nullopt;
  return std::max(0.0, -std::log2(arg));
}

AsymptoticEntanglement asymptotic_entanglement(const EnvironmentSpec& env) {
  AsymptoticEntanglement out;
  out.s_infinity = asymptotic_simon(env);
  out.entangled_at_infinity = out.s_infinity < 0.0;
  if (env.diffusion().xy == 0.0) {
    out.l_infinity = asymptotic_log_negativity(env);
    out.c_threshold = asymptotic_threshold(env).c_threshold;
  } else {
    out.l_infinity = log_negativity(steady_covariance(env));
  }
  return out;
}

}  // namespace gaussent
