#include "gaussent/presets.hpp"

namespace gaussent {

CovarianceMatrix figure_initial_state(int figure) {
  if (figure < 1 || figure > 4) throw InvalidArgument("figure index must be 1..4");
  const bool squeezed = figure == 1 || figure == 3;
  const bool correlated = figure >= 3;
  const double s_xx = squeezed ? 0.75 : 1.0;
  const double s_pp = squeezed ? 1.0 / 3.0 : 0.5;
  const double s_xy = correlated ? 0.5 : 0.0;
  const double s_pxpy = correlated ? -0.5 : 0.0;
  // xx, xpx, xy, xpy, pxpx, ypx, pxpy, yy, ypy, pypy
  return CovarianceMatrix::from_upper({s_xx, 0.0, s_xy, 0.0, s_pp, 0.0, s_pxpy, s_xx, 0.0, s_pp});
}

EnvironmentSpec figure_environment(double thermal_c) {
  return thermal_environment(kFigureLambda, thermal_c, kFigureDxy, kFigureDxpy, 1.0, 1.0);
}

std::optional<CovarianceMatrix> preset_initial(std::string_view name) {
  if (name == "vacuum") return CovarianceMatrix(0.5 * Matrix4::Identity());
  for (int k = 1; k <= 4; ++k) {
    if (name == kPresetNames[static_cast<std::size_t>(k - 1)]) return figure_initial_state(k);
  }
  return std::nullopt;
}

}  // namespace gaussent
