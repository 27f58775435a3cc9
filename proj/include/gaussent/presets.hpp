#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "gaussent/core_types.hpp"

namespace gaussent {

// Figure setups: lambda = 0.1, D_xy = 0, D_xpy = 0.049, m = omega = 1.
inline constexpr double kFigureLambda = 0.1;
inline constexpr double kFigureDxy = 0.0;
inline constexpr double kFigureDxpy = 0.049;

/// Initial correlations of figures 1-4 (unlisted entries zero, A = B):
///   1: s_xx = 3/4, s_pxpx = 1/3                         (separable squeezed)
///   2: s_xx = 1,   s_pxpx = 1/2                         (separable mixed)
///   3: as 1 plus s_xy = 1/2, s_pxpy = -1/2              (entangled squeezed)
///   4: as 2 plus s_xy = 1/2, s_pxpy = -1/2              (entangled mixed)
/// Figures 3 and 4 are not physical covariance matrices.
CovarianceMatrix figure_initial_state(int figure);

EnvironmentSpec figure_environment(double thermal_c);

inline constexpr std::array<std::string_view, 5> kPresetNames = {"fig1", "fig2", "fig3", "fig4", "vacuum"};

/// Named initial state ("fig1".."fig4", "vacuum"); empty for unknown names.
std::optional<CovarianceMatrix> preset_initial(std::string_view name);

}  // namespace gaussent
