#pragma once

/**
 * @file experiments.hpp
 * @brief Phase classification of entanglement trajectories, (t, C) sweeps,
 * and the asymptotic (D_xpy, C) phase diagram.
 */

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaussent/core_types.hpp"

namespace gaussent {

/// n points spanning [lo, hi]; the last point is hi exactly. n = 1 gives {lo}.
std::vector<double> linspace(double lo, double hi, int n);

enum class PhaseLabel {
  remains_separable,
  remains_entangled,
  generation_persistent,
  generation_transient,
  sudden_death,
  collapse_revival,
};

std::string_view to_string(PhaseLabel label);

/// A change of the entanglement status of S(t), refined by bisection.
struct Crossing {
  double time = 0.0;
  double lo = 0.0;  ///< bracket end on the pre-crossing side
  double hi = 0.0;  ///< bracket end on the post-crossing side
  bool to_entangled = false;
};

struct PhaseClassification {
  PhaseLabel label = PhaseLabel::remains_separable;
  bool initially_entangled = false;
  std::vector<Crossing> crossings;
  double s_infinity = 0.0;
  int s_infinity_sign = 0;  ///< -1, 0 (inside kPptBand) or +1
  std::vector<std::string> warnings;

  std::vector<double> event_times() const;
};

/// Crossings closer than this are treated as a grazing contact and dropped in pairs.
inline constexpr double kTangencyGuard = 1e-6;
/// Bisection stops once the bracket is this narrow.
inline constexpr double kEventTolerance = 1e-8;

/**
 * @brief Samples S(t) on n_t uniform points of [0, t_max], refines every
 * status change by bisection on the exact flow and labels the pattern.
 *
 * A sample counts as entangled when S < -kPptBand, so S(0) = 0 starts
 * separable. With n crossings:
 *   - n = 0: remains_separable / remains_entangled
 *   - separable start: 1 -> generation_persistent, 2 -> generation_transient,
 *     3+ -> collapse_revival
 *   - entangled start: 1 -> sudden_death, 2+ -> collapse_revival
 *
 * Requires n_t >= 100 and t_max > 0. Warns (does not throw) if t_max < 5/lambda
 * or if the last sample's status disagrees with the sign of S(inf).
 */
PhaseClassification classify_phase(const CovarianceMatrix& initial, const EnvironmentSpec& env,
                                   double t_max, int n_t);

PhaseLabel label_for(bool initially_entangled, std::size_t crossing_count);

struct SweepSpec {
  EnvironmentSpec env_base;  ///< thermal; thermal_c replaced per grid column
  CovarianceMatrix initial;
  double t_max = 50.0;
  int n_t = 501;
  double c_min = 1.0;
  double c_max = 1.5;
  int n_c = 11;

  void validate() const;
};

struct SweepPoint {
  double t = 0.0;
  double c = 1.0;
  double simon_s = 0.0;
  std::optional<double> log_negativity;
};

struct SweepResult {
  std::vector<double> times;
  std::vector<double> cs;
  /// t-major: index = it * cs.size() + ic
  std::vector<SweepPoint> points;
  /// one per C column
  std::vector<PhaseClassification> phases;

  const SweepPoint& at(std::size_t it, std::size_t ic) const { return points[it * cs.size() + ic]; }
};

/// Minimum number of samples used when classifying a sweep column.
inline constexpr int kClassificationSamples = 100;

SweepResult sweep(const SweepSpec& spec);

enum class CellState { separable, entangled, unphysical };

std::string_view to_string(CellState state);

struct PhaseDiagram {
  std::vector<double> d_xpy;
  std::vector<double> cs;
  /// row-major: index = id * cs.size() + ic
  std::vector<CellState> cells;

  CellState at(std::size_t id, std::size_t ic) const { return cells[id * cs.size() + ic]; }
};

/// Marks each (D_xpy, C) cell by the sign of S(inf) with D_xy = 0; cells with
/// (lambda/2) C < D_xpy are unphysical.
PhaseDiagram asymptotic_phase_diagram(double lambda, double omega, const std::vector<double>& d_xpy_grid,
                                      const std::vector<double>& c_grid, double mass = 1.0);

}  // namespace gaussent
