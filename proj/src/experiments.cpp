#include "gaussent/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gaussent/dynamics.hpp"
#include "gaussent/entanglement.hpp"

namespace gaussent {

namespace {

bool entangled(double s) { return s < -kPptBand; }

int band_sign(double s) {
  if (s < -kPptBand) return -1;
  if (s > kPptBand) return 1;
  return 0;
}

Crossing refine(const Flow& flow, const CovarianceMatrix& initial, double lo, double hi, bool from_entangled) {
  for (int iter = 0; iter < 200 && hi - lo > kEventTolerance; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (entangled(simon_function(flow.at(initial, mid))) == from_entangled) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return Crossing{0.5 * (lo + hi), lo, hi, !from_entangled};
}

std::vector<Crossing> drop_grazing(const std::vector<Crossing>& in) {
  std::vector<Crossing> out;
  for (const auto& c : in) {
    if (!out.empty() && c.time - out.back().time < kTangencyGuard) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

void require_grid(int n, const char* name) {
  if (n < 1) throw InvalidArgument(std::string(name) + " must be >= 1");
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
  require_grid(n, "grid size");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (int k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = lo + (hi - lo) * static_cast<double>(k) / (n - 1);
  }
  out.back() = hi;
  return out;
}

std::string_view to_string(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::remains_separable: return "remains_separable";
    case PhaseLabel::remains_entangled: return "remains_entangled";
    case PhaseLabel::generation_persistent: return "generation_persistent";
    case PhaseLabel::generation_transient: return "generation_transient";
    case PhaseLabel::sudden_death: return "sudden_death";
    case PhaseLabel::collapse_revival: return "collapse_revival";
  }
  return "unknown";
}

std::string_view to_string(CellState state) {
  switch (state) {
    case CellState::separable: return "separable";
    case CellState::entangled: return "entangled";
    case CellState::unphysical: return "unphysical";
  }
  return "unknown";
}

std::vector<double> PhaseClassification::event_times() const {
  std::vector<double> out;
  out.reserve(crossings.size());
  for (const auto& c : crossings) out.push_back(c.time);
  return out;
}

PhaseLabel label_for(bool initially_entangled, std::size_t n) {
  if (n == 0) {
    return initially_entangled ? PhaseLabel::remains_entangled : PhaseLabel::remains_separable;
  }
  if (initially_entangled) {
    return n == 1 ? PhaseLabel::sudden_death : PhaseLabel::collapse_revival;
  }
  if (n == 1) return PhaseLabel::generation_persistent;
  if (n == 2) return PhaseLabel::generation_transient;
  return PhaseLabel::collapse_revival;
}

PhaseClassification classify_phase(const CovarianceMatrix& initial, const EnvironmentSpec& env,
                                   double t_max, int n_t) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidArgument("t_max must be finite and positive");
  if (n_t < kClassificationSamples) throw InvalidArgument("classify_phase needs n_t >= 100");

  const Flow flow(env);
  const std::vector<double> ts = linspace(0.0, t_max, n_t);

  PhaseClassification out;
  std::vector<Crossing> raw;
  bool prev = entangled(simon_function(initial));
  out.initially_entangled = prev;
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const bool now = entangled(simon_function(flow.at(initial, ts[k])));
    if (now != prev) raw.push_back(refine(flow, initial, ts[k - 1], ts[k], prev));
    prev = now;
  }
  out.crossings = drop_grazing(raw);
  out.label = label_for(out.initially_entangled, out.crossings.size());

  out.s_infinity = env.is_thermal() ? asymptotic_simon(env) : simon_function(flow.steady());
  out.s_infinity_sign = band_sign(out.s_infinity);

  if (t_max < 5.0 / env.lambda()) {
    std::ostringstream os;
    os << "t_max = " << t_max << " is shorter than 5/lambda = " << 5.0 / env.lambda();
    out.warnings.push_back(os.str());
  }
  if (prev != (out.s_infinity_sign < 0)) {
    out.warnings.push_back("final sampled status disagrees with the sign of S(inf); extend t_max");
  }
  return out;
}

void SweepSpec::validate() const {
  if (!env_base.is_thermal()) throw InvalidArgument("sweep base environment must be thermal");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidArgument("t_max must be finite and positive");
  require_grid(n_t, "n_t");
  require_grid(n_c, "n_c");
  if (!(c_min >= 1.0)) throw InvalidArgument("c_min must be >= 1");
  if (!(c_max >= c_min) || !std::isfinite(c_max)) throw InvalidArgument("c_max must be >= c_min");
}

SweepResult sweep(const SweepSpec& spec) {
  spec.validate();
  const auto& base = spec.env_base;

  SweepResult out;
  out.times = linspace(0.0, spec.t_max, spec.n_t);
  out.cs = linspace(spec.c_min, spec.c_max, spec.n_c);
  out.points.resize(out.times.size() * out.cs.size());
  out.phases.reserve(out.cs.size());

  const int classify_n = std::max(spec.n_t, kClassificationSamples);
  for (std::size_t ic = 0; ic < out.cs.size(); ++ic) {
    const double c = out.cs[ic];
    const EnvironmentSpec env = thermal_environment(base.lambda(), c, base.diffusion().xy,
                                                    base.diffusion().xpy, base.mass(), base.omega());
    const Flow flow(env);
    for (std::size_t it = 0; it < out.times.size(); ++it) {
      const double t = out.times[it];
      const EntanglementMetrics m = metrics(flow.at(spec.initial, t));
      out.points[it * out.cs.size() + ic] = SweepPoint{t, c, m.simon_s, m.log_negativity};
    }
    out.phases.push_back(classify_phase(spec.initial, env, spec.t_max, classify_n));
  }
  return out;
}

PhaseDiagram asymptotic_phase_diagram(double lambda, double omega, const std::vector<double>& d_xpy_grid,
                                      const std::vector<double>& c_grid, double mass) {
  if (d_xpy_grid.empty() || c_grid.empty()) throw InvalidArgument("phase diagram grids must be nonempty");
  PhaseDiagram out{d_xpy_grid, c_grid, {}};
  out.cells.reserve(d_xpy_grid.size() * c_grid.size());
  for (double d : d_xpy_grid) {
    for (double c : c_grid) {
      const EnvironmentSpec env = thermal_environment(lambda, c, 0.0, d, mass, omega);
      if (!asymptotic_threshold(env).constraint_ok) {
        out.cells.push_back(CellState::unphysical);
      } else {
        out.cells.push_back(asymptotic_simon(env) < 0.0 ? CellState::entangled : CellState::separable);
      }
    }
  }
  return out;
}

}  // namespace gaussent
