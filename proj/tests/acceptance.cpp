// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gaussent/cli.hpp"
#include "gaussent/dynamics.hpp"
#include "gaussent/entanglement.hpp"
#include "gaussent/experiments.hpp"
#include "gaussent/presets.hpp"
#include "oracles.hpp"

using namespace gaussent;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double max_abs(const Matrix4& m) { return m.cwiseAbs().maxCoeff(); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

struct GridEnv {
  double lambda, c, d_xpy, d_xy;
};

std::vector<GridEnv> thermal_grid() {
  std::vector<GridEnv> out;
  for (double lam : {0.05, 0.1, 0.2})
    for (double c : {1.0, 1.1, 1.5, 2.0})
      for (double dxpy : {0.0, 0.02, 0.049})
        for (double dxy : {0.0, 0.005}) out.push_back({lam, c, dxpy, dxy});
  return out;
}

Outcome propagator_exactness() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  int points = 0;
  for (double lam : {0.01, 0.1, 0.5})
    for (double w : {0.5, 1.0, 2.0})
      for (double m : {0.5, 1.0, 2.0}) {
        const auto env = thermal_environment(lam, 1.0, 0.0, 0.0, m, w);
        const Matrix4 y = DriftMatrix(env).matrix();
        for (double t : {0.1, 1.0, 10.0, 100.0}) {
          worst = std::max(worst, max_abs(propagator(env, t).matrix() - oracle::expm_taylor(y * t)));
          ++points;
        }
      }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-12 && points >= 27 * 4 && elapsed < 1.0,
          fmt("max entry error %.3g over %.0f points, %.3f s", worst, points, elapsed)};
}

Outcome lyapunov_correctness() {
  double worst_residual = 0.0, worst_closed = 0.0;
  for (const auto& g : thermal_grid()) {
    const auto env = thermal_environment(g.lambda, g.c, g.d_xy, g.d_xpy);
    const Matrix4 d = DiffusionMatrix(env).matrix();
    const Matrix4 s = steady_covariance(env).matrix();
    worst_residual = std::max(worst_residual, lyapunov_residual(env, s) / (1.0 + max_abs(d)));
    worst_closed = std::max(worst_closed, max_abs(s - steady_covariance_closed_form(env).matrix()));
  }
  return {worst_residual <= 1e-12 && worst_closed <= 1e-12,
          fmt("scaled residual %.3g, closed-form deviation %.3g", worst_residual, worst_closed)};
}

Outcome asymptotic_simon_crosscheck() {
  double worst = 0.0;
  int points = 0;
  for (const auto& g : thermal_grid()) {
    const auto env = thermal_environment(g.lambda, g.c, g.d_xy, g.d_xpy);
    worst = std::max(worst, std::abs(asymptotic_simon(env) - simon_function(steady_covariance(env))));
    ++points;
  }
  return {worst <= 1e-10 && points == 72, fmt("max |difference| %.3g over %.0f points", worst, points)};
}

Outcome threshold_identity() {
  auto s = [](double c) { return asymptotic_simon(thermal_environment(0.1, c, 0.0, 0.049)); };
  double lo = 1.0, hi = 1.5;
  const bool lo_neg = s(lo) < 0.0;
  for (int k = 0; k < 200 && hi - lo > 1e-15; ++k) {
    const double mid = 0.5 * (lo + hi);
    ((s(mid) < 0.0) == lo_neg ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  const double expected = 1.0 + 2.0 * 0.049 / std::sqrt(1.01);
  const double l = asymptotic_log_negativity(thermal_environment(0.1, root, 0.0, 0.049)).value();
  return {std::abs(root - expected) <= 1e-10 && std::abs(l) <= 1e-10,
          fmt("root %.12f, closed form %.12f, L(inf) at root %.3g", root, expected, l)};
}

Outcome asymptotic_l_convergence() {
  const auto env = figure_environment(1.0);
  const double expected = -std::log2(1.0 - 2.0 * 0.049 / std::sqrt(1.01));
  std::mt19937_64 rng(7);
  const std::vector<CovarianceMatrix> initials = {figure_initial_state(1), figure_initial_state(2),
                                                  CovarianceMatrix(0.5 * Matrix4::Identity()),
                                                  CovarianceMatrix(oracle::tms(0.5)),
                                                  CovarianceMatrix(oracle::random_physical(rng))};
  double worst = 0.0;
  for (const auto& s0 : initials) {
    const auto l = log_negativity(evolve(s0, env, 300.0 / env.lambda()));
    worst = std::max(worst, l ? std::abs(*l - expected) : INFINITY);
  }
  return {worst <= 1e-6, fmt("L(inf) = %.8f, max deviation %.3g over %.0f initial states", expected, worst,
                             static_cast<double>(initials.size()))};
}

Outcome figure1_regime() {
  const auto r1 = classify_phase(figure_initial_state(1), figure_environment(1.0), 50.0, 501);
  const bool generation = !r1.initially_entangled && !r1.crossings.empty() && r1.crossings.front().to_entangled &&
                          r1.crossings.front().time > 0.0 && r1.s_infinity_sign < 0;
  const auto r15 = classify_phase(figure_initial_state(1), figure_environment(1.5), 50.0, 501);
  const bool separable_tail = r15.s_infinity_sign > 0;

  const auto start = std::chrono::steady_clock::now();
  SweepSpec spec{figure_environment(1.0), figure_initial_state(1), 50.0, 500, 1.0, 1.5, 20};
  const auto result = sweep(spec);
  const double elapsed = seconds_since(start);
  const bool sized = result.points.size() == 500 * 20;

  std::ostringstream os;
  os << "C=1: " << to_string(r1.label) << " (first event t="
     << (r1.crossings.empty() ? -1.0 : r1.crossings.front().time) << "), C=1.5: S(inf)=" << r15.s_infinity
     << ", 500x20 sweep " << elapsed << " s";
  return {generation && separable_tail && sized && elapsed < 5.0, os.str()};
}

Outcome entangled_initial_metrics() {
  const auto s = figure_initial_state(3);
  const double got = metrics(s).simon_s;
  const double exact = -133.0 / 576.0;
  const double brute = oracle::simon_brute(s.matrix());
  const double rel = std::max(std::abs(got - exact), std::abs(got - brute)) / std::abs(exact);
  return {rel <= 1e-15, fmt("S = %.17g, relative deviation %.3g", got, rel)};
}

Outcome ppt_consistency() {
  std::mt19937_64 rng(2024);
  int disagreements = 0, outside_band = 0;
  double worst_f = 0.0;
  const int n = 1000;
  for (int k = 0; k < n; ++k) {
    const CovarianceMatrix s(oracle::random_physical(rng));
    const auto m = metrics(s);
    const auto f = negativity_argument(s);
    worst_f = std::max(worst_f, f ? std::abs(*f - m.nu_tilde_minus_sq) : INFINITY);
    if (std::abs(m.simon_s) <= kPptBand) continue;
    ++outside_band;
    const bool l_positive = m.log_negativity && *m.log_negativity > 0.0;
    if ((m.simon_s < 0.0) != l_positive) ++disagreements;
  }
  return {disagreements == 0 && worst_f <= 1e-12,
          fmt("%.0f sign disagreements in %.0f states, max |f - nu~_-^2| %.3g", disagreements, outside_band,
              worst_f)};
}

Outcome fixed_point_and_flow() {
  const auto env = figure_environment(1.0);
  const auto steady = steady_covariance(env);
  double worst_fixed = 0.0;
  for (double t : {1.0, 10.0, 100.0}) worst_fixed = std::max(worst_fixed, max_abs(evolve(steady, env, t).matrix() - steady.matrix()));

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lam(0.05, 0.5), c(1.0, 2.0), dxpy(0.0, 0.02), t(0.0, 20.0);
  double worst_flow = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto e = thermal_environment(lam(rng), c(rng), 0.0, dxpy(rng));
    const CovarianceMatrix s0(oracle::random_physical(rng));
    const double a = t(rng), b = t(rng);
    worst_flow = std::max(worst_flow, max_abs(evolve(evolve(s0, e, a), e, b).matrix() - evolve(s0, e, a + b).matrix()));
  }
  return {worst_fixed <= 1e-12 && worst_flow <= 1e-11,
          fmt("fixed point deviation %.3g, composition deviation %.3g", worst_fixed, worst_flow)};
}

Outcome ode_residual_convergence() {
  const auto env = figure_environment(1.0);
  const auto s0 = figure_initial_state(1);
  const double coarse = ode_residual(sample_trajectory(s0, env, 20.0, 2000));
  const double fine = ode_residual(sample_trajectory(s0, env, 20.0, 4000));
  const double ratio = coarse / fine;
  return {ratio >= 3.5 && ratio <= 4.5, fmt("residual %.3g -> %.3g, ratio %.4f", coarse, fine, ratio)};
}

Outcome tms_oracle() {
  const double r = 0.5;
  const auto l = log_negativity(CovarianceMatrix(oracle::tms(r)));
  const double expected = 2.0 * r / std::numbers::ln2;
  const double err = l ? std::abs(*l - expected) : INFINITY;
  return {err <= 1e-12, fmt("L = %.15f, expected %.15f, error %.3g", l.value_or(NAN), expected, err)};
}

Outcome cli_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "gaussent_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::vector<std::string>> examples = {
      {"steady", "--set", "c=1"},
      {"metrics", "--set", "c=1", "initial=fig3"},
      {"evolve", "--set", "c=1", "initial=fig1"},
      {"sweep", "--set", "c=1", "initial=fig1"},
      {"classify", "--set", "c=1", "initial=fig1"},
      {"phase-diagram", "--set", "c=1"},
      {"sweep", "--set", "c=1", "initial=fig2", "--format", "json"},
  };
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  };
  int identical = 0;
  for (std::size_t k = 0; k < examples.size(); ++k) {
    std::string outputs[2];
    bool ok = true;
    for (int rep = 0; rep < 2; ++rep) {
      const auto path = dir / ("run" + std::to_string(k) + "_" + std::to_string(rep));
      auto args = examples[k];
      args.insert(args.end(), {"--out", path.string()});
      std::ostringstream out, err;
      ok = ok && cli::main_with_args(args, out, err) == cli::kSuccess;
      outputs[rep] = slurp(path);
    }
    if (ok && !outputs[0].empty() && outputs[0] == outputs[1]) ++identical;
  }
  return {identical == static_cast<int>(examples.size()),
          fmt("%.0f of %.0f examples byte-identical", identical, static_cast<double>(examples.size()))};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"propagator exactness", propagator_exactness},
      {"Lyapunov correctness", lyapunov_correctness},
      {"asymptotic Simon cross-check", asymptotic_simon_crosscheck},
      {"threshold identity", threshold_identity},
      {"asymptotic L convergence", asymptotic_l_convergence},
      {"figure-1 regime reproduction", figure1_regime},
      {"entangled-initial metrics", entangled_initial_metrics},
      {"PPT consistency", ppt_consistency},
      {"fixed point and flow", fixed_point_and_flow},
      {"ODE residual convergence", ode_residual_convergence},
      {"two-mode squeezed oracle", tms_oracle},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2zu. %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
