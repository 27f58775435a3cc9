#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaussent/cli.hpp"
#include "gaussent/dynamics.hpp"
#include "gaussent/entanglement.hpp"
#include "gaussent/experiments.hpp"
#include "gaussent/presets.hpp"

namespace gaussent::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Session {
  const RunConfig& cfg;
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += sep;
    out += items[k];
  }
  return out;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string csv_number(const std::optional<double>& v) { return v ? format_double(*v) : "nan"; }

EnvironmentSpec environment(Session& s, double thermal_c) {
  const RunConfig& cfg = s.cfg;
  EnvironmentSpec env = [&] {
    try {
      return thermal_environment(cfg.lambda, thermal_c, cfg.d_xy, cfg.d_xpy, cfg.mass, cfg.omega);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }();
  const ValidationReport report = validate_diffusion(env);
  require_valid(report, "diffusion coefficients at C = " + format_double(thermal_c));
  for (const auto& name : report.advisories()) {
    const std::string msg = "diffusion advisory check failed: " + name;
    if (std::find(s.warnings.begin(), s.warnings.end(), msg) == s.warnings.end()) s.warn(msg);
  }
  return env;
}

CovarianceMatrix initial_state(Session& s) {
  const RunConfig& cfg = s.cfg;
  std::optional<CovarianceMatrix> sigma;
  if (cfg.sigma) {
    try {
      sigma = CovarianceMatrix::from_upper(*cfg.sigma);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  } else {
    sigma = preset_initial(cfg.initial);
    if (!sigma) throw ConfigError("unknown initial preset '" + cfg.initial + "'");
  }
  const PhysicalStateReport report = check_physical_state(*sigma);
  if (!report.physical()) {
    const std::string detail = "unphysical initial state: " + join(report.report.failures(), "; ");
    if (cfg.strict) throw PhysicalityError(detail);
    s.warn(detail);
  }
  return *sigma;
}

Json environment_json(const EnvironmentSpec& env) {
  const auto& d = env.diffusion();
  return Json{{"m", env.mass()},     {"omega", env.omega()}, {"lambda", env.lambda()},
              {"c", env.thermal_c()}, {"d_xx", d.xx},        {"d_xpx", d.xpx},
              {"d_pxpx", d.pxpx},     {"d_xy", d.xy},        {"d_xpy", d.xpy},
              {"d_pxpy", d.pxpy}};
}

Json sigma_json(const CovarianceMatrix& sigma) {
  Json out = Json::object();
  const auto upper = sigma.upper();
  for (std::size_t k = 0; k < upper.size(); ++k) out[std::string(kEntryNames[k])] = upper[k];
  return out;
}

std::string run_steady(Session& s, Json& doc) {
  const EnvironmentSpec env = environment(s, s.cfg.thermal_c());
  const CovarianceMatrix steady = steady_covariance(env);
  const auto upper = steady.upper();
  if (s.cfg.format == "json") {
    doc["environment"] = environment_json(env);
    doc["steady"] = sigma_json(steady);
    return {};
  }
  std::ostringstream os;
  os << "entry,value\n";
  for (std::size_t k = 0; k < upper.size(); ++k) os << kEntryNames[k] << ',' << format_double(upper[k]) << '\n';
  return os.str();
}

std::string run_metrics(Session& s, Json& doc) {
  const EnvironmentSpec env = environment(s, s.cfg.thermal_c());
  const CovarianceMatrix initial = initial_state(s);
  if (!(s.cfg.t >= 0.0)) throw ConfigError("t must be non-negative");
  const CovarianceMatrix sigma = evolve(initial, env, s.cfg.t);
  const EntanglementMetrics m = metrics(sigma);
  if (m.complex_pair) s.warn("partially transposed symplectic spectrum is complex");
  if (!m.defined()) s.warn("log negativity undefined (nu_-^2 <= 0)");

  if (s.cfg.format == "json") {
    doc["environment"] = environment_json(env);
    doc["t"] = s.cfg.t;
    doc["sigma"] = sigma_json(sigma);
    doc["metrics"] = Json{{"S", m.simon_s},
                          {"seralian", m.seralian_tilde},
                          {"nu_minus_sq", m.nu_tilde_minus_sq},
                          {"nu_plus_sq", m.nu_tilde_plus_sq},
                          {"L", optional_number(m.log_negativity)},
                          {"defined", m.defined()},
                          {"separable", m.separable},
                          {"boundary", m.boundary}};
    return {};
  }
  std::ostringstream os;
  os << "t,S,seralian,nu_minus_sq,nu_plus_sq,L,defined,separable,boundary\n";
  os << format_double(s.cfg.t) << ',' << format_double(m.simon_s) << ',' << format_double(m.seralian_tilde) << ','
     << format_double(m.nu_tilde_minus_sq) << ',' << format_double(m.nu_tilde_plus_sq) << ','
     << csv_number(m.log_negativity) << ',' << (m.defined() ? 1 : 0) << ',' << (m.separable ? 1 : 0) << ','
     << (m.boundary ? 1 : 0) << '\n';
  return os.str();
}

std::string run_evolve(Session& s, Json& doc) {
  const EnvironmentSpec env = environment(s, s.cfg.thermal_c());
  const CovarianceMatrix initial = initial_state(s);
  if (s.cfg.n_t < 3) throw ConfigError("evolve needs n_t >= 3");
  const Trajectory traj = [&] {
    try {
      return sample_trajectory(initial, env, s.cfg.t_max, s.cfg.n_t - 1);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }();

  const bool json = s.cfg.format == "json";
  std::ostringstream os;
  Json samples = Json::array();
  if (!json) {
    os << 't';
    for (auto name : kEntryNames) os << ',' << name;
    os << ",S,L,defined\n";
  }
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const EntanglementMetrics m = metrics(traj.states[k]);
    if (json) {
      samples.push_back(Json{{"t", traj.times[k]},
                             {"sigma", sigma_json(traj.states[k])},
                             {"S", m.simon_s},
                             {"L", optional_number(m.log_negativity)}});
      continue;
    }
    os << format_double(traj.times[k]);
    for (double v : traj.states[k].upper()) os << ',' << format_double(v);
    os << ',' << format_double(m.simon_s) << ',' << csv_number(m.log_negativity) << ',' << (m.defined() ? 1 : 0)
       << '\n';
  }
  if (json) {
    doc["environment"] = environment_json(env);
    doc["ode_residual"] = ode_residual(traj);
    doc["samples"] = std::move(samples);
  }
  return os.str();
}

std::string run_sweep(Session& s, Json& doc) {
  const RunConfig& cfg = s.cfg;
  const CovarianceMatrix initial = initial_state(s);
  for (double c : linspace(cfg.c_min, cfg.c_max, std::max(cfg.n_c, 1))) environment(s, c);

  SweepSpec spec{environment(s, cfg.c_min), initial, cfg.t_max, cfg.n_t, cfg.c_min, cfg.c_max, cfg.n_c};
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  const SweepResult result = sweep(spec);

  if (cfg.format == "json") {
    Json points = Json::array();
    for (const auto& p : result.points) {
      points.push_back(Json{{"t", p.t}, {"c", p.c}, {"S", p.simon_s}, {"L", optional_number(p.log_negativity)}});
    }
    Json phases = Json::array();
    for (std::size_t ic = 0; ic < result.cs.size(); ++ic) {
      const auto& ph = result.phases[ic];
      phases.push_back(Json{{"c", result.cs[ic]},
                            {"label", std::string(to_string(ph.label))},
                            {"event_times", ph.event_times()},
                            {"s_infinity", ph.s_infinity}});
    }
    doc["times"] = result.times;
    doc["cs"] = result.cs;
    doc["points"] = std::move(points);
    doc["phases"] = std::move(phases);
    return {};
  }
  std::ostringstream os;
  os << "t,c,S,L,defined\n";
  for (const auto& p : result.points) {
    os << format_double(p.t) << ',' << format_double(p.c) << ',' << format_double(p.simon_s) << ','
       << csv_number(p.log_negativity) << ',' << (p.log_negativity ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string run_classify(Session& s, Json& doc) {
  const RunConfig& cfg = s.cfg;
  const CovarianceMatrix initial = initial_state(s);
  if (cfg.n_c < 1) throw ConfigError("n_c must be >= 1");
  if (!(cfg.t_max > 0.0)) throw ConfigError("t_max must be positive");

  std::ostringstream os;
  Json rows = Json::array();
  os << "c,label,event_times\n";
  for (double c : linspace(cfg.c_min, cfg.c_max, cfg.n_c)) {
    const EnvironmentSpec env = environment(s, c);
    const PhaseClassification ph = classify_phase(initial, env, cfg.t_max, std::max(cfg.n_t, kClassificationSamples));
    for (const auto& w : ph.warnings) s.warn("C = " + format_double(c) + ": " + w);
    std::vector<std::string> times;
    for (double t : ph.event_times()) times.push_back(format_double(t));
    os << format_double(c) << ',' << to_string(ph.label) << ',' << join(times, ";") << '\n';
    rows.push_back(Json{{"c", c},
                        {"label", std::string(to_string(ph.label))},
                        {"event_times", ph.event_times()},
                        {"s_infinity", ph.s_infinity}});
  }
  if (cfg.format == "json") {
    doc["classifications"] = std::move(rows);
    return {};
  }
  return os.str();
}

std::string run_phase_diagram(Session& s, Json& doc) {
  const RunConfig& cfg = s.cfg;
  if (cfg.n_c < 1 || cfg.n_d < 1) throw ConfigError("n_c and n_d must be >= 1");
  if (!(cfg.c_min >= 1.0)) throw ConfigError("c_min must be >= 1");
  const auto ds = linspace(cfg.d_xpy_min, cfg.d_xpy_max, cfg.n_d);
  const auto cs = linspace(cfg.c_min, cfg.c_max, cfg.n_c);
  const PhaseDiagram diagram = [&] {
    try {
      return asymptotic_phase_diagram(cfg.lambda, cfg.omega, ds, cs, cfg.mass);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }();

  std::ostringstream os;
  Json cells = Json::array();
  os << "d_xpy,c,state\n";
  for (std::size_t id = 0; id < ds.size(); ++id) {
    for (std::size_t ic = 0; ic < cs.size(); ++ic) {
      const auto state = std::string(to_string(diagram.at(id, ic)));
      os << format_double(ds[id]) << ',' << format_double(cs[ic]) << ',' << state << '\n';
      cells.push_back(Json{{"d_xpy", ds[id]}, {"c", cs[ic]}, {"state", state}});
    }
  }
  if (cfg.format == "json") {
    doc["cells"] = std::move(cells);
    return {};
  }
  return os.str();
}

std::string execute(Session& s) {
  Json doc;
  doc["command"] = s.cfg.command;
  std::string text;
  const auto& cmd = s.cfg.command;
  if (cmd == "steady") text = run_steady(s, doc);
  else if (cmd == "metrics") text = run_metrics(s, doc);
  else if (cmd == "evolve") text = run_evolve(s, doc);
  else if (cmd == "sweep") text = run_sweep(s, doc);
  else if (cmd == "classify") text = run_classify(s, doc);
  else if (cmd == "phase-diagram") text = run_phase_diagram(s, doc);
  else throw ConfigError("unknown command '" + cmd + "'");

  if (s.cfg.format == "json") {
    doc["warnings"] = s.warnings;
    text = doc.dump(2) + "\n";
  }
  return text;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Session session{cfg, {}};
  try {
    const std::string text = execute(session);
    for (const auto& w : session.warnings) err << "warning: " << w << '\n';
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError("cannot open output file '" + cfg.out + "'");
      file << text;
    }
    return kSuccess;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const PhysicalityError& e) {
    err << "physicality violation: " << e.what() << '\n';
    return kPhysicalityError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement dynamics of two oscillators in a common thermal environment", "gauss-ent"};
  std::string command;
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_path;
  std::string format;
  bool strict = false;
  bool dump = false;

  app.add_option("command", command, "evolve | steady | metrics | sweep | classify | phase-diagram")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(kCommands.begin(), kCommands.end())));
  app.add_option("--config", config_path, "flat key = value configuration file");
  app.add_option("--set", sets, "key=value override (repeatable)")->expected(1, 1 << 20);
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--strict", strict, "reject unphysical initial states");
  app.add_flag("--dump-config", dump, "print the resolved configuration and exit");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  RunConfig cfg;
  cfg.command = command;
  try {
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw ConfigError("cannot read config file '" + config_path + "'");
      std::stringstream buffer;
      buffer << file.rdbuf();
      apply_config_text(cfg, buffer.str());
    }
    std::string overrides;
    for (const auto& kv : sets) {
      if (kv.find('=') == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      overrides += kv + '\n';
    }
    apply_config_text(cfg, overrides);
    if (!out_path.empty()) cfg.out = out_path;
    if (!format.empty()) cfg.format = format;
    if (strict) cfg.strict = true;
    cfg.thermal_c();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  if (dump) {
    out << dump_config(cfg);
    return kSuccess;
  }
  return run(cfg, out, err);
}

}  // namespace gaussent::cli
