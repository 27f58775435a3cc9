#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "gaussent/cli.hpp"
#include "gaussent/core_types.hpp"

namespace gaussent::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "1" || text == "true" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "no") return false;
  throw ConfigError("invalid boolean for '" + std::string(key) + "': '" + std::string(text) + "'");
}

std::array<double, 10> parse_sigma(std::string_view text) {
  std::array<double, 10> out{};
  std::size_t count = 0;
  std::size_t start = 0;
  text = trim(text);
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (count == out.size()) throw ConfigError("sigma needs exactly 10 comma-separated entries");
    out[count++] = parse_double("sigma", piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (count != out.size()) throw ConfigError("sigma needs exactly 10 comma-separated entries");
  return out;
}

}  // namespace

double RunConfig::thermal_c() const {
  if (c && temperature) throw ConfigError("give either c or temperature, not both");
  if (temperature) {
    try {
      return thermal_c_from_temperature(omega, *temperature);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
  return c.value_or(1.0);
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "lambda") cfg.lambda = parse_double(key, value);
  else if (key == "omega") cfg.omega = parse_double(key, value);
  else if (key == "m" || key == "mass") cfg.mass = parse_double(key, value);
  else if (key == "c") { cfg.c = parse_double(key, value); cfg.temperature.reset(); }
  else if (key == "temperature") { cfg.temperature = parse_double(key, value); cfg.c.reset(); }
  else if (key == "d_xy") cfg.d_xy = parse_double(key, value);
  else if (key == "d_xpy") cfg.d_xpy = parse_double(key, value);
  else if (key == "initial") { cfg.initial = std::string(value); cfg.sigma.reset(); }
  else if (key == "sigma") cfg.sigma = parse_sigma(value);
  else if (key == "t") cfg.t = parse_double(key, value);
  else if (key == "t_max") cfg.t_max = parse_double(key, value);
  else if (key == "n_t") cfg.n_t = parse_int(key, value);
  else if (key == "c_min") cfg.c_min = parse_double(key, value);
  else if (key == "c_max") cfg.c_max = parse_double(key, value);
  else if (key == "n_c") cfg.n_c = parse_int(key, value);
  else if (key == "d_xpy_min") cfg.d_xpy_min = parse_double(key, value);
  else if (key == "d_xpy_max") cfg.d_xpy_max = parse_double(key, value);
  else if (key == "n_d") cfg.n_d = parse_int(key, value);
  else if (key == "format") {
    if (value != "csv" && value != "json") throw ConfigError("format must be csv or json");
    cfg.format = std::string(value);
  }
  else if (key == "strict") cfg.strict = parse_bool(key, value);
  else if (key == "out") cfg.out = std::string(value);
  else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    apply_setting(cfg, key, line.substr(eq + 1));
    seen.emplace(key);
  }
  if (seen.count("c") && seen.count("temperature")) {
    throw ConfigError("give either c or temperature, not both");
  }
}

std::string dump_config(const RunConfig& cfg) {
  std::ostringstream os;
  auto put = [&os](std::string_view key, const std::string& value) { os << key << " = " << value << '\n'; };
  put("lambda", format_double(cfg.lambda));
  put("omega", format_double(cfg.omega));
  put("m", format_double(cfg.mass));
  if (cfg.temperature) put("temperature", format_double(*cfg.temperature));
  else put("c", format_double(cfg.c.value_or(1.0)));
  put("d_xy", format_double(cfg.d_xy));
  put("d_xpy", format_double(cfg.d_xpy));
  if (cfg.sigma) {
    std::string joined;
    for (std::size_t k = 0; k < cfg.sigma->size(); ++k) {
      if (k) joined += ',';
      joined += format_double((*cfg.sigma)[k]);
    }
    put("sigma", joined);
  } else {
    put("initial", cfg.initial);
  }
  put("t", format_double(cfg.t));
  put("t_max", format_double(cfg.t_max));
  put("n_t", std::to_string(cfg.n_t));
  put("c_min", format_double(cfg.c_min));
  put("c_max", format_double(cfg.c_max));
  put("n_c", std::to_string(cfg.n_c));
  put("d_xpy_min", format_double(cfg.d_xpy_min));
  put("d_xpy_max", format_double(cfg.d_xpy_max));
  put("n_d", std::to_string(cfg.n_d));
  put("format", cfg.format);
  put("strict", cfg.strict ? "true" : "false");
  if (!cfg.out.empty()) put("out", cfg.out);
  return os.str();
}

}  // namespace gaussent::cli
