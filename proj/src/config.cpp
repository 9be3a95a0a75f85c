#include "stratlab/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stratlab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value) {
  throw std::invalid_argument("invalid value '" + value + "' for " + key);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad(key, v);
  return out;
}

template <class T>
T to_int(const std::string& key, const std::string& v) {
  T out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad(key, v);
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  bad(key, v);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "preset") c.preset = v;
  else if (key == "model") {
    if (!parse_model(v, c.model)) bad(key, v);
  } else if (key == "n1") c.n1 = to_int<std::size_t>(key, v);
  else if (key == "n2") c.n2 = to_int<std::size_t>(key, v);
  else if (key == "fd_order") c.fd_order = to_int<int>(key, v);
  else if (key == "cfl") c.cfl = to_double(key, v);
  else if (key == "t_end") c.t_end = to_double(key, v);
  else if (key == "sample_dt") c.sample_dt = to_double(key, v);
  else if (key == "dealias") c.dealias = to_bool(key, v);
  else if (key == "drift_every") c.drift_every = to_int<std::size_t>(key, v);
  else if (key == "experimental_general_rhos") c.experimental_general_rhos = to_bool(key, v);
  else if (key == "ic.shape") c.ic.shape = v;
  else if (key == "ic.epsilon") c.ic.epsilon = to_double(key, v);
  else if (key == "ic.mode") c.ic.mode = to_int<int>(key, v);
  else if (key == "ic.rho_s") c.ic.rho_s = v;
  else if (key == "ic.seed") c.ic.seed = to_int<std::uint64_t>(key, v);
  else if (key == "guards.max_linf") c.guards.max_linf = to_double(key, v);
  else if (key == "guards.nan_abort") c.guards.nan_abort = to_bool(key, v);
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

std::pair<std::string, std::string> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + s + "'");
  std::string key = trim(s.substr(0, eq));
  if (key.empty()) throw std::invalid_argument("empty key in '" + s + "'");
  return {key, trim(s.substr(eq + 1))};
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      out.push_back(split_assignment(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot read config file " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str());
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  return {{"preset", c.preset},
          {"model", std::string(model_name(c.model))},
          {"n1", std::to_string(c.n1)},
          {"n2", std::to_string(c.n2)},
          {"fd_order", std::to_string(c.fd_order)},
          {"cfl", fmt(c.cfl)},
          {"t_end", fmt(c.t_end)},
          {"sample_dt", fmt(c.sample_dt)},
          {"dealias", b(c.dealias)},
          {"drift_every", std::to_string(c.drift_every)},
          {"experimental_general_rhos", b(c.experimental_general_rhos)},
          {"ic.shape", c.ic.shape},
          {"ic.epsilon", fmt(c.ic.epsilon)},
          {"ic.mode", std::to_string(c.ic.mode)},
          {"ic.rho_s", c.ic.rho_s},
          {"ic.seed", std::to_string(c.ic.seed)},
          {"guards.max_linf", fmt(c.guards.max_linf)},
          {"guards.nan_abort", b(c.guards.nan_abort)}};
}

}  // namespace stratlab
