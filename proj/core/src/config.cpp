#include "mhd/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "mhd/error.hpp"

namespace mhd {
namespace {

std::string trim(const std::string& s, std::size_t* lead = nullptr) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (lead) *lead = b;
  return s.substr(b, e - b);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{"grid.L",  "grid.n",    "data.M",         "data.rho",      "data.N",
                                          "data.alpha", "data.T", "data.eta",       "solver.dt",     "solver.cadence",
                                          "census.radius", "mode", "out_dir"};
  return keys;
}

}  // namespace

double parse_real(const std::string& raw) {
  std::string s = trim(raw);
  double factor = 1.0;
  auto ends_with = [&](const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (ends_with("pi")) {
    factor = std::numbers::pi;
    s = trim(s.substr(0, s.size() - 2));
    if (!s.empty() && s.back() == '*') s = trim(s.substr(0, s.size() - 1));
    if (s.empty()) return factor;
  }
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty()) throw std::invalid_argument("not a number: '" + raw + "'");
  return v * factor;
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig c;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    std::size_t lead = 0;
    if (trim(line, &lead).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'", lineno,
                        static_cast<int>(lead) + 1);
    const std::string key = trim(line.substr(0, eq));
    std::size_t vlead = 0;
    const std::string value = trim(line.substr(eq + 1), &vlead);
    const int key_col = static_cast<int>(lead) + 1;
    const int val_col = static_cast<int>(eq + 1 + vlead) + 1;
    if (!known_keys().count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'", lineno, key_col);
    if (seen.count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "' (first on line " +
                            std::to_string(seen[key]) + ")",
                        lineno, key_col);
    seen[key] = lineno;
    if (value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": missing value for '" + key + "'", lineno, val_col);

    auto real = [&]() {
      try {
        return parse_real(value);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("line " + std::to_string(lineno) + ": " + key + ": " + e.what(), lineno, val_col);
      }
    };
    if (key == "grid.L") c.L = real();
    else if (key == "grid.n") {
      const double v = real();
      if (v != static_cast<int>(v))
        throw ConfigError("line " + std::to_string(lineno) + ": grid.n must be an integer", lineno, val_col);
      c.n = static_cast<int>(v);
    } else if (key == "data.M") c.data.M = real();
    else if (key == "data.rho") c.data.rho = real();
    else if (key == "data.N") c.data.N = real();
    else if (key == "data.alpha") c.data.alpha = real();
    else if (key == "data.T") c.data.T = real();
    else if (key == "data.eta") c.data.eta = real();
    else if (key == "solver.dt") c.dt = (value == "cfl") ? 0.0 : real();
    else if (key == "solver.cadence") c.cadence = real();
    else if (key == "census.radius") c.census_radius = real();
    else if (key == "mode") {
      try {
        c.mode = parse_mode(unquote(value));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("line " + std::to_string(lineno) + ": " + e.what(), lineno, val_col);
      }
    } else if (key == "out_dir") c.out_dir = unquote(value);
  }
  c.validate();
  return c;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open configuration file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string format_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "grid.L = " << num(c.L) << "\n"
     << "grid.n = " << c.n << "\n"
     << "data.M = " << num(c.data.M) << "\n"
     << "data.rho = " << num(c.data.rho) << "\n"
     << "data.N = " << num(c.data.N) << "\n"
     << "data.alpha = " << num(c.data.alpha) << "\n"
     << "data.T = " << num(c.data.T) << "\n"
     << "data.eta = " << num(c.data.eta) << "\n"
     << "solver.dt = " << num(c.dt) << "\n"
     << "solver.cadence = " << num(c.cadence) << "\n"
     << "census.radius = " << num(c.census_radius) << "\n"
     << "mode = " << to_string(c.mode) << "\n"
     << "out_dir = " << c.out_dir << "\n";
  return os.str();
}

}  // namespace mhd
