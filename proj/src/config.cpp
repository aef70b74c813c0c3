#include "stschrod/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "stschrod/error.hpp"

namespace stschrod {

namespace {

std::string trim(const std::string& s) {
  const auto first = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  const auto last = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
  return first < last ? std::string(first, last) : std::string();
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

double parse_double(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("invalid number '" + t + "' for " + key);
  }
  if (used != t.size()) throw InvalidArgument("invalid number '" + t + "' for " + key);
  return v;
}

int parse_int(const std::string& text, const std::string& key) {
  const double v = parse_double(text, key);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw InvalidArgument("expected an integer for " + key + ", got '" + trim(text) + "'");
  return static_cast<int>(v);
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::string t = trim(unquote(trim(text)));
  if (!t.empty() && t.front() == '[') {
    if (t.back() != ']') throw InvalidArgument("unterminated list '" + text + "'");
    t = t.substr(1, t.size() - 2);
  }
  std::vector<double> values;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) throw InvalidArgument("empty entry in list '" + text + "'");
    values.push_back(parse_double(item, "list"));
  }
  if (values.empty()) throw InvalidArgument("empty list '" + text + "'");
  return values;
}

Interval parse_interval(const std::string& text) {
  const std::vector<double> v = parse_number_list(text);
  if (v.size() != 2) throw InvalidArgument("domain needs two numbers A,B, got '" + text + "'");
  return {v[0], v[1]};
}

void ExperimentConfig::validate() const {
  if (degree && *degree < 1) throw InvalidArgument("degree must be >= 1");
  if (nt && *nt < 1) throw InvalidArgument("nt must be positive");
  if (nx && *nx < 2) throw InvalidArgument("nx must be >= 2");
  if (!(t_final > 0.0)) throw InvalidArgument("t-final must be positive");
  if (!(domain.b > domain.a)) throw InvalidArgument("domain must satisfy A < B");
  if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");
  if (hermite < 0) throw InvalidArgument("hermite index must be >= 0");
  if (quad < 0) throw InvalidArgument("quad must be >= 0");
  for (double s : sizes)
    if (!(s > 0.0)) throw InvalidArgument("sizes must be positive");
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Strip comments outside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.erase(i);
        break;
      }
    }
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = unquote(trim(t.substr(eq + 1)));
    if (key.empty()) throw InvalidArgument("config line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second)
      throw InvalidArgument("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return kv;
}

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& value) {
  std::string key = raw_key;
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "degree") cfg.degree = parse_int(value, key);
  else if (key == "nt") cfg.nt = parse_int(value, key);
  else if (key == "nx") cfg.nx = parse_int(value, key);
  else if (key == "t-final") cfg.t_final = parse_double(value, key);
  else if (key == "domain") cfg.domain = parse_interval(value);
  else if (key == "omega") cfg.omega = parse_double(value, key);
  else if (key == "hermite") cfg.hermite = parse_int(value, key);
  else if (key == "rho") cfg.rho = parse_number_list(value);
  else if (key == "sizes") cfg.sizes = parse_number_list(value);
  else if (key == "out") cfg.out = value;
  else if (key == "quad") cfg.quad = parse_int(value, key);
  else if (key == "norm") cfg.norm = value;
  else if (key == "kind" || key == "experiment") cfg.kind = value;
  else throw InvalidArgument("unknown configuration key '" + raw_key + "'");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  ExperimentConfig cfg;
  for (const auto& [k, v] : parse_key_values(in)) apply_setting(cfg, k, v);
  return cfg;
}

}  // namespace stschrod
