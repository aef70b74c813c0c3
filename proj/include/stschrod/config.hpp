#pragma once

// Experiment configuration and its flat key/value file format.
//
//   # comment
//   degree = 2
//   sizes = [16, 32, 64]
//   domain = "-3,3"
//   out = "convergence.csv"
//
// Keys match the command-line flags: degree, nt, nx, t-final, domain, omega,
// hermite, rho, sizes, out, quad, norm.

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stschrod/bspline.hpp"

namespace stschrod {

struct ExperimentConfig {
  std::string kind;  // convergence | stability | conservation | conditioning | gevp | symbol | wave-check | solve
  std::optional<int> degree;
  std::optional<int> nt;
  std::optional<int> nx;
  double t_final = 1.0;
  Interval domain{-3.0, 3.0};
  double omega = 10.0;
  int hermite = 2;
  std::vector<double> rho;
  std::vector<double> sizes;
  std::string out;
  int quad = 0;  // 0: default rules
  std::string norm = "spectral";

  /// Throws InvalidArgument on non-positive meshes, T <= 0, a degenerate
  /// domain, omega <= 0 or a negative Hermite index.
  void validate() const;
};

/// Parses "key = value" lines; blank lines and '#' comments are skipped.
/// Values may be quoted; lists may be bracketed. Throws InvalidArgument on
/// malformed lines or duplicate keys.
std::map<std::string, std::string> parse_key_values(std::istream& in);

/// Applies one key/value pair. Throws InvalidArgument for unknown keys or
/// unparsable values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

ExperimentConfig load_config(const std::string& path);

std::vector<double> parse_number_list(const std::string& text);
Interval parse_interval(const std::string& text);

}  // namespace stschrod
