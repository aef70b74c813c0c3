// Command-line driver for the space-time Schroedinger experiments.
//
//   stschrod convergence --degree 2 --sizes 16,32,64 --out conv.csv
//   stschrod stability --config stability.toml

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "stschrod/error.hpp"
#include "stschrod/experiments.hpp"

using namespace stschrod;

int main(int argc, char** argv) {
  CLI::App app{"Space-time isogeometric Petrov-Galerkin experiments for the Schroedinger equation"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<int> degree, nt, nx, hermite, quad;
  std::optional<double> t_final, omega;
  std::optional<std::string> domain, rho, sizes, out, norm;

  for (const std::string& kind : experiment_kinds()) {
    CLI::App* sub = app.add_subcommand(kind, "run the " + kind + " experiment");
    sub->add_option("--config", config_path, "flat key = value configuration file");
    sub->add_option("--degree", degree, "spline degree in time and space");
    sub->add_option("--nt", nt, "number of time elements");
    sub->add_option("--nx", nx, "number of space elements");
    sub->add_option("--t-final", t_final, "final time T");
    sub->add_option("--domain", domain, "spatial interval A,B");
    sub->add_option("--omega", omega, "oscillator frequency");
    sub->add_option("--hermite", hermite, "index of the exact stationary state");
    sub->add_option("--rho", rho, "comma-separated rho (or mu_w) values");
    sub->add_option("--sizes", sizes, "comma-separated sizes, time meshes or mesh ratios");
    sub->add_option("--quad", quad, "quadrature points per element (0: default)");
    sub->add_option("--norm", norm, "conditioning norm: spectral, one or inf");
    sub->add_option("--out", out, "output CSV path (default: stdout)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    cfg.kind = app.get_subcommands().front()->get_name();
    const auto set = [&cfg](const char* key, const auto& value) {
      if (value) apply_setting(cfg, key, std::to_string(*value));
    };
    const auto set_text = [&cfg](const char* key, const std::optional<std::string>& value) {
      if (value) apply_setting(cfg, key, *value);
    };
    set("degree", degree);
    set("nt", nt);
    set("nx", nx);
    set("hermite", hermite);
    set("quad", quad);
    if (t_final) cfg.t_final = *t_final;
    if (omega) cfg.omega = *omega;
    set_text("domain", domain);
    set_text("rho", rho);
    set_text("sizes", sizes);
    set_text("out", out);
    set_text("norm", norm);
    cfg.validate();

    const CsvTable table = run_experiment(cfg);
    if (cfg.out.empty()) {
      write_csv(table, std::cout);
    } else {
      std::ofstream file(cfg.out);
      if (!file) throw Error("cannot open output file '" + cfg.out + "'");
      write_csv(table, file);
    }
  } catch (const Error& e) {
    std::cerr << "stschrod: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
