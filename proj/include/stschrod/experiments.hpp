#pragma once

// Harmonic-oscillator experiments: error norms, conservation traces and the
// runners behind each CLI subcommand, with CSV emission.

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "stschrod/conditioning.hpp"
#include "stschrod/config.hpp"
#include "stschrod/oscillator.hpp"
#include "stschrod/spacetime.hpp"
#include "stschrod/structure.hpp"

namespace stschrod {

using ExactField = std::function<StateValue(double x, double t)>;
using FieldEvaluator = std::function<FieldValue(double x, double t)>;

/// Relative errors in L2(Q_T) and in the seminorm sum ||d_t e|| + ||d_x e||,
/// normalized by the same norms of the exact solution.
struct ErrorNorms {
  double abs_l2 = 0.0;
  double abs_h1 = 0.0;
  double rel_l2 = 0.0;
  double rel_h1 = 0.0;
};

/// Tensor Gauss quadrature with quad_points per direction and element
/// (default: max degree + 5). Throws Error when the exact norms vanish.
ErrorNorms error_norms(const DiscreteField& field, const ExactField& exact, int quad_points = 0);

/// Same quadrature for an arbitrary evaluator on a uniform Nt x Nx grid of
/// (0, T) x domain; used to validate the pipeline.
ErrorNorms error_norms(const FieldEvaluator& approx, const ExactField& exact, double T, int Nt,
                       Interval domain, int Nx, int quad_points);

struct ConservationReport {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> energy;
  std::vector<double> mass_dev;    // |M(t) - M(0)|
  std::vector<double> energy_dev;  // |E(t) - E(0)|
};

/// M(t) = int |Psi|^2 and E(t) = -1/2 int |Psi_x|^2 + int V |Psi|^2 by
/// spatial quadrature (default p_x + 3 points per element).
ConservationReport functionals_trace(const DiscreteField& field, const Potential& V,
                                     const std::vector<double>& times, int quad_points = 0);

/// The oscillator benchmark: Psi0 = Psi^(n)(., 0), F = 0, equal degrees.
struct OscillatorProblem {
  double omega = 10.0;
  int hermite = 2;
  Interval domain{-3.0, 3.0};
  double T = 1.0;

  Potential potential() const;
  ExactField exact() const;
};

enum class SolverPath { BartelsStewart, Direct };

struct OscillatorRun {
  SpaceTimeSystem system;
  DiscreteField field;
};

OscillatorRun solve_oscillator(const OscillatorProblem& problem, int p, int Nt, int Nx,
                               SolverPath path = SolverPath::BartelsStewart);

struct ErrorRow {
  int p = 0;
  int Nt = 0;
  int Nx = 0;
  double ht = 0.0;
  double hx = 0.0;
  double rel_l2 = 0.0;
  double rel_h1 = 0.0;
  double rate_l2 = 0.0;  // NaN on the first row
  double rate_h1 = 0.0;
};

struct ErrorReport {
  std::vector<ErrorRow> rows;
};

/// Rates log(e_prev / e_cur) / log(h_prev / h_cur) between consecutive rows
/// (log2 of the error ratio under halving).
void fill_rates(ErrorReport& report);

struct WaveRow {
  int p = 0;
  int n = 0;
  double mu = 0.0;
  double kappa_block = 0.0;
  double kappa_schur = 0.0;
  double lemma_bound = 0.0;
};

struct SymbolRow {
  int p = 0;
  double rho = 0.0;
  RootType type;
  double theta_star = 0.0;
  bool reciprocal = false;
};

struct SolveSummary {
  int p = 0;
  double ht = 0.0;
  double hx = 0.0;
  ErrorNorms errors;
  double mass_dev_T = 0.0;
  double energy_dev_T = 0.0;
};

OscillatorProblem problem_from(const ExperimentConfig& cfg);

/// h_x = h_t: N_x = round(|domain| Nt / T), at least 2.
int matching_space_elements(const OscillatorProblem& problem, int Nt);

ErrorReport run_convergence(const ExperimentConfig& cfg);
ErrorReport run_stability(const ExperimentConfig& cfg);
ConservationReport run_conservation(const ExperimentConfig& cfg);
ConditioningReport run_conditioning(const ExperimentConfig& cfg);
PencilSpectrum run_gevp(const ExperimentConfig& cfg);
std::vector<WaveRow> run_wave(const ExperimentConfig& cfg);
std::vector<SymbolRow> run_symbol(const ExperimentConfig& cfg);
SolveSummary run_solve(const ExperimentConfig& cfg);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_number(double v);
void write_csv(const CsvTable& table, std::ostream& out);

/// Runs cfg.kind and returns its CSV table. Throws InvalidArgument for an
/// unknown kind.
CsvTable run_experiment(const ExperimentConfig& cfg);

std::vector<std::string> experiment_kinds();

}  // namespace stschrod
