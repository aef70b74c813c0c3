#include "stschrod/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "stschrod/error.hpp"
#include "stschrod/wave.hpp"

namespace stschrod {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct NormSums {
  double e0 = 0.0, et = 0.0, ex = 0.0;  // squared error norms
  double u0 = 0.0, ut = 0.0, ux = 0.0;  // squared exact norms

  void add(double w, const FieldValue& a, const StateValue& u) {
    e0 += w * std::norm(a.value - u.value);
    et += w * std::norm(a.dt - u.dt);
    ex += w * std::norm(a.dx - u.dx);
    u0 += w * std::norm(u.value);
    ut += w * std::norm(u.dt);
    ux += w * std::norm(u.dx);
  }

  ErrorNorms finish() const {
    if (!(u0 > 0.0) || !(std::sqrt(ut) + std::sqrt(ux) > 0.0))
      throw Error("error_norms: exact solution has zero norm");
    ErrorNorms r;
    r.abs_l2 = std::sqrt(e0);
    r.abs_h1 = std::sqrt(et) + std::sqrt(ex);
    r.rel_l2 = r.abs_l2 / std::sqrt(u0);
    r.rel_h1 = r.abs_h1 / (std::sqrt(ut) + std::sqrt(ux));
    return r;
  }
};

std::vector<int> as_ints(const std::vector<double>& v, const std::string& what) {
  std::vector<int> out;
  for (double x : v) {
    if (x != std::floor(x) || x < 1) throw InvalidArgument(what + " must be positive integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::vector<double> log_spaced(double a, double b, int count) {
  std::vector<double> v;
  for (int k = 0; k < count; ++k)
    v.push_back(std::exp(std::log(a) + (std::log(b) - std::log(a)) * k / (count - 1)));
  return v;
}

ErrorRow error_row(const OscillatorProblem& problem, int p, int Nt, int Nx, int quad) {
  const OscillatorRun run = solve_oscillator(problem, p, Nt, Nx);
  const ErrorNorms e = error_norms(run.field, problem.exact(), quad);
  ErrorRow row;
  row.p = p;
  row.Nt = Nt;
  row.Nx = Nx;
  row.ht = problem.T / Nt;
  row.hx = problem.domain.length() / Nx;
  row.rel_l2 = e.rel_l2;
  row.rel_h1 = e.rel_h1;
  row.rate_l2 = row.rate_h1 = kNaN;
  return row;
}

}  // namespace

ErrorNorms error_norms(const DiscreteField& field, const ExactField& exact, int quad_points) {
  const int pt = field.time_knots.degree, px = field.space.degree;
  const int q = quad_points > 0 ? quad_points : std::max(pt, px) + 5;
  const BasisTable tt(field.time_knots, q, 0);
  const BasisTable xt(field.space.knots, q, 1);
  const int Ns = field.space.dim();
  NormSums sums;
  for (int et = 0; et < tt.num_elements(); ++et) {
    for (int qt = 0; qt < q; ++qt) {
      const double t = tt.point(et, qt), wt = tt.weight(et, qt);
      const Eigen::VectorXcd c = field.spatial_coefficients(t, 0);
      const Eigen::VectorXcd ct = field.spatial_coefficients(t, 1);
      for (int ex = 0; ex < xt.num_elements(); ++ex) {
        for (int qx = 0; qx < q; ++qx) {
          FieldValue a{0.0, 0.0, 0.0};
          for (int b = 0; b <= px; ++b) {
            const int i = ex + b - 1;
            if (i < 0 || i >= Ns) continue;
            const double N = xt.basis(ex, qx, 0, b), dN = xt.basis(ex, qx, 1, b);
            a.value += c(i) * N;
            a.dx += c(i) * dN;
            a.dt += ct(i) * N;
          }
          const double x = xt.point(ex, qx);
          sums.add(wt * xt.weight(ex, qx), a, exact(x, t));
        }
      }
    }
  }
  return sums.finish();
}

ErrorNorms error_norms(const FieldEvaluator& approx, const ExactField& exact, double T, int Nt,
                       Interval domain, int Nx, int quad_points) {
  if (Nt < 1 || Nx < 1 || quad_points < 1) throw InvalidArgument("error_norms: invalid grid");
  const QuadratureRule rule = gauss_legendre_rule(quad_points);
  const double ht = T / Nt, hx = domain.length() / Nx;
  NormSums sums;
  for (int et = 0; et < Nt; ++et)
    for (std::size_t qt = 0; qt < rule.size(); ++qt) {
      const double t = ht * (et + 0.5 * (rule.nodes[qt] + 1.0));
      const double wt = 0.5 * ht * rule.weights[qt];
      for (int ex = 0; ex < Nx; ++ex)
        for (std::size_t qx = 0; qx < rule.size(); ++qx) {
          const double x = domain.a + hx * (ex + 0.5 * (rule.nodes[qx] + 1.0));
          sums.add(wt * 0.5 * hx * rule.weights[qx], approx(x, t), exact(x, t));
        }
    }
  return sums.finish();
}

ConservationReport functionals_trace(const DiscreteField& field, const Potential& V,
                                     const std::vector<double>& times, int quad_points) {
  const int px = field.space.degree;
  const BasisTable xt(field.space.knots, quad_points > 0 ? quad_points : px + 3, 1);
  const int Ns = field.space.dim();
  std::vector<double> vq(static_cast<std::size_t>(xt.num_elements()) * xt.num_points());
  for (int ex = 0; ex < xt.num_elements(); ++ex)
    for (int qx = 0; qx < xt.num_points(); ++qx)
      vq[ex * xt.num_points() + qx] = V ? V(xt.point(ex, qx)) : 0.0;

  ConservationReport r;
  for (double t : times) {
    const Eigen::VectorXcd c = field.spatial_coefficients(t, 0);
    double mass = 0.0, kinetic = 0.0, potential = 0.0;
    for (int ex = 0; ex < xt.num_elements(); ++ex)
      for (int qx = 0; qx < xt.num_points(); ++qx) {
        cplx v = 0.0, dv = 0.0;
        for (int b = 0; b <= px; ++b) {
          const int i = ex + b - 1;
          if (i < 0 || i >= Ns) continue;
          v += c(i) * xt.basis(ex, qx, 0, b);
          dv += c(i) * xt.basis(ex, qx, 1, b);
        }
        const double w = xt.weight(ex, qx);
        mass += w * std::norm(v);
        kinetic += w * std::norm(dv);
        potential += w * vq[ex * xt.num_points() + qx] * std::norm(v);
      }
    r.times.push_back(t);
    r.mass.push_back(mass);
    r.energy.push_back(-0.5 * kinetic + potential);
  }
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    r.mass_dev.push_back(std::abs(r.mass[k] - r.mass.front()));
    r.energy_dev.push_back(std::abs(r.energy[k] - r.energy.front()));
  }
  return r;
}

Potential OscillatorProblem::potential() const {
  const double w = omega;
  return [w](double x) { return oscillator_potential(w, x); };
}

ExactField OscillatorProblem::exact() const {
  const double w = omega;
  const int n = hermite;
  return [w, n](double x, double t) { return exact_state(n, w, x, t); };
}

OscillatorRun solve_oscillator(const OscillatorProblem& problem, int p, int Nt, int Nx,
                               SolverPath path) {
  const SpatialSystem spatial = assemble_spatial(spatial_space(p, Nx, problem.domain), problem.potential());
  const double w = problem.omega;
  const int n = problem.hermite;
  OscillatorRun run{assemble_spacetime(p, Nt, problem.T, spatial, nullptr,
                                       [w, n](double x) { return exact_state(n, w, x, 0.0).value; }),
                    {}};
  run.field = path == SolverPath::Direct ? direct_solve(run.system) : bartels_stewart_solve(run.system);
  return run;
}

void fill_rates(ErrorReport& report) {
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    ErrorRow& r = report.rows[k];
    if (k == 0) {
      r.rate_l2 = r.rate_h1 = kNaN;
      continue;
    }
    const ErrorRow& prev = report.rows[k - 1];
    const double h_prev = std::max(prev.ht, prev.hx), h_cur = std::max(r.ht, r.hx);
    const double lh = std::log(h_prev / h_cur);
    r.rate_l2 = lh != 0.0 ? std::log(prev.rel_l2 / r.rel_l2) / lh : kNaN;
    r.rate_h1 = lh != 0.0 ? std::log(prev.rel_h1 / r.rel_h1) / lh : kNaN;
  }
}

OscillatorProblem problem_from(const ExperimentConfig& cfg) {
  cfg.validate();
  OscillatorProblem problem;
  problem.omega = cfg.omega;
  problem.hermite = cfg.hermite;
  problem.domain = cfg.domain;
  problem.T = cfg.t_final;
  return problem;
}

int matching_space_elements(const OscillatorProblem& problem, int Nt) {
  const long Nx = std::lround(problem.domain.length() * Nt / problem.T);
  return static_cast<int>(std::max(2L, Nx));
}

ErrorReport run_convergence(const ExperimentConfig& cfg) {
  const OscillatorProblem problem = problem_from(cfg);
  const int p = cfg.degree.value_or(2);
  const std::vector<int> nts = cfg.sizes.empty() ? std::vector<int>{16, 32, 64}
                                                 : as_ints(cfg.sizes, "convergence sizes");
  ErrorReport report;
  for (int Nt : nts) {
    const int Nx = cfg.nx.value_or(matching_space_elements(problem, Nt));
    try {
      report.rows.push_back(error_row(problem, p, Nt, Nx, cfg.quad));
    } catch (const SingularSystemError& e) {
      throw SingularSystemError(std::string(e.what()) + " (Nt=" + std::to_string(Nt) +
                                    ", Nx=" + std::to_string(Nx) + ")",
                                e.magnitude());
    }
  }
  fill_rates(report);
  return report;
}

ErrorReport run_stability(const ExperimentConfig& cfg) {
  const OscillatorProblem problem = problem_from(cfg);
  const int p = cfg.degree.value_or(3);
  const int Nt = cfg.nt.value_or(16);
  const std::vector<double> ratios =
      cfg.sizes.empty() ? std::vector<double>{1, 2, 4, 8, 16, 32, 64, 128} : cfg.sizes;
  const int base = matching_space_elements(problem, Nt);
  ErrorReport report;
  for (double ratio : ratios) {
    const int Nx = static_cast<int>(std::max(2L, std::lround(base * ratio)));
    report.rows.push_back(error_row(problem, p, Nt, Nx, cfg.quad));
  }
  fill_rates(report);
  return report;
}

ConservationReport run_conservation(const ExperimentConfig& cfg) {
  const OscillatorProblem problem = problem_from(cfg);
  const int p = cfg.degree.value_or(2);
  const int Nt = cfg.nt.value_or(64);
  const int Nx = cfg.nx.value_or(matching_space_elements(problem, Nt));
  const OscillatorRun run = solve_oscillator(problem, p, Nt, Nx);
  std::vector<double> times;
  for (int k = 0; k <= Nt; ++k) times.push_back(k == Nt ? problem.T : problem.T * k / Nt);
  return functionals_trace(run.field, problem.potential(), times, cfg.quad);
}

ConditioningReport run_conditioning(const ExperimentConfig& cfg) {
  cfg.validate();
  const int p = cfg.degree.value_or(2);
  const std::vector<int> sizes =
      cfg.sizes.empty() ? std::vector<int>{100, 200, 400} : as_ints(cfg.sizes, "conditioning sizes");
  const std::vector<double> rhos = cfg.rho.empty() ? std::vector<double>{1, 10, 100} : cfg.rho;
  return conditioning_sweep(p, sizes, rhos, parse_norm_kind(cfg.norm));
}

PencilSpectrum run_gevp(const ExperimentConfig& cfg) {
  cfg.validate();
  return gevp_spectrum(cfg.degree.value_or(2), cfg.nt.value_or(16));
}

std::vector<WaveRow> run_wave(const ExperimentConfig& cfg) {
  cfg.validate();
  const int p = cfg.degree.value_or(2);
  const std::vector<int> sizes =
      cfg.sizes.empty() ? std::vector<int>{100, 200, 400} : as_ints(cfg.sizes, "wave sizes");
  const std::vector<double> mus = cfg.rho.empty() ? std::vector<double>{1, 25} : cfg.rho;
  std::vector<WaveRow> rows;
  for (int n : sizes) {
    if (n < p) throw InvalidArgument("wave-check: size below the degree");
    for (double mu : mus) {
      const BlockSystem sys = assemble_block_system(BlockKind::Wave, p, n - p + 1, cfg.t_final, mu, nullptr);
      const SchurComplementReport r = schur_complement_report(sys, NormKind::One);
      rows.push_back({p, n, mu, r.kappa_block, r.kappa_S, r.lemma_bound});
    }
  }
  return rows;
}

std::vector<SymbolRow> run_symbol(const ExperimentConfig& cfg) {
  cfg.validate();
  const int p = cfg.degree.value_or(2);
  const std::vector<double> rhos = cfg.rho.empty() ? log_spaced(0.05, 50.0, 20) : cfg.rho;
  const TemporalSymbols sym = temporal_symbols(p);
  std::vector<SymbolRow> rows;
  for (double rho : rhos) {
    const SymbolPolynomial q = sym.scaled(rho);
    SymbolRow row;
    row.p = p;
    row.rho = rho;
    row.type = classify_roots(q);
    row.reciprocal = is_reciprocal(q);
    double star = 0.0;
    for (double th : locate_unit_zeros(p, rho))
      if (std::abs(th) > std::abs(star)) star = th;
    row.theta_star = star;
    rows.push_back(row);
  }
  return rows;
}

SolveSummary run_solve(const ExperimentConfig& cfg) {
  const OscillatorProblem problem = problem_from(cfg);
  const int p = cfg.degree.value_or(2);
  const int Nt = cfg.nt.value_or(16);
  const int Nx = cfg.nx.value_or(matching_space_elements(problem, Nt));
  const OscillatorRun run = solve_oscillator(problem, p, Nt, Nx);
  SolveSummary s;
  s.p = p;
  s.ht = problem.T / Nt;
  s.hx = problem.domain.length() / Nx;
  s.errors = error_norms(run.field, problem.exact(), cfg.quad);
  const ConservationReport c = functionals_trace(run.field, problem.potential(), {0.0, problem.T}, cfg.quad);
  s.mass_dev_T = c.mass_dev.back();
  s.energy_dev_T = c.energy_dev.back();
  return s;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const CsvTable& table, std::ostream& out) {
  const auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
}

std::vector<std::string> experiment_kinds() {
  return {"convergence", "stability", "conservation", "conditioning",
          "gevp",        "symbol",    "wave-check",   "solve"};
}

CsvTable run_experiment(const ExperimentConfig& cfg) {
  const auto num = format_number;
  const auto integer = [](long v) { return std::to_string(v); };
  CsvTable t;
  if (cfg.kind == "convergence") {
    t.header = {"p", "ht", "hx", "relL2", "relH1", "rateL2", "rateH1"};
    for (const ErrorRow& r : run_convergence(cfg).rows)
      t.rows.push_back({integer(r.p), num(r.ht), num(r.hx), num(r.rel_l2), num(r.rel_h1),
                        num(r.rate_l2), num(r.rate_h1)});
  } else if (cfg.kind == "stability") {
    t.header = {"p", "ht", "hx", "ratio", "relL2", "relH1"};
    for (const ErrorRow& r : run_stability(cfg).rows)
      t.rows.push_back({integer(r.p), num(r.ht), num(r.hx), num(r.ht / r.hx), num(r.rel_l2),
                        num(r.rel_h1)});
  } else if (cfg.kind == "conservation") {
    t.header = {"p", "t", "mass_dev", "energy_dev"};
    const ConservationReport r = run_conservation(cfg);
    for (std::size_t k = 0; k < r.times.size(); ++k)
      t.rows.push_back({integer(cfg.degree.value_or(2)), num(r.times[k]), num(r.mass_dev[k]),
                        num(r.energy_dev[k])});
  } else if (cfg.kind == "conditioning") {
    t.header = {"p", "n", "rho", "kappa", "norm"};
    const ConditioningReport r = run_conditioning(cfg);
    for (const ConditioningRow& row : r.rows)
      t.rows.push_back({integer(r.p), integer(row.n), num(row.rho), num(row.kappa), to_string(r.norm)});
  } else if (cfg.kind == "gevp") {
    t.header = {"p", "Nt", "re_lambda", "im_lambda"};
    const PencilSpectrum s = run_gevp(cfg);
    for (const cplx& l : s.eigenvalues)
      t.rows.push_back({integer(s.p), integer(s.Nt), num(l.real()), num(l.imag())});
  } else if (cfg.kind == "symbol") {
    t.header = {"p", "rho", "s", "u", "l", "theta_star", "reciprocal"};
    for (const SymbolRow& r : run_symbol(cfg))
      t.rows.push_back({integer(r.p), num(r.rho), integer(r.type.s), integer(r.type.u),
                        integer(r.type.l), num(r.theta_star), r.reciprocal ? "true" : "false"});
  } else if (cfg.kind == "wave-check") {
    t.header = {"p", "n", "mu", "kappa_block", "kappa_schur", "lemma_bound"};
    for (const WaveRow& r : run_wave(cfg))
      t.rows.push_back({integer(r.p), integer(r.n), num(r.mu), num(r.kappa_block),
                        num(r.kappa_schur), num(r.lemma_bound)});
  } else if (cfg.kind == "solve") {
    t.header = {"p", "ht", "hx", "relL2", "relH1", "mass_dev_T", "energy_dev_T"};
    const SolveSummary s = run_solve(cfg);
    t.rows.push_back({integer(s.p), num(s.ht), num(s.hx), num(s.errors.rel_l2),
                      num(s.errors.rel_h1), num(s.mass_dev_T), num(s.energy_dev_T)});
  } else {
    throw InvalidArgument("unknown experiment '" + cfg.kind + "'");
  }
  return t;
}

}  // namespace stschrod
