#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "stschrod/config.hpp"
#include "stschrod/error.hpp"
#include "stschrod/experiments.hpp"

using namespace stschrod;

TEST_SUITE("config") {

TEST_CASE("key/value parsing") {
  std::istringstream in(
      "# oscillator run\n"
      "degree = 3\n"
      "sizes = [16, 32, 64]   # time meshes\n"
      "domain = \"-4,4\"\n"
      "out = 'run.csv'\n"
      "\n"
      "t_final = 0.5\n");
  ExperimentConfig cfg;
  for (const auto& [k, v] : parse_key_values(in)) apply_setting(cfg, k, v);
  CHECK(cfg.degree == 3);
  CHECK(cfg.sizes == std::vector<double>{16, 32, 64});
  CHECK(cfg.domain.a == -4.0);
  CHECK(cfg.domain.b == 4.0);
  CHECK(cfg.out == "run.csv");
  CHECK(cfg.t_final == 0.5);
  CHECK(cfg.omega == 10.0);
  CHECK(cfg.hermite == 2);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("malformed input is rejected") {
  std::istringstream dup("nt = 4\nnt = 8\n");
  CHECK_THROWS_AS(parse_key_values(dup), InvalidArgument);
  std::istringstream no_eq("degree 2\n");
  CHECK_THROWS_AS(parse_key_values(no_eq), InvalidArgument);

  ExperimentConfig cfg;
  CHECK_THROWS_AS(apply_setting(cfg, "colour", "red"), InvalidArgument);
  CHECK_THROWS_AS(apply_setting(cfg, "degree", "2.5"), InvalidArgument);
  CHECK_THROWS_AS(apply_setting(cfg, "omega", "ten"), InvalidArgument);
  CHECK_THROWS_AS(apply_setting(cfg, "domain", "1"), InvalidArgument);
  CHECK_THROWS_AS(apply_setting(cfg, "sizes", "[1,,2]"), InvalidArgument);

  ExperimentConfig bad;
  bad.domain = {1.0, -1.0};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = ExperimentConfig{};
  bad.omega = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = ExperimentConfig{};
  bad.nt = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  CHECK_THROWS_AS(load_config("/nonexistent/config.toml"), InvalidArgument);
}

}  // TEST_SUITE

TEST_SUITE("experiments") {

TEST_CASE("error norms of the exact solution vanish") {
  const OscillatorProblem problem;
  const ExactField exact = problem.exact();
  const FieldEvaluator same = [&](double x, double t) {
    const StateValue s = exact(x, t);
    return FieldValue{s.value, s.dt, s.dx};
  };
  const ErrorNorms e = error_norms(same, exact, 1.0, 4, problem.domain, 12, 8);
  CHECK(e.rel_l2 <= 1e-15);
  CHECK(e.rel_h1 <= 1e-15);

  // Doubling the discrepancy doubles the error; relative normalization is fixed.
  const FieldEvaluator offset = [&](double x, double t) {
    const StateValue s = exact(x, t);
    return FieldValue{s.value + 0.01 * x, s.dt, s.dx + 0.01};
  };
  const FieldEvaluator offset2 = [&](double x, double t) {
    const StateValue s = exact(x, t);
    return FieldValue{s.value + 0.02 * x, s.dt, s.dx + 0.02};
  };
  const ErrorNorms a = error_norms(offset, exact, 1.0, 4, problem.domain, 12, 8);
  const ErrorNorms b = error_norms(offset2, exact, 1.0, 4, problem.domain, 12, 8);
  CHECK(b.abs_l2 == doctest::Approx(2 * a.abs_l2).epsilon(1e-12));
  CHECK(b.abs_h1 == doctest::Approx(2 * a.abs_h1).epsilon(1e-12));
  CHECK(b.rel_l2 / b.abs_l2 == doctest::Approx(a.rel_l2 / a.abs_l2).epsilon(1e-12));

  const ExactField zero = [](double, double) { return StateValue{0.0, 0.0, 0.0}; };
  CHECK_THROWS_AS(error_norms(same, zero, 1.0, 2, problem.domain, 4, 4), Error);
}

TEST_CASE("fast field path agrees with pointwise evaluation") {
  const OscillatorProblem problem;
  const OscillatorRun run = solve_oscillator(problem, 2, 8, 24);
  const FieldEvaluator eval = [&](double x, double t) { return evaluate_field(run.field, x, t); };
  const ErrorNorms fast = error_norms(run.field, problem.exact());
  const ErrorNorms slow = error_norms(eval, problem.exact(), 1.0, 8, problem.domain, 24, 7);
  CHECK(fast.rel_l2 == doctest::Approx(slow.rel_l2).epsilon(1e-10));
  CHECK(fast.rel_h1 == doctest::Approx(slow.rel_h1).epsilon(1e-10));
}

TEST_CASE("functionals at t = 0 come from the projected datum") {
  const OscillatorProblem problem;
  const OscillatorRun run = solve_oscillator(problem, 2, 8, 48);
  const ConservationReport r = functionals_trace(run.field, problem.potential(), {0.0, 0.5, 1.0});
  const Eigen::MatrixXcd M = run.system.spatial.M.to_dense().cast<cplx>();
  const Eigen::MatrixXcd A = run.system.spatial.A.to_dense().cast<cplx>();
  const Eigen::VectorXcd& c = run.system.lifting;
  CHECK(r.mass[0] == doctest::Approx((c.adjoint() * M * c)(0, 0).real()).epsilon(1e-12));
  CHECK(r.energy[0] == doctest::Approx(-(c.adjoint() * A * c)(0, 0).real()).epsilon(1e-12));
  CHECK(r.mass_dev[0] == 0.0);
  CHECK(r.mass_dev[2] <= 1e-12);
  // Exact state: mass 1 and energy -(n + 1/2) omega.
  CHECK(r.mass[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.energy[0] == doctest::Approx(-25.0).epsilon(1e-2));
}

TEST_CASE("rates follow the emitted errors") {
  ErrorReport rep;
  rep.rows = {{2, 16, 96, 1.0 / 16, 1.0 / 16, 0.4, 0.8, 0, 0},
              {2, 32, 192, 1.0 / 32, 1.0 / 32, 0.05, 0.2, 0, 0}};
  fill_rates(rep);
  CHECK(std::isnan(rep.rows[0].rate_l2));
  CHECK(rep.rows[1].rate_l2 == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(rep.rows[1].rate_h1 == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("CSV output") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(std::nan("")) == "");
  CHECK(format_number(INFINITY) == "inf");

  ExperimentConfig cfg;
  cfg.kind = "convergence";
  cfg.degree = 1;
  cfg.sizes = {4, 8};
  const CsvTable t = run_experiment(cfg);
  std::ostringstream out;
  write_csv(t, out);
  const std::string text = out.str();
  CHECK(text.rfind("p,ht,hx,relL2,relH1,rateL2,rateH1\n", 0) == 0);
  CHECK(t.rows.size() == 2);
  CHECK(t.rows[0][5].empty());
  // Deterministic output.
  std::ostringstream again;
  write_csv(run_experiment(cfg), again);
  CHECK(again.str() == text);

  cfg.kind = "bogus";
  CHECK_THROWS_AS(run_experiment(cfg), InvalidArgument);
}

TEST_CASE("every subcommand produces its header") {
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"stability", "p,ht,hx,ratio,relL2,relH1"},
      {"conservation", "p,t,mass_dev,energy_dev"},
      {"conditioning", "p,n,rho,kappa,norm"},
      {"gevp", "p,Nt,re_lambda,im_lambda"},
      {"symbol", "p,rho,s,u,l,theta_star,reciprocal"},
      {"wave-check", "p,n,mu,kappa_block,kappa_schur,lemma_bound"},
      {"solve", "p,ht,hx,relL2,relH1,mass_dev_T,energy_dev_T"}};
  for (const auto& [kind, header] : expected) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.degree = 2;
    cfg.nt = 8;
    if (kind == "stability") cfg.sizes = {1, 2};
    if (kind == "conditioning" || kind == "wave-check") cfg.sizes = {20, 40};
    if (kind == "conservation") cfg.nx = 24;
    if (kind == "symbol") cfg.rho = {1.6};
    std::ostringstream out;
    const CsvTable t = run_experiment(cfg);
    write_csv(t, out);
    CHECK(out.str().substr(0, header.size() + 1) == header + "\n");
    CHECK(!t.rows.empty());
    if (kind == "conservation") CHECK(t.rows.size() == 9);
  }
}

TEST_CASE("singleton conditioning run reproduces condition_number") {
  ExperimentConfig cfg;
  cfg.kind = "conditioning";
  cfg.degree = 2;
  cfg.sizes = {50};
  cfg.rho = {3.0};
  const ConditioningReport r = run_conditioning(cfg);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].kappa == condition_number(scaled_system(2, 49, 3.0).K));
}

TEST_CASE("symbol run at rho = 8/5 finds theta* = pi/2") {
  ExperimentConfig cfg;
  cfg.degree = 2;
  cfg.rho = {1.6};
  const std::vector<SymbolRow> rows = run_symbol(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(std::abs(std::abs(rows[0].theta_star) - M_PI / 2) <= 1e-10);
  CHECK(rows[0].type.u == 2);
  CHECK(rows[0].reciprocal);
}

}  // TEST_SUITE
