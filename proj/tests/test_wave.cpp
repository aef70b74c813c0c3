#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "stschrod/error.hpp"
#include "stschrod/wave.hpp"

using namespace stschrod;

TEST_SUITE("wave") {

TEST_CASE("block layout") {
  const int p = 2, Nt = 6;
  const TemporalMatrices tm = assemble_temporal(p, Nt, 1.0);
  const int n = tm.size();

  const BlockSystem w0 = assemble_block_system(BlockKind::Wave, p, Nt, 1.0, 0.0, nullptr);
  REQUIRE(w0.matrix.rows() == 2 * n);
  CHECK(w0.matrix.topLeftCorner(n, n) == tm.B);
  CHECK(w0.matrix.topRightCorner(n, n) == tm.C);
  CHECK(w0.matrix.bottomLeftCorner(n, n).norm() == 0.0);
  CHECK(w0.matrix.bottomRightCorner(n, n) == tm.B);
  CHECK(w0.rhs.norm() == 0.0);

  const BlockSystem s = assemble_block_system(BlockKind::SchrodingerSplit, p, Nt, 1.0, 3.0, nullptr);
  CHECK(s.matrix.topRightCorner(n, n) == -3.0 * tm.C);
  CHECK(s.matrix.bottomLeftCorner(n, n) == 3.0 * tm.C);
}

TEST_CASE("split system with mu_s = -1 and f_r = -f is the wave system with mu_w = 1") {
  const ScalarFunction f = [](double t) { return cplx(std::sin(2 * t) + t, 0.0); };
  const ScalarFunction minus_f = [&](double t) { return -f(t); };
  for (int p : {1, 2, 3}) {
    const BlockSystem s = assemble_block_system(BlockKind::SchrodingerSplit, p, 8, 1.0, -1.0, minus_f);
    const BlockSystem w = assemble_block_system(BlockKind::Wave, p, 8, 1.0, 1.0, f);
    CHECK((s.matrix - w.matrix).cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.rhs - w.rhs).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(assemble_block_system(BlockKind::Wave, 2, 8, 1.0, -1.0, nullptr), InvalidArgument);
  CHECK_THROWS_AS(assemble_block_system(BlockKind::Wave, 2, 8, 1.0, NAN, nullptr), InvalidArgument);
  CHECK_THROWS_AS(assemble_block_system(BlockKind::Wave, 2, 8, 1.0, 1.0,
                                        [](double) { return cplx(0.0, 1.0); }),
                  InvalidArgument);
  CHECK_THROWS_AS(schur_complement_report(Eigen::MatrixXd::Zero(3, 3), Eigen::MatrixXd::Identity(3, 3),
                                          1.0, Eigen::MatrixXd::Identity(6, 6)),
                  SingularSystemError);
}

TEST_CASE("equivalence of the complex and split formulations") {
  CHECK(verify_equivalence(2, 8, 1.0, 4.0, nullptr) == 0.0);
  CHECK(verify_equivalence(2, 16, 1.0, 5.0, [](double t) { return std::polar(1.0, t); }) <= 1e-11);
  CHECK(verify_equivalence(3, 8, 1.0, -2.0, [](double t) { return cplx(t, t * t); }) <= 1e-11);
}

TEST_CASE("Schur complements") {
  SUBCASE("zero coefficient") {
    const TemporalMatrices tm = assemble_temporal(2, 10, 1.0);
    const BlockSystem w = assemble_block_system(BlockKind::Wave, 2, 10, 1.0, 0.0, nullptr);
    const SchurComplementReport r = schur_complement_report(w);
    CHECK(r.S == tm.B);
    CHECK(r.kappa_S == doctest::Approx(r.kappa_B).epsilon(1e-12));
    CHECK(r.lemma_bound >= r.kappa_B);
  }
  SUBCASE("mu_s = sqrt(mu_w) gives identical complements") {
    const BlockSystem s = assemble_block_system(BlockKind::SchrodingerSplit, 2, 16, 1.0, 3.0, nullptr);
    const BlockSystem w = assemble_block_system(BlockKind::Wave, 2, 16, 1.0, 9.0, nullptr);
    const SchurComplementReport rs = schur_complement_report(s), rw = schur_complement_report(w);
    CHECK((rs.S - rw.S).cwiseAbs().maxCoeff() <= 1e-12 * rs.S.cwiseAbs().maxCoeff());
    CHECK(rs.kappa_S == doctest::Approx(rw.kappa_S).epsilon(1e-10));
    CHECK(rs.bound_holds());
    CHECK(rw.bound_holds());
  }
  SUBCASE("complement is the leading block of the inverse") {
    const BlockSystem s = assemble_block_system(BlockKind::SchrodingerSplit, 3, 8, 1.0, 2.0, nullptr);
    const int n = s.half_size();
    const Eigen::MatrixXd inv = s.matrix.inverse();
    const Eigen::MatrixXd Sinv = schur_complement_report(s).S.inverse();
    CHECK((inv.topLeftCorner(n, n) - Sinv).cwiseAbs().maxCoeff() <= 1e-10 * Sinv.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("lemma bound on random instances in the one- and infinity-norm") {
  std::mt19937 gen(2024);
  std::uniform_int_distribution<int> size(4, 16);
  std::normal_distribution<double> dist;
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(gen);
    Eigen::MatrixXd B(n, n), C(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        B(i, j) = dist(gen);
        C(i, j) = dist(gen);
      }
    B += n * Eigen::MatrixXd::Identity(n, n);
    const double c = std::exp(dist(gen));
    Eigen::MatrixXd block(2 * n, 2 * n);
    block << B, -std::sqrt(c) * C, std::sqrt(c) * C, B;
    for (NormKind kind : {NormKind::One, NormKind::Infinity}) {
      const SchurComplementReport r = schur_complement_report(B, C, c, block, kind);
      REQUIRE(std::isfinite(r.kappa_block));
      CHECK(r.kappa_S <= r.lemma_bound);
      ++checked;
    }
  }
  CHECK(checked == 200);

  const BlockSystem s = assemble_block_system(BlockKind::SchrodingerSplit, 2, 32, 1.0, 3.0, nullptr);
  CHECK(schur_complement_report(s, NormKind::One).bound_holds());
  CHECK(schur_complement_report(s, NormKind::Infinity).bound_holds());
}

TEST_CASE("B is invertible") {
  for (int p = 1; p <= 5; ++p)
    for (int Nt : {8, 16, 32, 64}) {
      const TemporalMatrices tm = assemble_temporal(p, Nt, 1.0);
      const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(tm.B).singularValues();
      CHECK(sv(sv.size() - 1) > 1e-8 * sv(0));
    }
}

TEST_CASE("wave conditioning sweep") {
  for (int p : {1, 2, 3}) {
    const ConditioningReport r = wave_conditioning_sweep(p, {100, 200, 400}, {1.0, 25.0});
    REQUIRE(r.rows.size() == 6);
    for (const auto& row : r.rows) CHECK(std::isfinite(row.kappa));
    REQUIRE(r.slopes.size() == 2);
    for (double s : r.slopes) CHECK(s <= 5.0);
  }
  const ConditioningReport single = wave_conditioning_sweep(2, {40}, {4.0}, NormKind::One);
  const BlockSystem w = assemble_block_system(BlockKind::Wave, 2, 39, 1.0, 4.0, nullptr);
  CHECK(single.rows[0].kappa == condition_number(w.matrix, NormKind::One));
  CHECK(single.slopes.empty());
  CHECK_THROWS_AS(wave_conditioning_sweep(2, {200, 100}, {1.0}), InvalidArgument);
}

}  // TEST_SUITE
