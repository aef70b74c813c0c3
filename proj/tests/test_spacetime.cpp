#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "stschrod/conditioning.hpp"
#include "stschrod/error.hpp"
#include "stschrod/oscillator.hpp"
#include "stschrod/spacetime.hpp"

using namespace stschrod;

namespace {

const Interval kDomain{-3.0, 3.0};
const double kOmega = 10.0;

Potential oscillator() {
  return [](double x) { return oscillator_potential(kOmega, x); };
}

Eigen::MatrixXcd random_block(int rows, int cols, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(dist(gen), dist(gen));
  return m;
}

Eigen::VectorXcd flatten(const Eigen::MatrixXcd& U) {
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> r = U;
  return Eigen::Map<const Eigen::VectorXcd>(r.data(), r.size());
}

double rel_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1e-300, b.cwiseAbs().maxCoeff());
}

SpaceTimeSystem oscillator_system(int p, int Nt, int px, int Nx, int state, double T = 1.0) {
  const SpatialSystem spatial = assemble_spatial(spatial_space(px, Nx, kDomain), oscillator());
  return assemble_spacetime(p, Nt, T, spatial, nullptr,
                            [state](double x) { return exact_state(state, kOmega, x, 0.0).value; });
}

// Mass c^H M c and energy -c^H A c of spatial coefficients.
double mass_of(const SpatialSystem& s, const Eigen::VectorXcd& c) {
  return (c.adjoint() * s.M.to_dense().cast<cplx>() * c)(0, 0).real();
}
double energy_of(const SpatialSystem& s, const Eigen::VectorXcd& c) {
  return -(c.adjoint() * s.A.to_dense().cast<cplx>() * c)(0, 0).real();
}

}  // namespace

TEST_SUITE("spacetime") {

TEST_CASE("Kronecker structure in time-major order") {
  const SpatialSystem spatial = assemble_spatial(spatial_space(2, 4, kDomain), oscillator());
  const SpaceTimeSystem sys =
      assemble_spacetime(assemble_temporal(2, 4, 1.0), spatial, nullptr,
                         Eigen::VectorXcd::Zero(spatial.space.dim()));
  const Eigen::MatrixXcd K = dense_operator(sys);
  const int n = sys.time_size(), Ns = sys.space_size();
  REQUIRE(K.rows() == n * Ns);
  const Eigen::MatrixXd M = spatial.M.to_dense(), A = spatial.A.to_dense();
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < Ns; ++i)
      for (int j = 0; j < n; ++j)
        for (int r = 0; r < Ns; ++r) {
          const cplx expected =
              cplx(0.0, sys.temporal.B(l, j) * M(i, r)) + sys.temporal.C(l, j) * A(i, r);
          CHECK(std::abs(K(l * Ns + i, j * Ns + r) - expected) <= 1e-15);
        }

  // Factored application agrees with the dense product.
  const Eigen::MatrixXcd U = random_block(n, Ns, 3);
  const Eigen::VectorXcd dense = K * flatten(U);
  CHECK((flatten(sys.apply(U)) - dense).cwiseAbs().maxCoeff() <= 1e-12 * dense.cwiseAbs().maxCoeff());
  CHECK_THROWS_AS(sys.apply(Eigen::MatrixXcd::Zero(n + 1, Ns)), InvalidArgument);
}

TEST_CASE("factored operator matches dense product at moderate size") {
  const SpaceTimeSystem sys = oscillator_system(3, 10, 3, 14, 0);
  REQUIRE(sys.time_size() * sys.space_size() <= 400);
  const Eigen::MatrixXcd U = random_block(sys.time_size(), sys.space_size(), 11);
  const Eigen::VectorXcd dense = dense_operator(sys) * flatten(U);
  CHECK((flatten(sys.apply(U)) - dense).cwiseAbs().maxCoeff() <= 1e-12 * dense.cwiseAbs().maxCoeff());
}

TEST_CASE("zero data gives zero rhs and zero solution") {
  const SpatialSystem spatial = assemble_spatial(spatial_space(2, 6, kDomain), oscillator());
  const SpaceTimeSystem sys =
      assemble_spacetime(2, 5, 1.0, spatial, nullptr, [](double) { return cplx(0.0); });
  CHECK(sys.rhs.norm() == 0.0);
  CHECK(direct_solve(sys).W.norm() == 0.0);
  CHECK(bartels_stewart_solve(sys).W.norm() == 0.0);
}

TEST_CASE("lifting enters the first rhs row only") {
  const SpaceTimeSystem sys = oscillator_system(2, 6, 2, 10, 1);
  const Eigen::VectorXcd Ac = sys.spatial.A.to_dense().cast<cplx>() * sys.lifting;
  CHECK((sys.rhs.row(0).transpose() + Ac).norm() <= 1e-14 * Ac.norm());
  CHECK(sys.rhs.bottomRows(sys.time_size() - 1).norm() == 0.0);
}

TEST_CASE("rhs of a separable forcing factorizes") {
  // F(x, t) = g(t) f(x)  =>  rhs = (g, phi_l') (f, phi_i).
  const SpatialSystem spatial = assemble_spatial(spatial_space(3, 8, kDomain), oscillator());
  const TemporalMatrices tm = assemble_temporal(2, 6, 1.0);
  const ScalarFunction g = [](double t) { return cplx(std::cos(3 * t), t); };
  const SpatialFunction f = [](double x) { return cplx(x * x, std::sin(x)); };
  const SpaceTimeSystem sys = assemble_spacetime(
      tm, spatial, [&](double x, double t) { return g(t) * f(x); },
      Eigen::VectorXcd::Zero(spatial.space.dim()));
  const Eigen::VectorXcd gt = scalar_rhs(tm, 0.0, 0.0, g);
  const Eigen::VectorXcd fx = load_vector(spatial.space, f);
  CHECK(rel_diff(sys.rhs, gt * fx.transpose()) <= 1e-13);
}

TEST_CASE("eigen-aligned data decouples into the scalar problem") {
  for (int p : {1, 2, 3}) {
    const SpatialSystem spatial = assemble_spatial(spatial_space(3, 24, kDomain), oscillator());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(spatial.A.to_dense(),
                                                                   spatial.M.to_dense());
    const TemporalMatrices tm = assemble_temporal(p, 8, 1.0);
    for (int k : {0, 2}) {
      const double lambda = es.eigenvalues()(k);
      const Eigen::VectorXcd phi = es.eigenvectors().col(k).cast<cplx>();
      const SpaceTimeSystem sys = assemble_spacetime(tm, spatial, nullptr, phi);
      const DiscreteField field = direct_solve(sys);
      const ScalarSolution scalar = solve_scalar_ivp(tm, -lambda, 1.0, nullptr);
      const Eigen::MatrixXcd expected = scalar.coefficients * phi.transpose();
      CHECK(rel_diff(field.W, expected) <= 1e-10);
    }
  }
}

TEST_CASE("direct solve residual") {
  const SpaceTimeSystem base = oscillator_system(2, 8, 2, 16, 0);
  SpaceTimeSystem sys = base;
  sys.rhs = random_block(sys.time_size(), sys.space_size(), 5);
  const Eigen::MatrixXcd U = direct_solve_coefficients(sys);
  CHECK((sys.apply(U) - sys.rhs).norm() <= 1e-10 * sys.rhs.norm());
}

TEST_CASE("single time unknown reduces to one spatial solve") {
  const SpatialSystem spatial = assemble_spatial(spatial_space(2, 10, kDomain), oscillator());
  SpaceTimeSystem sys = assemble_spacetime(assemble_temporal(1, 1, 1.0), spatial, nullptr,
                                           Eigen::VectorXcd::Zero(spatial.space.dim()));
  REQUIRE(sys.time_size() == 1);
  sys.rhs = random_block(1, sys.space_size(), 9);
  const double b = sys.temporal.B(0, 0), c = sys.temporal.C(0, 0);
  const Eigen::MatrixXcd K =
      cplx(0.0, b) * spatial.M.to_dense().cast<cplx>() + c * spatial.A.to_dense().cast<cplx>();
  const Eigen::VectorXcd expected = K.partialPivLu().solve(sys.rhs.row(0).transpose());
  CHECK(rel_diff(direct_solve_coefficients(sys).row(0).transpose(), expected) <= 1e-12);
  CHECK(rel_diff(bartels_stewart_coefficients(sys).row(0).transpose(), expected) <= 1e-12);
}

TEST_CASE("Schur decomposition invariants") {
  SUBCASE("diagonal input") {
    Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(4, 4);
    X.diagonal() << cplx(1, 2), cplx(-3, 0), cplx(0.5, -1), cplx(4, 4);
    const SchurFactors sf = schur_decompose(X);
    CHECK((sf.Q * sf.R * sf.Q.adjoint() - X).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((sf.R - sf.R.diagonal().asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("random 50x50") {
    const Eigen::MatrixXcd X = random_block(50, 50, 21);
    const SchurFactors sf = schur_decompose(X);
    const int n = 50;
    CHECK((sf.Q.adjoint() * sf.Q - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-11);
    double lower = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) lower = std::max(lower, std::abs(sf.R(i, j)));
    CHECK(lower <= 1e-11);
    CHECK((sf.Q * sf.R * sf.Q.adjoint() - X).cwiseAbs().maxCoeff() <=
          1e-9 * X.cwiseAbs().maxCoeff());
  }
  SUBCASE("diagonal of R matches the temporal pencil") {
    // X = (iB)^{-1} C has eigenvalues -i / lambda for B v = lambda C v.
    const int p = 2, Nt = 12;
    const TemporalMatrices tm = assemble_temporal(p, Nt, 1.0);
    const Eigen::MatrixXcd X =
        cplx(0.0, -1.0) * tm.B.partialPivLu().solve(tm.C).cast<cplx>();
    const SchurFactors sf = schur_decompose(X);
    const PencilSpectrum spec = gevp_spectrum(p, Nt);
    for (const cplx& lam : spec.eigenvalues) {
      const cplx target = cplx(0.0, -1.0) / lam;
      double best = 1e300;
      for (int k = 0; k < sf.R.rows(); ++k) best = std::min(best, std::abs(sf.R(k, k) - target));
      CHECK(best <= 1e-8 * std::abs(target));
    }
  }
}

TEST_CASE("Bartels-Stewart agrees with the direct solve") {
  for (int p : {1, 2, 3}) {
    const SpaceTimeSystem sys = oscillator_system(p, 8, p, 16, 2);
    const DiscreteField a = direct_solve(sys);
    const DiscreteField b = bartels_stewart_solve(sys);
    CHECK(rel_diff(b.W, a.W) <= 1e-9);
  }
  SpaceTimeSystem sys = oscillator_system(2, 8, 3, 16, 0);
  sys.rhs = random_block(sys.time_size(), sys.space_size(), 13);
  CHECK(rel_diff(bartels_stewart_coefficients(sys), direct_solve_coefficients(sys)) <= 1e-9);
}

TEST_CASE("field evaluation") {
  const SpaceTimeSystem sys = oscillator_system(2, 8, 3, 16, 1);
  const DiscreteField field = direct_solve(sys);

  // t = 0 gives the projected initial datum; the boundary is zero.
  for (double x : {-2.5, -0.7, 0.0, 0.31, 2.9}) {
    CHECK(std::abs(evaluate_field(field, x, 0.0).value - evaluate_spatial(sys.spatial.space, sys.lifting, x)) <= 1e-12);
  }
  for (double t : {0.0, 0.4, 1.0}) {
    CHECK(evaluate_field(field, -3.0, t).value == cplx(0.0));
    CHECK(evaluate_field(field, 3.0, t).value == cplx(0.0));
  }

  // Independent reconstruction from the tensor-product basis.
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), ut(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double x = ux(gen), t = ut(gen);
    const BasisEval bt = eval_all(field.time_knots, t, 1);
    const BasisEval bx = eval_all(field.space.knots, x, 1);
    cplx v = 0.0, vt = 0.0, vx = 0.0;
    for (int a = 0; a <= bt.degree; ++a)
      for (int b = 0; b <= bx.degree; ++b) {
        const int j = bt.first_active + a, i = bx.first_active + b - 1;
        if (i < 0 || i >= field.space.dim()) continue;
        v += field.W(j, i) * bt(0, a) * bx(0, b);
        vt += field.W(j, i) * bt(1, a) * bx(0, b);
        vx += field.W(j, i) * bt(0, a) * bx(1, b);
      }
    const FieldValue fv = evaluate_field(field, x, t);
    CHECK(std::abs(fv.value - v) <= 1e-12 * (1.0 + std::abs(v)));
    CHECK(std::abs(fv.dt - vt) <= 1e-12 * (1.0 + std::abs(vt)));
    CHECK(std::abs(fv.dx - vx) <= 1e-12 * (1.0 + std::abs(vx)));
  }
  CHECK_THROWS_AS(evaluate_field(field, 0.0, 1.5), DomainError);
  CHECK_THROWS_AS(evaluate_field(field, 3.5, 0.5), DomainError);
}

TEST_CASE("mass and energy are conserved at the final time") {
  for (int p : {1, 2, 3}) {
    const SpaceTimeSystem sys = oscillator_system(p, 8, 3, 16, 1);
    const DiscreteField field = bartels_stewart_solve(sys);
    const Eigen::VectorXcd c0 = field.spatial_coefficients(0.0);
    const Eigen::VectorXcd cT = field.spatial_coefficients(1.0);
    const double m0 = mass_of(sys.spatial, c0), e0 = energy_of(sys.spatial, c0);
    CHECK(std::abs(mass_of(sys.spatial, cT) - m0) <= 1e-10 * m0);
    CHECK(std::abs(energy_of(sys.spatial, cT) - e0) <= 1e-9 * std::abs(e0));
  }
}

}  // TEST_SUITE
