#pragma once

// Temporal Petrov-Galerkin matrices for maximal-regularity splines and the
// scalar model problem  i psi' + mu psi = f,  psi(0) = psi0.

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "stschrod/bspline.hpp"

namespace stschrod {

using cplx = std::complex<double>;
using ScalarFunction = std::function<cplx(double)>;

/// Trial functions phi_1..phi_n (vanishing at 0) against test functions
/// phi_0..phi_{n-1} (vanishing at T), n = Nt + p - 1:
///   B(l, j) = (phi_{j+1}', phi_l'),   C(l, j) = (phi_{j+1}', phi_l)
/// with 0-based l, j. The *_ext_col0 vectors hold the column of phi_0.
struct TemporalMatrices {
  int p = 0;
  int Nt = 0;
  double T = 0.0;
  double ht = 0.0;
  KnotVector knots;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::VectorXd B_ext_col0;
  Eigen::VectorXd C_ext_col0;

  int size() const { return static_cast<int>(B.rows()); }
};

/// K = i B_n - rho C_n with B_n = ht B and C_n = C; depends on (p, rho) only.
struct ScaledSystem {
  int p = 0;
  int Nt = 0;
  double rho = 0.0;
  Eigen::MatrixXcd K;
};

/// Discrete solution of the scalar problem. `coefficients` runs over the full
/// basis phi_0..phi_n; the entry for phi_0 equals psi0.
struct ScalarSolution {
  KnotVector knots;
  Eigen::VectorXcd coefficients;

  cplx operator()(double t) const;
  cplx derivative(double t) const;
};

/// Quadrature defaults to p + 3 Gauss points per element.
TemporalMatrices assemble_temporal(int p, int Nt, double T, int quad_points = 0);

ScaledSystem scaled_system(int p, int Nt, double rho);

/// rhs(l) = (f, phi_l')_{(0,T)} + mu psi0 phi_l(0). An empty f means f = 0.
Eigen::VectorXcd scalar_rhs(const TemporalMatrices& tm, double mu, cplx psi0,
                            const ScalarFunction& f, int quad_points = 0);
Eigen::VectorXcd scalar_rhs(int p, int Nt, double T, double mu, cplx psi0,
                            const ScalarFunction& f);

/// Solves (i B - mu C) u = rhs. Throws SingularSystemError when the smallest
/// singular value drops below 1e-13 ||K||_F.
ScalarSolution solve_scalar_ivp(const TemporalMatrices& tm, double mu, cplx psi0,
                                const ScalarFunction& f);
ScalarSolution solve_scalar_ivp(int p, int Nt, double T, double mu, cplx psi0,
                                const ScalarFunction& f);

/// psi(t) = e^{i mu t} psi0 - i int_0^t e^{i mu (t-s)} f(s) ds, with the
/// integral evaluated by adaptive Gauss-Legendre quadrature.
cplx exact_ivp_solution(double mu, cplx psi0, const ScalarFunction& f, double t);

/// Adaptive Gauss-Legendre quadrature of a complex integrand on [a, b].
cplx integrate_adaptive(const ScalarFunction& g, double a, double b, double tol = 1e-13);

}  // namespace stschrod
