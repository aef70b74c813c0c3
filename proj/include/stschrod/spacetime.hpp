#pragma once

// Space-time Petrov-Galerkin system (i B (x) M + C (x) A) u = F with unknowns
// in time-major order, its direct and Bartels-Stewart solvers, and the
// resulting discrete field.

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "stschrod/spatial.hpp"
#include "stschrod/temporal.hpp"

namespace stschrod {

using cplx = std::complex<double>;
using SpaceTimeFunction = std::function<cplx(double x, double t)>;

/// Unknown U(j, i) multiplies phi_{j+1}(t) phi_i(x); rhs(l, i) is tested
/// against phi_l'(t) phi_i(x). The operator is U -> i B U M + C U A.
struct SpaceTimeSystem {
  TemporalMatrices temporal;
  SpatialSystem spatial;
  Eigen::VectorXcd lifting;  // Pi_x Psi0, constant in time
  Eigen::MatrixXcd rhs;      // n x Ns

  int time_size() const { return temporal.size(); }
  int space_size() const { return spatial.space.dim(); }

  /// Kronecker operator applied to a coefficient block (n x Ns).
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& U) const;
};

struct SchurFactors {
  Eigen::MatrixXcd Q;
  Eigen::MatrixXcd R;
};

/// Time coefficients over the full temporal basis phi_0..phi_n (row 0 is the
/// lifting) times the interior spatial basis.
struct DiscreteField {
  KnotVector time_knots;
  SpatialSpace space;
  Eigen::MatrixXcd W;  // (n+1) x Ns

  /// Spatial coefficients of the field (deriv = 0) or its time derivative at t.
  Eigen::VectorXcd spatial_coefficients(double t, int deriv = 0) const;
};

struct FieldValue {
  cplx value;
  cplx dt;
  cplx dx;
};

/// rhs(l, i) = (F, phi_l' phi_i)_{Q_T} - (A c0)_i phi_l(0). F may be empty (F = 0).
SpaceTimeSystem assemble_spacetime(int p, int Nt, double T, const SpatialSystem& spatial,
                                   const SpaceTimeFunction& F, const SpatialFunction& psi0);

/// Same with a precomputed lifting c0.
SpaceTimeSystem assemble_spacetime(const TemporalMatrices& temporal, const SpatialSystem& spatial,
                                   const SpaceTimeFunction& F, const Eigen::VectorXcd& lifting);

/// Dense Kronecker matrix in time-major order, for small checks.
Eigen::MatrixXcd dense_operator(const SpaceTimeSystem& system);

/// Adds the constant lifting to the solved coefficients.
DiscreteField make_field(const SpaceTimeSystem& system, const Eigen::MatrixXcd& U);

/// Sparse LU of the assembled Kronecker matrix (at most 2e5 unknowns).
/// Throws SingularSystemError on factorization failure.
Eigen::MatrixXcd direct_solve_coefficients(const SpaceTimeSystem& system);
DiscreteField direct_solve(const SpaceTimeSystem& system);

/// Complex Schur form X = Q R Q^H.
SchurFactors schur_decompose(const Eigen::MatrixXcd& X);

/// Schur form of X = (iB)^{-1} C, triangular back-substitution over time
/// blocks with shifted spatial solves (M + R_kk A).
Eigen::MatrixXcd bartels_stewart_coefficients(const SpaceTimeSystem& system);
DiscreteField bartels_stewart_solve(const SpaceTimeSystem& system);

FieldValue evaluate_field(const DiscreteField& field, double x, double t);

}  // namespace stschrod
