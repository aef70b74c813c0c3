#pragma once

// One-dimensional spline space with homogeneous Dirichlet conditions, its mass
// matrix, the Hamiltonian form matrix and the L2 projection.

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "stschrod/band_matrix.hpp"
#include "stschrod/bspline.hpp"

namespace stschrod {

using cplx = std::complex<double>;
using Potential = std::function<double(double)>;
using SpatialFunction = std::function<cplx(double)>;

/// Clamped spline space on (a, b) with the first and last B-spline removed.
/// Interior function i corresponds to the full-space function i + 1.
struct SpatialSpace {
  int degree = 0;
  int Nx = 0;
  Interval domain;
  KnotVector knots;
  double hx = 0.0;

  int dim() const { return Nx + degree - 2; }
};

/// M(i, r) = (phi_r, phi_i) and A(i, r) = 1/2 (phi_r', phi_i') - (V phi_r, phi_i):
/// the weak form of -(1/2 d^2/dx^2 + V). Both have bandwidth p_x.
struct SpatialSystem {
  SpatialSpace space;
  BandMatrix<double> M;
  BandMatrix<double> A;
  Potential V;
};

SpatialSpace spatial_space(int px, int Nx, Interval domain);

/// Quadrature defaults to p_x + 3 Gauss points per element. An empty V means V = 0.
SpatialSystem assemble_spatial(const SpatialSpace& space, const Potential& V, int quad_points = 0);

/// Load vector (f, phi_i) with p_x + 3 points per element (or quad_points).
Eigen::VectorXcd load_vector(const SpatialSpace& space, const SpatialFunction& f, int quad_points = 0);

/// Coefficients c with M c = (f, phi_i).
Eigen::VectorXcd l2_project(const SpatialSystem& system, const SpatialFunction& f);
Eigen::VectorXcd l2_project(const SpatialSpace& space, const SpatialFunction& f);

/// Value (deriv = 0) or derivative of sum_i c_i phi_i at x.
cplx evaluate_spatial(const SpatialSpace& space, const Eigen::VectorXcd& coefficients, double x,
                      int deriv = 0);

}  // namespace stschrod
