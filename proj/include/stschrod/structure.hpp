#pragma once

// Nearly-Toeplitz decomposition, symbol polynomials and their unit-circle
// behaviour for the temporal matrix families.

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace stschrod {

using cplx = std::complex<double>;

/// Toeplitz band a_{-m}..a_k plus dense (m+k)x(m+k) corner deviations.
struct NearlyToeplitz {
  int size = 0;
  int m = 0;
  int k = 0;
  std::vector<cplx> band;  // band[j + m] = a_j
  Eigen::MatrixXcd top_left;
  Eigen::MatrixXcd bottom_right;
  int deviation_count = 0;

  cplx coefficient(int j) const { return (j < -m || j > k) ? cplx(0.0) : band[j + m]; }
  /// Band Toeplitz matrix of the stored size with the corners added back.
  Eigen::MatrixXcd reconstruct() const;
};

/// q(z) = sum_i coefficients[i] z^i.
struct SymbolPolynomial {
  std::vector<cplx> coefficients;

  int degree() const;
  cplx operator()(cplx z) const;
};

struct RootType {
  int s = 0;
  int u = 0;
  int l = 0;
  std::vector<cplx> roots;
};

/// Symbols of the mesh-independent families h_t B and C for degree p.
struct TemporalSymbols {
  int p = 0;
  SymbolPolynomial qB;
  SymbolPolynomial qC;

  /// q^K = i q^B - rho q^C.
  SymbolPolynomial scaled(double rho) const;
};

/// Reads the band from the central row; entries differing from the band by
/// more than tol * max|M| must lie inside the corner windows. Throws
/// InvalidArgument when the matrix is smaller than 2(m+k) and DomainError when
/// a deviation falls outside the corners.
NearlyToeplitz extract_nearly_toeplitz(const Eigen::MatrixXcd& M, int m, int k,
                                       double tol = 1e-12);
NearlyToeplitz extract_nearly_toeplitz(const Eigen::MatrixXd& M, int m, int k,
                                       double tol = 1e-12);

SymbolPolynomial symbol_polynomial(const NearlyToeplitz& nt);

TemporalSymbols temporal_symbols(int p);

/// B_p, C_p defined through q^B(e^{it}) = -e^{ipt} B_p(t) and
/// q^C(e^{it}) = -i e^{ipt} C_p(t); theta in [-pi, pi]. Throws Error when the
/// discarded imaginary part exceeds 1e-12.
std::pair<double, double> eval_Bp_Cp(const TemporalSymbols& sym, double theta);
std::pair<double, double> eval_Bp_Cp(int p, double theta);

/// sum_j (theta + 2 j pi)^{-k} for k >= 2 and theta in (0, pi], with an
/// Euler-Maclaurin tail so the result is accurate to about tol relative.
double uhat(int k, double theta, double tol = 1e-15);

/// B_p and C_p from the lattice sums: -(2 - 2cos t)^{p+1} Uhat_{2p}, Uhat_{2p+1}.
std::pair<double, double> series_Bp_Cp(int p, double theta);

/// Root counts inside, on and outside the unit circle (modulus tolerance tol).
RootType classify_roots(const SymbolPolynomial& q, double tol = 1e-8);

/// Zeros of B_p - rho C_p on [-pi, pi]: returns {0, theta*}.
std::vector<double> locate_unit_zeros(int p, double rho);

/// True when the coefficient sequence equals its reversal, or its conjugated
/// reversal, up to one unimodular factor. Either makes the root set closed
/// under inversion in the unit circle.
bool is_reciprocal(const SymbolPolynomial& q, double tol = 1e-12);

}  // namespace stschrod
