#pragma once

// Stationary states of the quantum harmonic oscillator
//   i Psi_t + 1/2 Psi_xx + V Psi = 0,   V(x) = -omega^2 x^2 / 2.

#include <complex>

namespace stschrod {

using cplx = std::complex<double>;

/// Physicist's Hermite polynomial by H_{n+1} = 2x H_n - 2n H_{n-1}.
double hermite(int n, double x);

struct StateValue {
  cplx value;
  cplx dt;
  cplx dx;
};

/// Psi^(n)(x, t) = (omega/pi)^{1/4} / sqrt(2^n n!) H_n(sqrt(omega) x)
///                 exp(-(omega x^2 + (2n+1) i omega t) / 2)
/// with analytic first derivatives.
StateValue exact_state(int n, double omega, double x, double t);

/// Second x-derivative, for residual checks.
cplx exact_state_dxx(int n, double omega, double x, double t);

inline double oscillator_potential(double omega, double x) { return -0.5 * omega * omega * x * x; }

}  // namespace stschrod
