#include "stschrod/oscillator.hpp"

#include <cmath>
#include <numbers>

#include "stschrod/error.hpp"

namespace stschrod {

double hermite(int n, double x) {
  if (n < 0) throw InvalidArgument("hermite: degree must be >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

double normalization(int n, double omega) {
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  return std::pow(omega / std::numbers::pi, 0.25) / std::sqrt(std::ldexp(fact, n));
}

void check_args(int n, double omega) {
  if (n < 0) throw InvalidArgument("exact_state: index must be >= 0");
  if (!(omega > 0.0)) throw InvalidArgument("exact_state: omega must be positive");
}

}  // namespace

StateValue exact_state(int n, double omega, double x, double t) {
  check_args(n, omega);
  const double s = std::sqrt(omega);
  const double gauss = normalization(n, omega) * std::exp(-0.5 * omega * x * x);
  const double energy = (n + 0.5) * omega;
  const cplx phase = std::polar(1.0, -energy * t);
  const double h = hermite(n, s * x);
  const double dh = n > 0 ? 2.0 * n * hermite(n - 1, s * x) : 0.0;

  StateValue v;
  v.value = gauss * h * phase;
  v.dt = cplx(0.0, -energy) * v.value;
  v.dx = gauss * (s * dh - omega * x * h) * phase;
  return v;
}

cplx exact_state_dxx(int n, double omega, double x, double t) {
  check_args(n, omega);
  const double s = std::sqrt(omega);
  const double gauss = normalization(n, omega) * std::exp(-0.5 * omega * x * x);
  const cplx phase = std::polar(1.0, -(n + 0.5) * omega * t);
  const double y = s * x;
  const double h = hermite(n, y);
  const double dh = n > 0 ? 2.0 * n * hermite(n - 1, y) : 0.0;
  const double d2h = n > 1 ? 4.0 * n * (n - 1) * hermite(n - 2, y) : 0.0;
  // d/dx [g (s H' - w x H)] with g' = -w x g.
  const double inner = s * dh - omega * x * h;
  const double inner_dx = omega * d2h - omega * h - omega * x * s * dh;
  return gauss * (inner_dx - omega * x * inner) * phase;
}

}  // namespace stschrod
