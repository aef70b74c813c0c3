#include "stschrod/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "stschrod/error.hpp"
#include "stschrod/temporal.hpp"

namespace stschrod {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

Eigen::MatrixXcd NearlyToeplitz::reconstruct() const {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = std::max(0, i - m); j <= std::min(size - 1, i + k); ++j) M(i, j) = coefficient(j - i);
  const int w = m + k;
  M.topLeftCorner(w, w) += top_left;
  M.bottomRightCorner(w, w) += bottom_right;
  return M;
}

NearlyToeplitz extract_nearly_toeplitz(const Eigen::MatrixXcd& M, int m, int k, double tol) {
  if (M.rows() != M.cols()) throw InvalidArgument("extract_nearly_toeplitz: matrix must be square");
  if (m < 0 || k < 0) throw InvalidArgument("extract_nearly_toeplitz: negative bandwidth");
  const int n = static_cast<int>(M.rows());
  const int w = m + k;
  if (n < 2 * w || n == 0) {
    throw InvalidArgument("extract_nearly_toeplitz: size " + std::to_string(n) +
                          " cannot expose a pure band region (need >= " + std::to_string(2 * w) + ")");
  }

  NearlyToeplitz nt;
  nt.size = n;
  nt.m = m;
  nt.k = k;
  nt.band.resize(w + 1);
  const int r = n / 2;
  for (int j = -m; j <= k; ++j) {
    const int c = r + j;
    nt.band[j + m] = (c >= 0 && c < n) ? M(r, c) : cplx(0.0);
  }
  nt.top_left = Eigen::MatrixXcd::Zero(w, w);
  nt.bottom_right = Eigen::MatrixXcd::Zero(w, w);

  const double threshold = tol * std::max(M.cwiseAbs().maxCoeff(), 1e-300);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx d = M(i, j) - nt.coefficient(j - i);
      if (std::abs(d) <= threshold) continue;
      if (i < w && j < w) {
        nt.top_left(i, j) = d;
      } else if (i >= n - w && j >= n - w) {
        nt.bottom_right(i - (n - w), j - (n - w)) = d;
      } else {
        throw DomainError("extract_nearly_toeplitz: entry (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") deviates from the band outside the corners");
      }
      ++nt.deviation_count;
    }
  }
  return nt;
}

NearlyToeplitz extract_nearly_toeplitz(const Eigen::MatrixXd& M, int m, int k, double tol) {
  return extract_nearly_toeplitz(Eigen::MatrixXcd(M.cast<cplx>()), m, k, tol);
}

int SymbolPolynomial::degree() const {
  for (int i = static_cast<int>(coefficients.size()) - 1; i >= 0; --i)
    if (coefficients[i] != cplx(0.0)) return i;
  return -1;
}

cplx SymbolPolynomial::operator()(cplx z) const {
  cplx v = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * z + *it;
  return v;
}

SymbolPolynomial symbol_polynomial(const NearlyToeplitz& nt) {
  // q(z) = sum_j a_j z^{m+j}: the stored band is already in that order.
  return SymbolPolynomial{nt.band};
}

SymbolPolynomial TemporalSymbols::scaled(double rho) const {
  const cplx I(0.0, 1.0);
  SymbolPolynomial q;
  q.coefficients.resize(qB.coefficients.size());
  for (std::size_t i = 0; i < q.coefficients.size(); ++i)
    q.coefficients[i] = I * qB.coefficients[i] - rho * qC.coefficients[i];
  return q;
}

TemporalSymbols temporal_symbols(int p) {
  if (p < 1) throw InvalidArgument("temporal_symbols: degree must be >= 1");
  const TemporalMatrices tm = assemble_temporal(p, 4 * p + 4, 1.0);
  const Eigen::MatrixXd Bn = tm.ht * tm.B;
  TemporalSymbols sym;
  sym.p = p;
  sym.qB = symbol_polynomial(extract_nearly_toeplitz(Bn, p + 1, p - 1));
  sym.qC = symbol_polynomial(extract_nearly_toeplitz(tm.C, p + 1, p - 1));
  return sym;
}

std::pair<double, double> eval_Bp_Cp(const TemporalSymbols& sym, double theta) {
  if (!(theta >= -kPi - 1e-15 && theta <= kPi + 1e-15)) {
    throw DomainError("eval_Bp_Cp: theta must lie in [-pi, pi]");
  }
  const cplx I(0.0, 1.0);
  const cplx z = std::exp(I * theta);
  const cplx phase = std::exp(-I * (sym.p * theta));
  const cplx b = -phase * sym.qB(z);
  const cplx c = I * phase * sym.qC(z);
  if (std::abs(b.imag()) > 1e-12 || std::abs(c.imag()) > 1e-12) {
    throw Error("eval_Bp_Cp: symbol is not real on the unit circle (residue " +
                std::to_string(std::max(std::abs(b.imag()), std::abs(c.imag()))) + ")");
  }
  return {b.real(), c.real()};
}

std::pair<double, double> eval_Bp_Cp(int p, double theta) {
  return eval_Bp_Cp(temporal_symbols(p), theta);
}

namespace {

// sum_{j >= N} (a + 2 pi j)^{-k} by Euler-Maclaurin; `last` receives the
// magnitude of the final correction term as an error indicator.
double em_tail(int k, double a, int N, double& last) {
  static constexpr double bernoulli[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66};
  const double x = a + 2.0 * kPi * N;
  double sum = std::pow(x, 1 - k) / (2.0 * kPi * (k - 1)) + 0.5 * std::pow(x, -k);
  // g^{(m)}(N) = (-1)^m k (k+1) ... (k+m-1) (2 pi)^m x^{-k-m}
  double deriv = std::pow(x, -k);  // running g^{(m)}
  double factorial = 1.0;
  int m = 0;
  for (int r = 1; r <= 5; ++r) {
    while (m < 2 * r - 1) {
      deriv *= -(k + m) * (2.0 * kPi) / x;
      ++m;
    }
    // (2r)! for the Bernoulli weight
    factorial = 1.0;
    for (int i = 2; i <= 2 * r; ++i) factorial *= i;
    const double term = bernoulli[r - 1] / factorial * deriv;
    sum -= term;
    last = std::abs(term);
  }
  return sum;
}

}  // namespace

double uhat(int k, double theta, double tol) {
  if (k < 2) throw InvalidArgument("uhat: k must be >= 2");
  if (!(theta > 0.0 && theta <= kPi)) throw DomainError("uhat: theta must lie in (0, pi]");
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  for (int N = 8; N <= (1 << 20); N *= 2) {
    double central = 0.0;
    for (int j = -(N - 1); j <= N - 1; ++j) central += std::pow(theta + 2.0 * kPi * j, -k);
    double e1 = 0.0, e2 = 0.0;
    const double tail = em_tail(k, theta, N, e1) + sign * em_tail(k, -theta, N, e2);
    const double total = central + tail;
    if (e1 + e2 <= tol * std::abs(total)) return total;
  }
  throw ConvergenceError("uhat: tail tolerance not reached for k=" + std::to_string(k));
}

std::pair<double, double> series_Bp_Cp(int p, double theta) {
  if (p < 1) throw InvalidArgument("series_Bp_Cp: degree must be >= 1");
  if (!(theta >= -kPi && theta <= kPi)) throw DomainError("series_Bp_Cp: theta must lie in [-pi, pi]");
  if (theta == 0.0) return {0.0, 0.0};
  const double s = std::abs(theta);
  const double half = std::sin(0.5 * s);
  const double factor = std::pow(4.0 * half * half, p + 1);
  const double b = -factor * uhat(2 * p, s);
  const double c = -factor * uhat(2 * p + 1, s);
  return {b, theta < 0 ? -c : c};
}

RootType classify_roots(const SymbolPolynomial& q, double tol) {
  std::vector<cplx> c = q.coefficients;
  double scale = 0.0;
  for (const cplx& v : c) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw InvalidArgument("classify_roots: zero polynomial");
  const double eps = 1e-14 * scale;
  while (!c.empty() && std::abs(c.back()) <= eps) c.pop_back();

  RootType rt;
  std::size_t lead = 0;
  while (lead < c.size() && std::abs(c[lead]) <= eps) {
    rt.roots.push_back(0.0);
    ++rt.s;
    ++lead;
  }
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
  const int d = static_cast<int>(c.size()) - 1;
  if (d >= 1) {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -c[i] / c[d];
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    for (int i = 0; i < d; ++i) rt.roots.push_back(es.eigenvalues()(i));
  }
  for (std::size_t i = lead; i < rt.roots.size(); ++i) {
    const double r = std::abs(rt.roots[i]);
    if (r < 1.0 - tol) {
      ++rt.s;
    } else if (r > 1.0 + tol) {
      ++rt.l;
    } else {
      ++rt.u;
    }
  }
  return rt;
}

std::vector<double> locate_unit_zeros(int p, double rho) {
  if (p < 1) throw InvalidArgument("locate_unit_zeros: degree must be >= 1");
  if (!std::isfinite(rho)) throw InvalidArgument("locate_unit_zeros: rho must be finite");
  if (std::abs(rho) < 1e-8) {
    throw InvalidArgument("locate_unit_zeros: |rho| < 1e-8 merges both zeros at theta = 0");
  }
  // L(theta) = B_p / C_p - rho is increasing on (0, pi) from -rho to +inf.
  const double target = std::abs(rho);
  const auto L = [p, target](double t) { return uhat(2 * p, t) / uhat(2 * p + 1, t) - target; };
  double lo = 0.0, hi = kPi;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (L(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double root = 0.5 * (lo + hi);
  if (!(root > 0.0 && root < kPi)) throw ConvergenceError("locate_unit_zeros: bracket failure");
  return {0.0, rho > 0 ? root : -root};
}

bool is_reciprocal(const SymbolPolynomial& q, double tol) {
  const std::vector<cplx>& a = q.coefficients;
  if (a.empty()) return true;
  std::size_t imax = 0;
  double amax = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) > amax) {
      amax = std::abs(a[i]);
      imax = i;
    }
  }
  if (amax == 0.0) return true;
  const std::size_t n = a.size();
  const auto matches = [&](bool conjugate) {
    const auto rev = [&](std::size_t i) { return conjugate ? std::conj(a[n - 1 - i]) : a[n - 1 - i]; };
    const cplx factor = rev(imax) / a[imax];
    if (std::abs(std::abs(factor) - 1.0) > tol) return false;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(rev(i) - factor * a[i]) > tol * amax) return false;
    return true;
  };
  return matches(false) || matches(true);
}

}  // namespace stschrod
