#include "stschrod/bspline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "stschrod/error.hpp"

namespace stschrod {

KnotVector open_uniform_knots(int p, int num_elements, Interval interval) {
  if (p < 1 || p > kMaxDegree) {
    throw InvalidArgument("open_uniform_knots: degree must lie in [1, " +
                          std::to_string(kMaxDegree) + "], got " + std::to_string(p));
  }
  if (num_elements < 1) {
    throw InvalidArgument("open_uniform_knots: need at least one element");
  }
  if (!(interval.a < interval.b) || !std::isfinite(interval.a) || !std::isfinite(interval.b)) {
    throw InvalidArgument("open_uniform_knots: degenerate interval");
  }

  KnotVector kv;
  kv.degree = p;
  kv.breakpoints.resize(num_elements + 1);
  const double h = interval.length() / num_elements;
  for (int i = 0; i <= num_elements; ++i) kv.breakpoints[i] = interval.a + i * h;
  kv.breakpoints.back() = interval.b;

  kv.knots.reserve(num_elements + 2 * p + 1);
  for (int i = 0; i < p; ++i) kv.knots.push_back(interval.a);
  kv.knots.insert(kv.knots.end(), kv.breakpoints.begin(), kv.breakpoints.end());
  for (int i = 0; i < p; ++i) kv.knots.push_back(interval.b);
  return kv;
}

int KnotVector::find_element(double t) const {
  if (!(t >= front() && t <= back())) {
    throw DomainError("point " + std::to_string(t) + " outside [" + std::to_string(front()) +
                      ", " + std::to_string(back()) + "]");
  }
  const int n = num_elements();
  int e = static_cast<int>(std::floor((t - front()) / meshsize()));
  e = std::clamp(e, 0, n - 1);
  // Correct the floor for rounding against the stored breakpoints.
  while (e + 1 < n && t >= breakpoints[e + 1]) ++e;
  while (e > 0 && t < breakpoints[e]) --e;
  return e;
}

void eval_in_element(const KnotVector& kv, int element, double t, int max_deriv, double* out) {
  const int p = kv.degree;
  const int span = element + p;  // knots[span] <= t < knots[span+1]
  const auto& U = kv.knots;
  const int nd = std::min(max_deriv, p);

  std::array<std::array<double, kMaxDegree + 1>, kMaxDegree + 1> ndu{};
  std::array<double, kMaxDegree + 1> left{}, right{};
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = t - U[span + 1 - j];
    right[j] = U[span + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }

  const int w = p + 1;
  for (int r = 0; r <= p; ++r) out[r] = ndu[r][p];
  for (int d = nd + 1; d <= max_deriv; ++d)
    for (int r = 0; r <= p; ++r) out[d * w + r] = 0.0;
  if (nd == 0) return;

  std::array<std::array<double, kMaxDegree + 1>, 2> a{};
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a[0].fill(0.0);
    a[1].fill(0.0);
    a[0][0] = 1.0;
    for (int k = 1; k <= nd; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      out[k * w + r] = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= nd; ++k) {
    for (int r = 0; r <= p; ++r) out[k * w + r] *= factor;
    factor *= (p - k);
  }
}

BasisEval eval_all(const KnotVector& kv, double t, int max_deriv) {
  if (max_deriv < 0 || max_deriv > kv.degree) {
    throw InvalidArgument("eval_all: derivative order must lie in [0, p]");
  }
  BasisEval ev;
  ev.degree = kv.degree;
  ev.max_deriv = max_deriv;
  ev.first_active = kv.find_element(t);
  ev.values.resize((max_deriv + 1) * (kv.degree + 1));
  eval_in_element(kv, ev.first_active, t, max_deriv, ev.values.data());
  return ev;
}

namespace {

// P_q(x) and P_q'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int q, double x) {
  double prev = 1.0, cur = x;
  for (int k = 2; k <= q; ++k) {
    const double next = ((2.0 * k - 1.0) * x * cur - (k - 1.0) * prev) / k;
    prev = cur;
    cur = next;
  }
  if (q == 1) prev = 1.0;
  return {cur, q * (x * cur - prev) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre_rule(int q) {
  if (q < 1 || q > 64) {
    throw InvalidArgument("gauss_legendre_rule: point count must lie in [1, 64]");
  }
  QuadratureRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  for (int i = 0; i < q / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [value, slope] = legendre_with_derivative(q, x);
      const double dx = value / slope;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double slope = legendre_with_derivative(q, x).second;
    const double w = 2.0 / ((1.0 - x * x) * slope * slope);
    rule.nodes[i] = -x;
    rule.nodes[q - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) {
    // Middle node is 0; P_q'(0) follows from the same recurrence.
    double prev = 1.0, cur = 0.0;
    for (int k = 2; k <= q; ++k) {
      const double next = (-(k - 1.0) * prev) / k;
      prev = cur;
      cur = next;
    }
    const double slope = q * prev;  // P_q'(0) = q P_{q-1}(0)
    rule.nodes[q / 2] = 0.0;
    rule.weights[q / 2] = 2.0 / (slope * slope);
  }
  return rule;
}

BasisTable::BasisTable(const KnotVector& kv, int num_points, int max_deriv)
    : num_elements_(kv.num_elements()),
      num_points_(num_points),
      degree_(kv.degree),
      max_deriv_(max_deriv) {
  const QuadratureRule rule = gauss_legendre_rule(num_points);
  const std::size_t ne = num_elements_;
  points_.resize(ne * num_points);
  weights_.resize(ne * num_points);
  values_.resize(ne * num_points * (max_deriv + 1) * (degree_ + 1));
  for (int e = 0; e < num_elements_; ++e) {
    const double lo = kv.breakpoints[e], hi = kv.breakpoints[e + 1];
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (int q = 0; q < num_points; ++q) {
      const std::size_t idx = static_cast<std::size_t>(e) * num_points + q;
      points_[idx] = mid + half * rule.nodes[q];
      weights_[idx] = half * rule.weights[q];
      eval_in_element(kv, e, points_[idx], max_deriv,
                      &values_[idx * (max_deriv + 1) * (degree_ + 1)]);
    }
  }
}

}  // namespace stschrod
