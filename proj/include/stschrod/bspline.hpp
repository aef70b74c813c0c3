#pragma once

// Open uniform B-spline bases and Gauss-Legendre quadrature.

#include <cstddef>
#include <vector>

namespace stschrod {

inline constexpr int kMaxDegree = 10;

struct Interval {
  double a = 0.0;
  double b = 1.0;
  double length() const { return b - a; }
};

/// Clamped knot vector over a uniform partition: the end knots are repeated
/// p+1 times, interior breakpoints have multiplicity one.
struct KnotVector {
  int degree = 0;
  std::vector<double> breakpoints;
  std::vector<double> knots;

  int num_elements() const { return static_cast<int>(breakpoints.size()) - 1; }
  /// Dimension of the spline space, N + p.
  int dimension() const { return num_elements() + degree; }
  double front() const { return breakpoints.front(); }
  double back() const { return breakpoints.back(); }
  double meshsize() const { return (back() - front()) / num_elements(); }

  /// Element containing t, right-continuous at interior breakpoints and
  /// using the last element at t = b. Throws DomainError outside [a,b].
  int find_element(double t) const;
};

/// Values and derivatives of the p+1 basis functions that are active at
/// one point. Function first_active + r has derivative d equal to (d, r).
struct BasisEval {
  int first_active = 0;
  int degree = 0;
  int max_deriv = 0;
  std::vector<double> values;  // (max_deriv+1) x (degree+1), row-major

  double operator()(int d, int r) const { return values[d * (degree + 1) + r]; }
};

struct QuadratureRule {
  std::vector<double> nodes;    // in (-1, 1), ascending
  std::vector<double> weights;  // positive
  std::size_t size() const { return nodes.size(); }
};

KnotVector open_uniform_knots(int p, int num_elements, Interval interval);

BasisEval eval_all(const KnotVector& kv, double t, int max_deriv);

/// Same as eval_all but on a prescribed element; t may sit on either end of it.
/// `out` receives (max_deriv+1) x (p+1) values, row-major.
void eval_in_element(const KnotVector& kv, int element, double t, int max_deriv,
                     double* out);

QuadratureRule gauss_legendre_rule(int q);

/// Basis values at the Gauss points of every element, with physical points
/// and weights (Jacobian included). Function `element + r` is the r-th active
/// one on `element`.
class BasisTable {
 public:
  BasisTable(const KnotVector& kv, int num_points, int max_deriv);

  int num_elements() const { return num_elements_; }
  int num_points() const { return num_points_; }
  int degree() const { return degree_; }

  double point(int e, int q) const { return points_[e * num_points_ + q]; }
  double weight(int e, int q) const { return weights_[e * num_points_ + q]; }
  double basis(int e, int q, int d, int r) const {
    return values_[((static_cast<std::size_t>(e) * num_points_ + q) * (max_deriv_ + 1) + d) *
                       (degree_ + 1) +
                   r];
  }

 private:
  int num_elements_;
  int num_points_;
  int degree_;
  int max_deriv_;
  std::vector<double> points_;
  std::vector<double> weights_;
  std::vector<double> values_;
};

}  // namespace stschrod
