#pragma once

// Banded storage and LU factorization with partial pivoting.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stschrod/error.hpp"

namespace stschrod {

/// Square matrix with `lower` subdiagonals and `upper` superdiagonals.
/// Entry (i, j) is stored at row i, slot j - i + lower.
template <typename T>
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(int n, int lower, int upper)
      : n_(n), lower_(lower), upper_(upper),
        data_(static_cast<std::size_t>(n) * (lower + upper + 1), T{}) {}

  int size() const { return n_; }
  int lower() const { return lower_; }
  int upper() const { return upper_; }

  bool in_band(int i, int j) const { return j - i <= upper_ && i - j <= lower_; }

  T operator()(int i, int j) const { return in_band(i, j) ? data_[index(i, j)] : T{}; }
  T& at(int i, int j) { return data_[index(i, j)]; }

  template <typename S>
  auto multiply(std::span<const S> x) const {
    using R = decltype(T{} * S{});
    std::vector<R> y(n_, R{});
    for (int i = 0; i < n_; ++i) {
      const int j0 = std::max(0, i - lower_), j1 = std::min(n_ - 1, i + upper_);
      R acc{};
      for (int j = j0; j <= j1; ++j) acc += data_[index(i, j)] * x[j];
      y[i] = acc;
    }
    return y;
  }

  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> to_dense() const {
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> m =
        Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = std::max(0, i - lower_); j <= std::min(n_ - 1, i + upper_); ++j)
        m(i, j) = data_[index(i, j)];
    return m;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * (lower_ + upper_ + 1) + (j - i + lower_);
  }

  int n_ = 0;
  int lower_ = 0;
  int upper_ = 0;
  std::vector<T> data_;
};

/// Gaussian elimination with row pivoting on a band matrix. Pivoting widens
/// the upper band to upper + lower; row i holds columns [i - lower, i + lower + upper].
template <typename T>
class BandLU {
 public:
  template <typename S>
  explicit BandLU(const BandMatrix<S>& a)
      : n_(a.size()), kl_(a.lower()), ku_(a.upper()), width_(2 * kl_ + ku_ + 1),
        work_(static_cast<std::size_t>(n_) * width_, T{}), pivots_(n_) {
    for (int i = 0; i < n_; ++i)
      for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j)
        slot(i, j) = static_cast<T>(a(i, j));
    factor();
  }

  double min_pivot() const { return min_pivot_; }

  template <typename S>
  std::vector<T> solve(std::span<const S> rhs) const {
    std::vector<T> x(rhs.begin(), rhs.end());
    solve_in_place(std::span<T>(x));
    return x;
  }

  void solve_in_place(std::span<T> x) const {
    for (int k = 0; k < n_; ++k) {
      if (pivots_[k] != k) std::swap(x[k], x[pivots_[k]]);
      const int i1 = std::min(n_ - 1, k + kl_);
      for (int i = k + 1; i <= i1; ++i) x[i] -= slot(i, k) * x[k];
    }
    for (int i = n_ - 1; i >= 0; --i) {
      T acc = x[i];
      const int j1 = std::min(n_ - 1, i + kl_ + ku_);
      for (int j = i + 1; j <= j1; ++j) acc -= slot(i, j) * x[j];
      x[i] = acc / slot(i, i);
    }
  }

 private:
  T& slot(int i, int j) {
    return work_[static_cast<std::size_t>(i) * width_ + (j - i + kl_)];
  }
  const T& slot(int i, int j) const {
    return work_[static_cast<std::size_t>(i) * width_ + (j - i + kl_)];
  }

  void factor() {
    double max_entry = 0.0;
    for (const T& v : work_) max_entry = std::max(max_entry, static_cast<double>(std::abs(v)));
    min_pivot_ = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_; ++k) {
      const int i1 = std::min(n_ - 1, k + kl_);
      const int j1 = std::min(n_ - 1, k + kl_ + ku_);
      int piv = k;
      double best = std::abs(slot(k, k));
      for (int i = k + 1; i <= i1; ++i) {
        if (std::abs(slot(i, k)) > best) {
          best = std::abs(slot(i, k));
          piv = i;
        }
      }
      pivots_[k] = piv;
      min_pivot_ = std::min(min_pivot_, best);
      if (best == 0.0 || best <= std::numeric_limits<double>::epsilon() * 1e-3 * max_entry) {
        throw SingularSystemError("band LU: zero pivot at row " + std::to_string(k), best);
      }
      if (piv != k)
        for (int j = k; j <= j1; ++j) std::swap(slot(k, j), slot(piv, j));
      const T inv = T(1) / slot(k, k);
      for (int i = k + 1; i <= i1; ++i) {
        const T l = slot(i, k) * inv;
        slot(i, k) = l;
        if (l == T{}) continue;
        for (int j = k + 1; j <= j1; ++j) slot(i, j) -= l * slot(k, j);
      }
    }
  }

  int n_, kl_, ku_, width_;
  std::vector<T> work_;
  std::vector<int> pivots_;
  double min_pivot_ = 0.0;
};

}  // namespace stschrod
