#pragma once

// Condition numbers of the scaled temporal family and the (B, C) pencil.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace stschrod {

using cplx = std::complex<double>;

enum class NormKind { Spectral, One, Infinity };

std::string to_string(NormKind kind);
NormKind parse_norm_kind(const std::string& name);

/// Desk-scale cap on the matrix size for exact SVD / inverse.
inline constexpr int kMaxDenseSize = 2000;

/// Induced matrix norm.
double matrix_norm(const Eigen::MatrixXcd& A, NormKind kind);
double matrix_norm(const Eigen::MatrixXd& A, NormKind kind);

/// kappa(M) in the chosen norm; +infinity when M is numerically singular
/// (sigma_min <= n eps sigma_max). Throws InvalidArgument above kMaxDenseSize.
double condition_number(const Eigen::MatrixXcd& M, NormKind kind = NormKind::Spectral);
double condition_number(const Eigen::MatrixXd& M, NormKind kind = NormKind::Spectral);

struct ConditioningRow {
  int n = 0;
  double rho = 0.0;
  double kappa = 0.0;
};

struct ConditioningReport {
  int p = 0;
  NormKind norm = NormKind::Spectral;
  std::vector<ConditioningRow> rows;
  /// Least-squares slope of log kappa against log n, one per rho, in the
  /// order of the requested rho list. Empty when fewer than two sizes.
  std::vector<double> slopes;
};

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// kappa(K_n^p(rho)) for every (n, rho); n = Nt + p - 1.
ConditioningReport conditioning_sweep(int p, const std::vector<int>& sizes,
                                      const std::vector<double>& rhos,
                                      NormKind kind = NormKind::Spectral);

struct PencilSpectrum {
  int p = 0;
  int Nt = 0;
  std::vector<cplx> eigenvalues;  // finite ones only
  int infinite_count = 0;
  double min_abs_real = 0.0;
  int near_imaginary = 0;  // |Re l| < 1e-8 |l|
};

/// Eigenvalues of B v = l C v for the unscaled matrices on (0, 1).
PencilSpectrum gevp_spectrum(int p, int Nt);

}  // namespace stschrod
