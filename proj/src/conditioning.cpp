#include "stschrod/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "stschrod/error.hpp"
#include "stschrod/temporal.hpp"

namespace stschrod {

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::One: return "one";
    case NormKind::Infinity: return "inf";
    default: return "spectral";
  }
}

NormKind parse_norm_kind(const std::string& name) {
  if (name == "spectral" || name == "2") return NormKind::Spectral;
  if (name == "one" || name == "1") return NormKind::One;
  if (name == "inf" || name == "infinity") return NormKind::Infinity;
  throw InvalidArgument("unknown norm kind '" + name + "' (expected spectral, one or inf)");
}

namespace {

template <typename Matrix>
double matrix_norm_impl(const Matrix& A, NormKind kind) {
  switch (kind) {
    case NormKind::One: return A.cwiseAbs().colwise().sum().maxCoeff();
    case NormKind::Infinity: return A.cwiseAbs().rowwise().sum().maxCoeff();
    default: return Eigen::BDCSVD<Matrix>(A).singularValues()(0);
  }
}

template <typename Matrix>
double condition_number_impl(const Matrix& M, NormKind kind) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw InvalidArgument("condition_number: matrix must be square and nonempty");
  }
  if (M.rows() > kMaxDenseSize) {
    throw InvalidArgument("condition_number: size " + std::to_string(M.rows()) +
                          " exceeds the dense cap " + std::to_string(kMaxDenseSize));
  }
  const double inf = std::numeric_limits<double>::infinity();
  const Eigen::VectorXd sv = Eigen::BDCSVD<Matrix>(M).singularValues();
  const double smax = sv(0), smin = sv(sv.size() - 1);
  if (!(smin > M.rows() * std::numeric_limits<double>::epsilon() * smax)) return inf;
  if (kind == NormKind::Spectral) return smax / smin;
  const Matrix inv = M.partialPivLu().inverse();
  return matrix_norm_impl(M, kind) * matrix_norm_impl(inv, kind);
}

}  // namespace

double matrix_norm(const Eigen::MatrixXcd& A, NormKind kind) { return matrix_norm_impl(A, kind); }
double matrix_norm(const Eigen::MatrixXd& A, NormKind kind) { return matrix_norm_impl(A, kind); }

double condition_number(const Eigen::MatrixXcd& M, NormKind kind) {
  return condition_number_impl(M, kind);
}

double condition_number(const Eigen::MatrixXd& M, NormKind kind) {
  return condition_number_impl(M, kind);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidArgument("loglog_slope: need at least two matching points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConditioningReport conditioning_sweep(int p, const std::vector<int>& sizes,
                                      const std::vector<double>& rhos, NormKind kind) {
  if (sizes.empty() || rhos.empty()) throw InvalidArgument("conditioning_sweep: empty size or rho list");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 4 * p) {
      throw InvalidArgument("conditioning_sweep: n=" + std::to_string(sizes[i]) + " below 4p");
    }
    if (sizes[i] > kMaxDenseSize) {
      throw InvalidArgument("conditioning_sweep: n=" + std::to_string(sizes[i]) + " above the dense cap");
    }
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw InvalidArgument("conditioning_sweep: sizes must ascend");
  }

  ConditioningReport report;
  report.p = p;
  report.norm = kind;
  for (int n : sizes) {
    for (double rho : rhos) {
      const ScaledSystem s = scaled_system(p, n - p + 1, rho);
      report.rows.push_back({n, rho, condition_number(s.K, kind)});
    }
  }
  if (sizes.size() >= 2) {
    for (std::size_t r = 0; r < rhos.size(); ++r) {
      std::vector<double> xs, ys;
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        xs.push_back(sizes[i]);
        ys.push_back(report.rows[i * rhos.size() + r].kappa);
      }
      const bool finite = std::all_of(ys.begin(), ys.end(), [](double v) { return std::isfinite(v); });
      report.slopes.push_back(finite ? loglog_slope(xs, ys) : std::numeric_limits<double>::infinity());
    }
  }
  return report;
}

PencilSpectrum gevp_spectrum(int p, int Nt) {
  if (Nt > 64) {
    throw InvalidArgument("gevp_spectrum: Nt=" + std::to_string(Nt) +
                          " exceeds the double-precision limit of 64");
  }
  const TemporalMatrices tm = assemble_temporal(p, Nt, 1.0);
  Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges(tm.B, tm.C, false);
  if (ges.info() != Eigen::Success) throw ConvergenceError("gevp_spectrum: QZ iteration failed");

  PencilSpectrum spec;
  spec.p = p;
  spec.Nt = Nt;
  const Eigen::VectorXcd alphas = ges.alphas();
  const Eigen::VectorXd betas = ges.betas();
  const double beta_scale = betas.cwiseAbs().maxCoeff();
  spec.min_abs_real = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < alphas.size(); ++i) {
    if (std::abs(betas(i)) <= 1e-13 * beta_scale) {
      ++spec.infinite_count;
      continue;
    }
    const cplx lambda = alphas(i) / betas(i);
    spec.eigenvalues.push_back(lambda);
    spec.min_abs_real = std::min(spec.min_abs_real, std::abs(lambda.real()));
    if (std::abs(lambda.real()) < 1e-8 * std::abs(lambda)) ++spec.near_imaginary;
  }
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return spec;
}

}  // namespace stschrod
