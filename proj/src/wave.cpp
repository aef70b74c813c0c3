#include "stschrod/wave.hpp"

#include <cmath>
#include <limits>

#include "stschrod/error.hpp"

namespace stschrod {

std::string to_string(BlockKind kind) {
  return kind == BlockKind::Wave ? "wave" : "schrodinger_split";
}

BlockSystem assemble_block_system(BlockKind kind, int p, int Nt, double T, double parameter,
                                  const ScalarFunction& f) {
  if (!std::isfinite(parameter))
    throw InvalidArgument("assemble_block_system: parameter must be finite");
  if (kind == BlockKind::Wave && parameter < 0.0)
    throw InvalidArgument("assemble_block_system: mu_w must be non-negative");

  BlockSystem sys;
  sys.kind = kind;
  sys.parameter = parameter;
  sys.temporal = assemble_temporal(p, Nt, T);
  const int n = sys.temporal.size();
  const Eigen::MatrixXd& B = sys.temporal.B;
  const Eigen::MatrixXd& C = sys.temporal.C;

  sys.matrix.resize(2 * n, 2 * n);
  const Eigen::VectorXcd load = scalar_rhs(sys.temporal, 0.0, 0.0, f);
  sys.rhs.resize(2 * n);
  if (kind == BlockKind::SchrodingerSplit) {
    sys.matrix << B, -parameter * C, parameter * C, B;
    sys.rhs << load.imag(), -load.real();
  } else {
    if (load.imag().cwiseAbs().maxCoeff() > 0.0)
      throw InvalidArgument("assemble_block_system: wave forcing must be real-valued");
    sys.matrix << B, C, -parameter * C, B;
    sys.rhs << Eigen::VectorXd::Zero(n), load.real();
  }
  return sys;
}

SchurComplementReport schur_complement_report(const Eigen::MatrixXd& B, const Eigen::MatrixXd& C,
                                              double coefficient, const Eigen::MatrixXd& block,
                                              NormKind norm) {
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
  if (!lu.isInvertible())
    throw SingularSystemError("schur_complement_report: B is singular",
                              lu.matrixLU().diagonal().cwiseAbs().minCoeff());
  SchurComplementReport r;
  r.coefficient = coefficient;
  r.norm = norm;
  r.S = B + coefficient * (C * lu.solve(C));
  r.kappa_B = condition_number(B, norm);
  r.kappa_S = condition_number(r.S, norm);
  r.kappa_block = condition_number(block, norm);
  const double nB = matrix_norm(B, norm), nC = matrix_norm(C, norm);
  r.lemma_bound = (1.0 + std::abs(coefficient) * nC * nC / (nB * nB) * r.kappa_B) * r.kappa_block;
  return r;
}

SchurComplementReport schur_complement_report(const BlockSystem& system, NormKind norm) {
  const double c =
      system.kind == BlockKind::Wave ? system.parameter : system.parameter * system.parameter;
  return schur_complement_report(system.temporal.B, system.temporal.C, c, system.matrix, norm);
}

double verify_equivalence(int p, int Nt, double T, double mu_s, const ScalarFunction& f) {
  const BlockSystem split = assemble_block_system(BlockKind::SchrodingerSplit, p, Nt, T, mu_s, f);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(split.matrix);
  const Eigen::VectorXd uv = lu.solve(split.rhs);
  const ScalarSolution psi = solve_scalar_ivp(split.temporal, mu_s, 0.0, f);
  const int n = split.half_size();
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx split_value(uv(j), uv(n + j));
    worst = std::max(worst, std::abs(psi.coefficients(j + 1) - split_value));
  }
  return worst;
}

ConditioningReport wave_conditioning_sweep(int p, const std::vector<int>& sizes,
                                           const std::vector<double>& mu_w_values, NormKind kind) {
  if (sizes.empty() || mu_w_values.empty())
    throw InvalidArgument("wave_conditioning_sweep: empty size or mu list");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 4 * p)
      throw InvalidArgument("wave_conditioning_sweep: n=" + std::to_string(sizes[i]) + " below 4p");
    if (2 * sizes[i] > kMaxDenseSize)
      throw InvalidArgument("wave_conditioning_sweep: block of size 2n=" +
                            std::to_string(2 * sizes[i]) + " above the dense cap");
    if (i > 0 && sizes[i] <= sizes[i - 1])
      throw InvalidArgument("wave_conditioning_sweep: sizes must ascend");
  }
  ConditioningReport report;
  report.p = p;
  report.norm = kind;
  for (int n : sizes) {
    const int Nt = n - p + 1;
    for (double mu : mu_w_values) {
      const BlockSystem sys = assemble_block_system(BlockKind::Wave, p, Nt, 1.0, mu, nullptr);
      report.rows.push_back({n, mu, condition_number(sys.matrix, kind)});
    }
  }
  if (sizes.size() >= 2) {
    const std::size_t nm = mu_w_values.size();
    for (std::size_t k = 0; k < nm; ++k) {
      std::vector<double> xs, ys;
      bool finite = true;
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double kappa = report.rows[i * nm + k].kappa;
        finite = finite && std::isfinite(kappa);
        xs.push_back(sizes[i]);
        ys.push_back(kappa);
      }
      report.slopes.push_back(finite ? loglog_slope(xs, ys)
                                     : std::numeric_limits<double>::infinity());
    }
  }
  return report;
}

}  // namespace stschrod
