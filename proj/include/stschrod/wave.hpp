#pragma once

// Real block formulations linking the scalar Schroedinger model to the
// first-order wave system:
//   split:  [[B, -mu C], [mu C, B]] [u; v] = [(f_i, phi_l'); (-f_r, phi_l')]
//   wave:   [[B,  C], [-mu C, B]] [u; v] = [0; (f, phi_l')]
// with the unscaled temporal matrices B and C and zero initial data.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stschrod/conditioning.hpp"
#include "stschrod/temporal.hpp"

namespace stschrod {

enum class BlockKind { SchrodingerSplit, Wave };

std::string to_string(BlockKind kind);

using RealFunction = std::function<double(double)>;

struct BlockSystem {
  BlockKind kind = BlockKind::Wave;
  double parameter = 0.0;  // mu_s or mu_w
  TemporalMatrices temporal;
  Eigen::MatrixXd matrix;  // 2n x 2n
  Eigen::VectorXd rhs;     // 2n

  int half_size() const { return temporal.size(); }
};

/// Split kind: f is complex (f_r + i f_i). Wave kind: f must be real-valued;
/// its imaginary part is rejected. An empty f means f = 0.
/// Throws InvalidArgument for a non-finite parameter or mu_w < 0 (wave).
BlockSystem assemble_block_system(BlockKind kind, int p, int Nt, double T, double parameter,
                                  const ScalarFunction& f);

struct SchurComplementReport {
  Eigen::MatrixXd S;  // B + c C B^{-1} C
  double coefficient = 0.0;
  NormKind norm = NormKind::One;
  double kappa_B = 0.0;
  double kappa_S = 0.0;
  double kappa_block = 0.0;
  /// (1 + |c| ||C||^2 / ||B||^2 kappa(B)) kappa(block), all in `norm`.
  double lemma_bound = 0.0;

  bool bound_holds() const { return kappa_S <= lemma_bound; }
};

/// Schur complement of the lower-right B in a block matrix of the form
/// [[B, X], [Y, B]] with X Y = -c C^2 (both kinds above). Throws
/// SingularSystemError if B is singular.
SchurComplementReport schur_complement_report(const Eigen::MatrixXd& B, const Eigen::MatrixXd& C,
                                              double coefficient, const Eigen::MatrixXd& block,
                                              NormKind norm = NormKind::One);

/// Report for an assembled block system (coefficient mu_s^2 or mu_w).
SchurComplementReport schur_complement_report(const BlockSystem& system,
                                              NormKind norm = NormKind::One);

/// Solves the complex scalar problem (i B - mu C) psi = (f, phi_l') and the
/// split real system; returns max |psi_j - (u_j + i v_j)| over coefficients.
double verify_equivalence(int p, int Nt, double T, double mu_s, const ScalarFunction& f);

/// Condition numbers of the wave block matrix on (0, 1), n = Nt + p - 1 per
/// row (the block has size 2n); rows are ordered size-major.
ConditioningReport wave_conditioning_sweep(int p, const std::vector<int>& sizes,
                                           const std::vector<double>& mu_w_values,
                                           NormKind kind = NormKind::Spectral);

}  // namespace stschrod
