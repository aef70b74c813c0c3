#include "stschrod/spacetime.hpp"

#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "stschrod/error.hpp"

namespace stschrod {

namespace {

constexpr long kMaxDirectUnknowns = 200000;

Eigen::VectorXcd apply_band(const BandMatrix<double>& m, const Eigen::VectorXcd& x) {
  const auto y = m.multiply(std::span<const cplx>(x.data(), static_cast<std::size_t>(x.size())));
  return Eigen::Map<const Eigen::VectorXcd>(y.data(), static_cast<Eigen::Index>(y.size()));
}

// Applies a symmetric band matrix to every row of U: returns U * m.
Eigen::MatrixXcd right_multiply(const Eigen::MatrixXcd& U, const BandMatrix<double>& m) {
  Eigen::MatrixXcd out(U.rows(), U.cols());
  for (Eigen::Index j = 0; j < U.rows(); ++j) {
    const Eigen::VectorXcd row = U.row(j).transpose();
    out.row(j) = apply_band(m, row).transpose();
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd SpaceTimeSystem::apply(const Eigen::MatrixXcd& U) const {
  if (U.rows() != time_size() || U.cols() != space_size())
    throw InvalidArgument("SpaceTimeSystem::apply: coefficient block has the wrong shape");
  const Eigen::MatrixXcd UM = right_multiply(U, spatial.M);
  const Eigen::MatrixXcd UA = right_multiply(U, spatial.A);
  return cplx(0.0, 1.0) * (temporal.B.cast<cplx>() * UM) + temporal.C.cast<cplx>() * UA;
}

SpaceTimeSystem assemble_spacetime(const TemporalMatrices& temporal, const SpatialSystem& spatial,
                                   const SpaceTimeFunction& F, const Eigen::VectorXcd& lifting) {
  const int n = temporal.size();
  const int Ns = spatial.space.dim();
  if (lifting.size() != Ns)
    throw InvalidArgument("assemble_spacetime: lifting has " + std::to_string(lifting.size()) +
                          " entries, expected " + std::to_string(Ns));
  SpaceTimeSystem sys;
  sys.temporal = temporal;
  sys.spatial = spatial;
  sys.lifting = lifting;
  sys.rhs = Eigen::MatrixXcd::Zero(n, Ns);

  if (F) {
    const int pt = temporal.p, px = spatial.space.degree;
    const BasisTable tt(temporal.knots, pt + 3, 1);
    const BasisTable xt(spatial.space.knots, px + 3, 0);
    std::vector<cplx> fx(static_cast<std::size_t>(px + 1));
    for (int et = 0; et < tt.num_elements(); ++et) {
      for (int qt = 0; qt < tt.num_points(); ++qt) {
        const double t = tt.point(et, qt), wt = tt.weight(et, qt);
        for (int ex = 0; ex < xt.num_elements(); ++ex) {
          for (int qx = 0; qx < xt.num_points(); ++qx) {
            const cplx fw = F(xt.point(ex, qx), t) * (wt * xt.weight(ex, qx));
            for (int b = 0; b <= px; ++b) fx[b] = fw * xt.basis(ex, qx, 0, b);
            for (int a = 0; a <= pt; ++a) {
              const int l = et + a;
              if (l >= n) continue;
              const double dphi = tt.basis(et, qt, 1, a);
              for (int b = 0; b <= px; ++b) {
                const int i = ex + b - 1;
                if (i >= 0 && i < Ns) sys.rhs(l, i) += dphi * fx[b];
              }
            }
          }
        }
      }
    }
  }
  // Constant lifting: only the Hamiltonian term survives, against phi_0(0) = 1.
  sys.rhs.row(0) -= apply_band(spatial.A, lifting).transpose();
  return sys;
}

SpaceTimeSystem assemble_spacetime(int p, int Nt, double T, const SpatialSystem& spatial,
                                   const SpaceTimeFunction& F, const SpatialFunction& psi0) {
  return assemble_spacetime(assemble_temporal(p, Nt, T), spatial, F, l2_project(spatial, psi0));
}

Eigen::MatrixXcd dense_operator(const SpaceTimeSystem& system) {
  const Eigen::MatrixXcd M = system.spatial.M.to_dense().cast<cplx>();
  const Eigen::MatrixXcd A = system.spatial.A.to_dense().cast<cplx>();
  const int n = system.time_size(), Ns = system.space_size();
  Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n) * Ns,
                                              static_cast<Eigen::Index>(n) * Ns);
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      K.block(l * Ns, j * Ns, Ns, Ns) =
          cplx(0.0, system.temporal.B(l, j)) * M + system.temporal.C(l, j) * A;
  return K;
}

DiscreteField make_field(const SpaceTimeSystem& system, const Eigen::MatrixXcd& U) {
  DiscreteField field;
  field.time_knots = system.temporal.knots;
  field.space = system.spatial.space;
  const int n = system.time_size();
  field.W.resize(n + 1, system.space_size());
  field.W.row(0) = system.lifting.transpose();
  for (int j = 1; j <= n; ++j) field.W.row(j) = system.lifting.transpose() + U.row(j - 1);
  return field;
}

Eigen::MatrixXcd direct_solve_coefficients(const SpaceTimeSystem& system) {
  const int n = system.time_size(), Ns = system.space_size();
  const long N = static_cast<long>(n) * Ns;
  if (N > kMaxDirectUnknowns)
    throw InvalidArgument("direct_solve: " + std::to_string(N) + " unknowns exceed the limit of " +
                          std::to_string(kMaxDirectUnknowns));
  const auto& B = system.temporal.B;
  const auto& C = system.temporal.C;
  const auto& M = system.spatial.M;
  const auto& A = system.spatial.A;
  const int w = M.lower();

  std::vector<Eigen::Triplet<cplx>> triplets;
  for (int l = 0; l < n; ++l) {
    for (int j = 0; j < n; ++j) {
      const double b = B(l, j), c = C(l, j);
      if (b == 0.0 && c == 0.0) continue;
      for (int i = 0; i < Ns; ++i) {
        for (int r = std::max(0, i - w); r <= std::min(Ns - 1, i + w); ++r) {
          const cplx v = cplx(0.0, b * M(i, r)) + c * A(i, r);
          if (v != cplx(0.0)) triplets.emplace_back(l * Ns + i, j * Ns + r, v);
        }
      }
    }
  }
  Eigen::SparseMatrix<cplx> K(N, N);
  K.setFromTriplets(triplets.begin(), triplets.end());
  K.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<cplx>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(K);
  if (lu.info() != Eigen::Success)
    throw SingularSystemError("direct_solve: sparse LU failed: " + lu.lastErrorMessage(), 0.0);

  // Row-major flattening of the time-major block gives index l * Ns + i.
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rhs = system.rhs;
  const Eigen::VectorXcd x = lu.solve(Eigen::Map<const Eigen::VectorXcd>(rhs.data(), N));
  if (lu.info() != Eigen::Success) throw SingularSystemError("direct_solve: solve failed", 0.0);
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> U =
      Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
          x.data(), n, Ns);
  return U;
}

DiscreteField direct_solve(const SpaceTimeSystem& system) {
  return make_field(system, direct_solve_coefficients(system));
}

SchurFactors schur_decompose(const Eigen::MatrixXcd& X) {
  if (X.rows() != X.cols()) throw InvalidArgument("schur_decompose: matrix must be square");
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(X, true);
  if (schur.info() != Eigen::Success) throw ConvergenceError("schur_decompose: QR iteration failed");
  return {schur.matrixU(), schur.matrixT()};
}

Eigen::MatrixXcd bartels_stewart_coefficients(const SpaceTimeSystem& system) {
  const int n = system.time_size(), Ns = system.space_size();
  const auto& Msp = system.spatial.M;
  const auto& Asp = system.spatial.A;
  const int w = Msp.lower();

  // i B U M + C U A = F  <=>  U M + X U A = G,  X = (iB)^{-1} C,  G = (iB)^{-1} F.
  const Eigen::PartialPivLU<Eigen::MatrixXd> Blu(system.temporal.B);
  const cplx minus_i(0.0, -1.0);
  const Eigen::MatrixXcd X = minus_i * Blu.solve(system.temporal.C).cast<cplx>();
  Eigen::MatrixXcd G(n, Ns);
  G.real() = Blu.solve(system.rhs.real());
  G.imag() = Blu.solve(system.rhs.imag());
  G *= minus_i;

  const SchurFactors sf = schur_decompose(X);
  const Eigen::MatrixXcd Y = sf.Q.adjoint() * G;

  // Z M + R Z A = Y with R upper triangular: rows of Z from the last one up.
  Eigen::MatrixXcd Z(n, Ns), AZ(n, Ns);
  for (int k = n - 1; k >= 0; --k) {
    Eigen::VectorXcd rhs = Y.row(k).transpose();
    for (int j = k + 1; j < n; ++j) rhs -= sf.R(k, j) * AZ.row(j).transpose();
    const cplx shift = sf.R(k, k);
    BandMatrix<cplx> S(Ns, w, w);
    for (int i = 0; i < Ns; ++i)
      for (int r = std::max(0, i - w); r <= std::min(Ns - 1, i + w); ++r)
        S.at(i, r) = Msp(i, r) + shift * Asp(i, r);
    const BandLU<cplx> lu(S);
    lu.solve_in_place(std::span<cplx>(rhs.data(), static_cast<std::size_t>(rhs.size())));
    Z.row(k) = rhs.transpose();
    AZ.row(k) = apply_band(Asp, rhs).transpose();
  }
  return sf.Q * Z;
}

DiscreteField bartels_stewart_solve(const SpaceTimeSystem& system) {
  return make_field(system, bartels_stewart_coefficients(system));
}

Eigen::VectorXcd DiscreteField::spatial_coefficients(double t, int deriv) const {
  const BasisEval ev = eval_all(time_knots, t, deriv);
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(W.cols());
  for (int r = 0; r <= time_knots.degree; ++r) {
    const int j = ev.first_active + r;
    if (j >= 0 && j < W.rows()) c += ev(deriv, r) * W.row(j).transpose();
  }
  return c;
}

FieldValue evaluate_field(const DiscreteField& field, double x, double t) {
  const Eigen::VectorXcd c0 = field.spatial_coefficients(t, 0);
  const Eigen::VectorXcd c1 = field.spatial_coefficients(t, 1);
  FieldValue v;
  v.value = evaluate_spatial(field.space, c0, x, 0);
  v.dx = evaluate_spatial(field.space, c0, x, 1);
  v.dt = evaluate_spatial(field.space, c1, x, 0);
  return v;
}

}  // namespace stschrod
