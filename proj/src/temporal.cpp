#include "stschrod/temporal.hpp"

#include <cmath>
#include <string>

#include "stschrod/error.hpp"

namespace stschrod {

TemporalMatrices assemble_temporal(int p, int Nt, double T, int quad_points) {
  if (p < 1) throw InvalidArgument("assemble_temporal: degree must be >= 1");
  if (Nt < p) {
    throw InvalidArgument("assemble_temporal: need Nt >= p (got Nt=" + std::to_string(Nt) +
                          ", p=" + std::to_string(p) + ")");
  }
  if (!(T > 0.0)) throw InvalidArgument("assemble_temporal: final time must be positive");

  TemporalMatrices tm;
  tm.p = p;
  tm.Nt = Nt;
  tm.T = T;
  tm.ht = T / Nt;
  tm.knots = open_uniform_knots(p, Nt, {0.0, T});
  const int dim = tm.knots.dimension();  // n + 1
  const int n = dim - 1;

  // Full Gram-type matrices over phi_0..phi_n: D1(a, b) = (phi_b', phi_a'),
  // D0(a, b) = (phi_b', phi_a).
  Eigen::MatrixXd D1 = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd D0 = Eigen::MatrixXd::Zero(dim, dim);
  const BasisTable table(tm.knots, quad_points > 0 ? quad_points : p + 3, 1);
  for (int e = 0; e < table.num_elements(); ++e) {
    for (int q = 0; q < table.num_points(); ++q) {
      const double w = table.weight(e, q);
      for (int a = 0; a <= p; ++a) {
        const double va = table.basis(e, q, 0, a), da = table.basis(e, q, 1, a);
        for (int b = 0; b <= p; ++b) {
          const double db = table.basis(e, q, 1, b);
          D1(e + a, e + b) += w * db * da;
          D0(e + a, e + b) += w * db * va;
        }
      }
    }
  }

  tm.B = D1.block(0, 1, n, n);
  tm.C = D0.block(0, 1, n, n);
  tm.B_ext_col0 = D1.block(0, 0, n, 1);
  tm.C_ext_col0 = D0.block(0, 0, n, 1);
  return tm;
}

ScaledSystem scaled_system(int p, int Nt, double rho) {
  if (!std::isfinite(rho)) throw InvalidArgument("scaled_system: rho must be finite");
  const TemporalMatrices tm = assemble_temporal(p, Nt, 1.0);
  ScaledSystem s;
  s.p = p;
  s.Nt = Nt;
  s.rho = rho;
  const cplx I(0.0, 1.0);
  s.K = I * (tm.ht * tm.B).cast<cplx>() - rho * tm.C.cast<cplx>();
  return s;
}

Eigen::VectorXcd scalar_rhs(const TemporalMatrices& tm, double mu, cplx psi0,
                            const ScalarFunction& f, int quad_points) {
  const int n = tm.size();
  const int p = tm.p;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  const BasisTable table(tm.knots, quad_points > 0 ? quad_points : p + 3, 1);
  for (int e = 0; f && e < table.num_elements(); ++e) {
    for (int q = 0; q < table.num_points(); ++q) {
      const cplx fw = f(table.point(e, q)) * table.weight(e, q);
      for (int a = 0; a <= p; ++a) {
        const int l = e + a;
        if (l < n) rhs(l) += fw * table.basis(e, q, 1, a);
      }
    }
  }
  // Only phi_0 is nonzero at t = 0, where it equals one.
  rhs(0) += mu * psi0;
  return rhs;
}

Eigen::VectorXcd scalar_rhs(int p, int Nt, double T, double mu, cplx psi0,
                            const ScalarFunction& f) {
  return scalar_rhs(assemble_temporal(p, Nt, T), mu, psi0, f);
}

ScalarSolution solve_scalar_ivp(const TemporalMatrices& tm, double mu, cplx psi0,
                                const ScalarFunction& f) {
  const cplx I(0.0, 1.0);
  const Eigen::MatrixXcd K = I * tm.B.cast<cplx>() - mu * tm.C.cast<cplx>();
  const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXcd>(K).singularValues();
  const double smallest = sv(sv.size() - 1);
  if (!(smallest >= 1e-13 * K.norm())) {
    throw SingularSystemError("solve_scalar_ivp: system matrix singular at mu=" +
                                  std::to_string(mu) + ", ht=" + std::to_string(tm.ht),
                              smallest);
  }
  const Eigen::VectorXcd u = K.partialPivLu().solve(scalar_rhs(tm, mu, psi0, f));

  ScalarSolution sol;
  sol.knots = tm.knots;
  sol.coefficients.resize(tm.size() + 1);
  sol.coefficients(0) = psi0;
  // Constant lifting psi0 = psi0 * sum_j phi_j.
  sol.coefficients.tail(tm.size()) = u.array() + psi0;
  return sol;
}

ScalarSolution solve_scalar_ivp(int p, int Nt, double T, double mu, cplx psi0,
                                const ScalarFunction& f) {
  return solve_scalar_ivp(assemble_temporal(p, Nt, T), mu, psi0, f);
}

namespace {

cplx evaluate_spline(const KnotVector& kv, const Eigen::VectorXcd& coef, double t, int deriv) {
  const BasisEval ev = eval_all(kv, t, deriv);
  cplx v = 0.0;
  for (int r = 0; r <= kv.degree; ++r) v += coef(ev.first_active + r) * ev(deriv, r);
  return v;
}

}  // namespace

cplx ScalarSolution::operator()(double t) const {
  return evaluate_spline(knots, coefficients, t, 0);
}

cplx ScalarSolution::derivative(double t) const {
  return evaluate_spline(knots, coefficients, t, 1);
}

namespace {

cplx gauss_panel(const ScalarFunction& g, double a, double b, const QuadratureRule& rule) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  cplx s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * g(mid + half * rule.nodes[i]);
  return s * half;
}

cplx adaptive_step(const ScalarFunction& g, double a, double b, cplx whole, double tol, int depth,
                   const QuadratureRule& rule) {
  const double m = 0.5 * (a + b);
  const cplx left = gauss_panel(g, a, m, rule);
  const cplx right = gauss_panel(g, m, b, rule);
  const cplx refined = left + right;
  if (std::abs(refined - whole) <= tol || depth >= 40) return refined;
  return adaptive_step(g, a, m, left, 0.5 * tol, depth + 1, rule) +
         adaptive_step(g, m, b, right, 0.5 * tol, depth + 1, rule);
}

}  // namespace

cplx integrate_adaptive(const ScalarFunction& g, double a, double b, double tol) {
  if (a == b) return 0.0;
  static const QuadratureRule rule = gauss_legendre_rule(10);
  return adaptive_step(g, a, b, gauss_panel(g, a, b, rule), tol, 0, rule);
}

cplx exact_ivp_solution(double mu, cplx psi0, const ScalarFunction& f, double t) {
  const cplx I(0.0, 1.0);
  cplx duhamel = 0.0;
  if (f) {
    duhamel = integrate_adaptive(
        [&](double s) { return std::exp(I * mu * (t - s)) * f(s); }, 0.0, t, 1e-13);
  }
  return std::exp(I * mu * t) * psi0 - I * duhamel;
}

}  // namespace stschrod
