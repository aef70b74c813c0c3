#include "stschrod/spatial.hpp"

#include <string>
#include <vector>

#include "stschrod/error.hpp"

namespace stschrod {

SpatialSpace spatial_space(int px, int Nx, Interval domain) {
  if (Nx < 2) throw InvalidArgument("spatial_space: need at least two elements, got " + std::to_string(Nx));
  SpatialSpace s;
  s.degree = px;
  s.Nx = Nx;
  s.domain = domain;
  s.knots = open_uniform_knots(px, Nx, domain);
  s.hx = domain.length() / Nx;
  return s;
}

SpatialSystem assemble_spatial(const SpatialSpace& space, const Potential& V, int quad_points) {
  const int p = space.degree;
  const int dim = space.dim();
  SpatialSystem sys;
  sys.space = space;
  sys.V = V;
  sys.M = BandMatrix<double>(dim, p, p);
  sys.A = BandMatrix<double>(dim, p, p);

  const BasisTable table(space.knots, quad_points > 0 ? quad_points : p + 3, 1);
  for (int e = 0; e < table.num_elements(); ++e) {
    for (int q = 0; q < table.num_points(); ++q) {
      const double w = table.weight(e, q);
      const double v = V ? V(table.point(e, q)) : 0.0;
      for (int a = 0; a <= p; ++a) {
        const int i = e + a - 1;
        if (i < 0 || i >= dim) continue;
        const double va = table.basis(e, q, 0, a), da = table.basis(e, q, 1, a);
        for (int b = 0; b <= p; ++b) {
          const int r = e + b - 1;
          if (r < 0 || r >= dim) continue;
          const double vb = table.basis(e, q, 0, b), db = table.basis(e, q, 1, b);
          sys.M.at(i, r) += w * va * vb;
          sys.A.at(i, r) += w * (0.5 * da * db - v * va * vb);
        }
      }
    }
  }
  return sys;
}

Eigen::VectorXcd load_vector(const SpatialSpace& space, const SpatialFunction& f, int quad_points) {
  const int p = space.degree;
  const int dim = space.dim();
  Eigen::VectorXcd load = Eigen::VectorXcd::Zero(dim);
  if (!f) return load;
  const BasisTable table(space.knots, quad_points > 0 ? quad_points : p + 3, 0);
  for (int e = 0; e < table.num_elements(); ++e) {
    for (int q = 0; q < table.num_points(); ++q) {
      const cplx fw = f(table.point(e, q)) * table.weight(e, q);
      for (int a = 0; a <= p; ++a) {
        const int i = e + a - 1;
        if (i >= 0 && i < dim) load(i) += fw * table.basis(e, q, 0, a);
      }
    }
  }
  return load;
}

Eigen::VectorXcd l2_project(const SpatialSystem& system, const SpatialFunction& f) {
  Eigen::VectorXcd c = load_vector(system.space, f);
  const BandLU<cplx> lu(system.M);
  lu.solve_in_place(std::span<cplx>(c.data(), static_cast<std::size_t>(c.size())));
  return c;
}

Eigen::VectorXcd l2_project(const SpatialSpace& space, const SpatialFunction& f) {
  return l2_project(assemble_spatial(space, nullptr), f);
}

cplx evaluate_spatial(const SpatialSpace& space, const Eigen::VectorXcd& coefficients, double x,
                      int deriv) {
  const BasisEval ev = eval_all(space.knots, x, deriv);
  cplx v = 0.0;
  for (int r = 0; r <= space.degree; ++r) {
    const int i = ev.first_active + r - 1;
    if (i >= 0 && i < space.dim()) v += coefficients(i) * ev(deriv, r);
  }
  return v;
}

}  // namespace stschrod
