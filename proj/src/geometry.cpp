#include "wrep/geometry.hpp"

#include <cmath>
#include <string>

#include "wrep/errors.hpp"

namespace wrep {

namespace {

double form_determinant(double E, double F, double G) { return E * G - F * F; }

DegenerateError degenerate_error(double egf2) {
  return DegenerateError("degenerate sample: E*G - F^2 = " + std::to_string(egf2) +
                             " is below the branch-point threshold",
                         egf2);
}

}  // namespace

bool is_degenerate(double E, double F, double G) {
  return form_determinant(E, F, G) < 1e-14 * (E * G + 1.0);
}

RealVec3 unit_normal(const RealVec3& x_u, const RealVec3& x_v) {
  const double E = norm_sq(x_u);
  const double F = dot_real(x_u, x_v);
  const double G = norm_sq(x_v);
  if (is_degenerate(E, F, G)) throw degenerate_error(form_determinant(E, F, G));
  const RealVec3 c = cross(x_u, x_v);
  return (1.0 / norm(c)) * c;
}

RealVec3 project_normal(const RealVec3& v, const RealVec3& n) {
  return dot_real(v, n) * n;
}

RealVec3 mean_curvature_vector(const SurfaceSample& s) {
  if (s.degenerate) throw degenerate_error(form_determinant(s.E, s.F, s.G));
  const RealVec3 numer = s.G * s.x_uu + (-2.0 * s.F) * s.x_uv + s.E * s.x_vv;
  return project_normal((1.0 / form_determinant(s.E, s.F, s.G)) * numer, s.normal);
}

double mean_curvature_crosscheck(const SurfaceSample& s) {
  if (s.degenerate) throw degenerate_error(form_determinant(s.E, s.F, s.G));
  const double e = dot_real(s.x_uu, s.normal);
  const double f = dot_real(s.x_uv, s.normal);
  const double g = dot_real(s.x_vv, s.normal);
  return (e * s.G - 2.0 * f * s.F + g * s.E) / (2.0 * form_determinant(s.E, s.F, s.G));
}

SurfaceSample make_sample(Complex z, const RealVec3& x, const FirstDerivs& d1,
                          const SecondDerivs& d2) {
  SurfaceSample s;
  s.z = z;
  s.x = x;
  s.x_u = d1.x_u;
  s.x_v = d1.x_v;
  s.x_uu = d2.x_uu;
  s.x_vv = d2.x_vv;
  s.x_uv = d2.x_uv;
  s.E = norm_sq(s.x_u);
  s.F = dot_real(s.x_u, s.x_v);
  s.G = norm_sq(s.x_v);
  s.degenerate = is_degenerate(s.E, s.F, s.G);
  if (!s.degenerate) {
    s.normal = unit_normal(s.x_u, s.x_v);
    s.H_vec = mean_curvature_vector(s);
    s.H_scalar = dot_real(s.H_vec, s.normal);
  }
  return s;
}

SurfaceSample sample_at(const WeierstrassData& d, Complex z) {
  // Derivatives first: a point singularity raises EvalError here, before
  // the position integral can turn it into a quadrature failure.
  const FirstDerivs d1 = d.first_derivs(z);
  const SecondDerivs d2 = d.second_derivs(z);
  return make_sample(z, d.surface_point(z), d1, d2);
}

SurfaceSample fd_sample_at(const WeierstrassData& d, Complex z, double h) {
  const FirstDerivs d1 = d.fd_first_derivs(z, h);
  const SecondDerivs d2 = d.fd_second_derivs(z, h);
  return make_sample(z, d.surface_point(z), d1, d2);
}

}  // namespace wrep
