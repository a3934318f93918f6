#pragma once

#include "wrep/complex_core.hpp"
#include "wrep/weierstrass.hpp"

namespace wrep {

/// One fully evaluated point of the immersion: parameter, position, first
/// and second partials, first fundamental form, unit normal, and the mean
/// curvature vector/scalar. When `degenerate` is set (E*G - F^2 under the
/// threshold, a branch point) the normal and curvature fields are zero and
/// must not be consumed.
struct SurfaceSample {
  Complex z{};
  RealVec3 x{};
  RealVec3 x_u{}, x_v{};
  RealVec3 x_uu{}, x_vv{}, x_uv{};
  double E = 0.0, F = 0.0, G = 0.0;
  bool degenerate = false;
  RealVec3 normal{};
  RealVec3 H_vec{};
  double H_scalar = 0.0;
};

/// Branch-point test: E*G - F^2 < 1e-14 * (E*G + 1).
bool is_degenerate(double E, double F, double G);

/// cross(x_u, x_v) normalized. Orientation convention: this is THE normal;
/// scalar curvature signs are reported relative to it.
/// Throws DegenerateError (carrying E*G - F^2) below the threshold.
RealVec3 unit_normal(const RealVec3& x_u, const RealVec3& x_v);

/// Projection of v onto the normal line: dot(v, n) * n for unit n.
RealVec3 project_normal(const RealVec3& v, const RealVec3& n);

/// Mean curvature vector
///   P_n[(G*x_uu - 2F*x_uv + E*x_vv) / (EG - F^2)].
/// The middle term uses the mixed partial; for conformal samples F = 0 and
/// the term drops out either way. No factor 1/2: the convention constant
/// against the textbook scalar is measured, not assumed.
RealVec3 mean_curvature_vector(const SurfaceSample& s);

/// Independent scalar cross-check by the textbook formula
///   (e*G - 2f*F + g*E) / (2*(EG - F^2)),
/// e = x_uu.n, f = x_uv.n, g = x_vv.n. Signed w.r.t. the stored normal.
double mean_curvature_crosscheck(const SurfaceSample& s);

/// Assemble a sample from externally supplied position and derivatives
/// (also the route for closed-form control surfaces). Sets E, F, G, the
/// degenerate flag, and -- when non-degenerate -- normal, H_vec, H_scalar.
SurfaceSample make_sample(Complex z, const RealVec3& x, const FirstDerivs& d1,
                          const SecondDerivs& d2);

/// Sample with analytic derivatives (phi, phi') and integrated position.
SurfaceSample sample_at(const WeierstrassData& d, Complex z);

/// Sample with all derivatives by central finite differences of the
/// integrated immersion at step h. Position as in sample_at.
SurfaceSample fd_sample_at(const WeierstrassData& d, Complex z, double h);

}  // namespace wrep
