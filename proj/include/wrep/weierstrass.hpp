#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "wrep/complex_core.hpp"
#include "wrep/errors.hpp"
#include "wrep/expr.hpp"

namespace wrep {

/// How grid sampling and integration react to declared singularities.
struct SingularityPolicy {
  enum class Behavior { skip_sample, error };
  double exclusion_radius = 1e-6;  // default radius for declared points
  Behavior behavior = Behavior::skip_sample;
};

/// A disk in the parameter plane that samples and paths must stay out of.
struct ExclusionZone {
  Complex center{};
  double radius = 0.0;
};

/// Piecewise-straight integration path. The integral of an analytic phi is
/// path-independent on a simply connected domain, so the choice only
/// matters for singularity avoidance (and is cross-checked, not assumed).
struct IntegrationPath {
  enum class Kind { straight_segment, axis_aligned };

  static IntegrationPath straight(Complex from, Complex to);
  /// from -> (Re to, Im from) -> to; degenerate legs are dropped.
  static IntegrationPath axis_aligned(Complex from, Complex to);

  Kind kind = Kind::straight_segment;
  std::vector<Complex> waypoints;  // consecutive waypoints are distinct
};

struct WeierstrassOptions {
  Complex basepoint{0.0};
  SingularityPolicy policy{};
  std::vector<ExclusionZone> exclusions{};
};

struct FirstDerivs {
  RealVec3 x_u;
  RealVec3 x_v;
};

struct SecondDerivs {
  RealVec3 x_uu;
  RealVec3 x_vv;
  RealVec3 x_uv;
};

/// The pair (f, g) -- or a user-supplied phi triple -- together with the
/// derived phi and phi' expressions, a basepoint, and singularity handling.
/// Immutable after construction; evaluation methods are pure.
class WeierstrassData {
 public:
  /// phi = (f*(1-g^2), i*f*(1+g^2), 2*f*g), built symbolically; phi' is the
  /// componentwise symbolic derivative.
  static WeierstrassData make_phi(Expr f, Expr g, WeierstrassOptions opts = {});

  /// Direct-phi mode: the route for data whose g has poles but whose
  /// cancelled phi components are analytic. The null condition phi^2 = 0 is
  /// not implied by construction here; the verification suite checks it.
  static WeierstrassData from_phi(Expr phi1, Expr phi2, Expr phi3,
                                  WeierstrassOptions opts = {});

  bool has_fg() const { return fg_.has_value(); }
  const Expr& f() const { return fg_->first; }
  const Expr& g() const { return fg_->second; }
  const std::array<Expr, 3>& phi() const { return phi_; }
  const std::array<Expr, 3>& phi_prime() const { return phi_prime_; }
  Complex basepoint() const { return basepoint_; }
  const SingularityPolicy& policy() const { return policy_; }
  const std::vector<ExclusionZone>& exclusions() const { return exclusions_; }

  ComplexVec3 phi_at(Complex z) const;
  ComplexVec3 phi_prime_at(Complex z) const;

  /// Phi(z) = \int phi dz along the given path from the basepoint to z.
  /// Adaptive Gauss-Legendre per segment; the absolute tolerance is split
  /// across segments. Throws PathError if the path strays into an exclusion
  /// zone or hits a singular evaluation, QuadratureError on non-convergence.
  ComplexVec3 integrate_phi(Complex z, const IntegrationPath& path,
                            double abs_tol = 1e-10) const;
  /// Same, along the straight segment basepoint -> z.
  ComplexVec3 integrate_phi(Complex z, double abs_tol = 1e-10) const;

  /// x(z) = Re Phi(z); the immersion with x(basepoint) = 0.
  RealVec3 surface_point(Complex z, double abs_tol = 1e-10) const;
  RealVec3 surface_point(Complex z, const IntegrationPath& path,
                         double abs_tol = 1e-10) const;

  /// x_u = Re phi, x_v = -Im phi. Analytic; no numerical differentiation.
  FirstDerivs first_derivs(Complex z) const;

  /// x_uu = Re phi', x_vv = -Re phi' (exact negation of the same
  /// evaluation), x_uv = -Im phi'.
  SecondDerivs second_derivs(Complex z) const;

  /// Central differences of the integrated immersion at step h. Increments
  /// x(z+d) - x(z) are integrals of phi over short segments from z; the
  /// common trunk Phi(z) cancels identically in every difference.
  FirstDerivs fd_first_derivs(Complex z, double h) const;
  SecondDerivs fd_second_derivs(Complex z, double h) const;

 private:
  WeierstrassData() = default;

  std::optional<std::pair<Expr, Expr>> fg_;
  std::array<Expr, 3> phi_;
  std::array<Expr, 3> phi_prime_;
  Complex basepoint_{0.0};
  SingularityPolicy policy_{};
  std::vector<ExclusionZone> exclusions_;
};

}  // namespace wrep
