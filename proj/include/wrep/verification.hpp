#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wrep/geometry.hpp"
#include "wrep/mesh.hpp"
#include "wrep/weierstrass.hpp"

namespace wrep {

/// Residual tolerances. Algebraic identities evaluated in closed form get
/// the tight relative bound; curvature divides by EG - F^2; the
/// finite-difference and path checks carry truncation/quadrature error.
struct Tolerances {
  double algebraic = 1e-10;       // relative, on (1 + scale)
  double mean_curvature = 1e-8;   // absolute
  double fd = 1e-5;               // absolute, central differences
  double path = 1e-9;             // absolute, straight vs L-path
  double fd_step = 1e-4;
};

struct CheckRecord {
  std::string name;
  double max_abs_residual = 0.0;
  double relative_scale = 0.0;  // scale at the maximizing sample
  double tolerance = 0.0;
  std::size_t samples_checked = 0;
  std::size_t samples_skipped = 0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;
  double convention_constant = 0.0;
  bool overall = false;

  const CheckRecord* find(std::string_view name) const;
};

/// Evaluate every identity at every non-skipped grid sample:
///   phi_square_zero      phi . phi = 0 (componentwise square sum)
///   lemma_1              |Re phi|^2 - |Im phi|^2 = 0
///   lemma_2              Re phi . Im phi = 0
///   orthogonality        F = x_u . x_v = 0
///   equal_norms          E = G
///   harmonicity          x_uu + x_vv = 0
///   mean_curvature_zero  |H_vec| = 0 (non-degenerate samples)
///   crosscheck_zero      textbook scalar H = 0 (non-degenerate samples)
///   fd_consistency       analytic derivatives vs central differences
///   path_independence    straight vs axis-aligned integral of phi
/// Relative residuals are normalized by (1 + scale); scale is the natural
/// magnitude of the identity's terms. Degenerate and singular samples are
/// counted, never silently dropped. Work is striped across `workers`
/// threads; maxima are order-independent, so the report is deterministic.
VerificationReport verify(const WeierstrassData& d, const ParamDomain& dom,
                          const Tolerances& tol = {}, unsigned workers = 1);

/// Report as a JSON document (schema "wrep-report/1"), with exactly the
/// record fields above.
std::string report_to_json(const VerificationReport& r);

/// Sphere patch x(u,v) = R(cos u cos v, sin u cos v, sin v) from its
/// closed-form derivatives: the non-minimal control surface. |H_scalar|
/// is 2/R under this code's curvature convention.
SurfaceSample sphere_sample(double R, double u, double v);

/// Same sample with derivatives by central differences of the closed-form
/// position at step h.
SurfaceSample sphere_fd_sample(double R, double u, double v, double h);

/// Ratio of this code's H_scalar to the textbook scalar, measured on the
/// unit sphere at (u, v) = (0.3, 0.2). Stamped into every report.
double measure_convention_constant();

/// Run the geometric subset (orthogonality, equal_norms, harmonicity,
/// mean_curvature_zero, crosscheck_zero) on an n x n sphere patch,
/// u in [0.1, 1.0], v in [0.1, 0.8]. The curvature checks must fail here;
/// a suite that passes a round sphere is broken.
VerificationReport sphere_control_report(double R = 1.0, std::size_t n = 16,
                                         const Tolerances& tol = {});

}  // namespace wrep
