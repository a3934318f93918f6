#include "wrep/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wrep/quadrature.hpp"

namespace wrep {

namespace {

constexpr Complex kI{0.0, 1.0};

void append_distinct(std::vector<Complex>& pts, Complex p) {
  if (pts.empty() || pts.back() != p) pts.push_back(p);
}

double segment_distance(Complex a, Complex b, Complex p) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * d.real() + (p.imag() - a.imag()) * d.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

std::string format_point(Complex z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

}  // namespace

IntegrationPath IntegrationPath::straight(Complex from, Complex to) {
  IntegrationPath p;
  p.kind = Kind::straight_segment;
  p.waypoints.push_back(from);
  append_distinct(p.waypoints, to);
  return p;
}

IntegrationPath IntegrationPath::axis_aligned(Complex from, Complex to) {
  IntegrationPath p;
  p.kind = Kind::axis_aligned;
  p.waypoints.push_back(from);
  append_distinct(p.waypoints, Complex{to.real(), from.imag()});
  append_distinct(p.waypoints, to);
  return p;
}

WeierstrassData WeierstrassData::make_phi(Expr f, Expr g, WeierstrassOptions opts) {
  WeierstrassData d;
  const Expr one = Expr::literal(1.0);
  const Expr i = Expr::literal(kI);
  const Expr two = Expr::literal(2.0);
  const Expr g2 = Expr::pow(g, 2);
  d.phi_[0] = f * (one - g2);
  d.phi_[1] = (i * f) * (one + g2);
  d.phi_[2] = (two * f) * g;
  d.fg_ = std::make_pair(std::move(f), std::move(g));
  for (int k = 0; k < 3; ++k) d.phi_prime_[k] = differentiate(d.phi_[k]);
  d.basepoint_ = opts.basepoint;
  d.policy_ = opts.policy;
  d.exclusions_ = std::move(opts.exclusions);
  return d;
}

WeierstrassData WeierstrassData::from_phi(Expr phi1, Expr phi2, Expr phi3,
                                          WeierstrassOptions opts) {
  WeierstrassData d;
  d.phi_ = {std::move(phi1), std::move(phi2), std::move(phi3)};
  for (int k = 0; k < 3; ++k) d.phi_prime_[k] = differentiate(d.phi_[k]);
  d.basepoint_ = opts.basepoint;
  d.policy_ = opts.policy;
  d.exclusions_ = std::move(opts.exclusions);
  return d;
}

ComplexVec3 WeierstrassData::phi_at(Complex z) const {
  return {phi_[0].eval(z), phi_[1].eval(z), phi_[2].eval(z)};
}

ComplexVec3 WeierstrassData::phi_prime_at(Complex z) const {
  return {phi_prime_[0].eval(z), phi_prime_[1].eval(z), phi_prime_[2].eval(z)};
}

ComplexVec3 WeierstrassData::integrate_phi(Complex z, const IntegrationPath& path,
                                           double abs_tol) const {
  if (path.waypoints.empty())
    throw PathError("integration path has no waypoints", basepoint_);
  if (path.waypoints.front() != basepoint_)
    throw PathError("integration path does not start at the basepoint " +
                        format_point(basepoint_),
                    path.waypoints.front());
  if (path.waypoints.back() != z)
    throw PathError("integration path does not end at the target " + format_point(z),
                    path.waypoints.back());

  for (std::size_t s = 0; s + 1 < path.waypoints.size(); ++s) {
    for (const ExclusionZone& zone : exclusions_) {
      const double margin = std::max(zone.radius, policy_.exclusion_radius);
      if (segment_distance(path.waypoints[s], path.waypoints[s + 1], zone.center) < margin)
        throw PathError("integration path passes within " + std::to_string(margin) +
                            " of the excluded point " + format_point(zone.center),
                        zone.center);
    }
  }

  const std::size_t nsegs = path.waypoints.size() - 1;
  const double seg_tol = nsegs == 0 ? abs_tol : abs_tol / static_cast<double>(nsegs);
  auto f = [this](Complex w) { return phi_at(w); };
  ComplexVec3 total{};
  try {
    for (std::size_t s = 0; s + 1 < path.waypoints.size(); ++s)
      total = total + integrate_segment(f, path.waypoints[s], path.waypoints[s + 1], seg_tol);
  } catch (const EvalError& e) {
    throw PathError(std::string("integration path hits a singular evaluation: ") + e.what(),
                    e.at);
  }
  return total;
}

ComplexVec3 WeierstrassData::integrate_phi(Complex z, double abs_tol) const {
  return integrate_phi(z, IntegrationPath::straight(basepoint_, z), abs_tol);
}

RealVec3 WeierstrassData::surface_point(Complex z, double abs_tol) const {
  if (z == basepoint_) return {0.0, 0.0, 0.0};
  return re_vec(integrate_phi(z, abs_tol));
}

RealVec3 WeierstrassData::surface_point(Complex z, const IntegrationPath& path,
                                        double abs_tol) const {
  return re_vec(integrate_phi(z, path, abs_tol));
}

FirstDerivs WeierstrassData::first_derivs(Complex z) const {
  const ComplexVec3 p = phi_at(z);
  return {re_vec(p), -im_vec(p)};
}

SecondDerivs WeierstrassData::second_derivs(Complex z) const {
  const ComplexVec3 dp = phi_prime_at(z);
  const RealVec3 x_uu = re_vec(dp);
  return {x_uu, -x_uu, -im_vec(dp)};
}

FirstDerivs WeierstrassData::fd_first_derivs(Complex z, double h) const {
  auto f = [this](Complex w) { return phi_at(w); };
  // Short-segment increments; tight tolerance is cheap at this length.
  auto inc = [&](Complex d) { return integrate_segment(f, z, z + d, 1e-13); };
  const ComplexVec3 du = inc(Complex{h, 0.0}) - inc(Complex{-h, 0.0});
  const ComplexVec3 dv = inc(Complex{0.0, h}) - inc(Complex{0.0, -h});
  const double s = 1.0 / (2.0 * h);
  return {s * re_vec(du), s * re_vec(dv)};
}

SecondDerivs WeierstrassData::fd_second_derivs(Complex z, double h) const {
  auto f = [this](Complex w) { return phi_at(w); };
  auto inc = [&](double du, double dv) {
    return integrate_segment(f, z, z + Complex{du, dv}, 1e-13);
  };
  const double s2 = 1.0 / (h * h);
  const RealVec3 x_uu = s2 * re_vec(inc(h, 0.0) + inc(-h, 0.0));
  const RealVec3 x_vv = s2 * re_vec(inc(0.0, h) + inc(0.0, -h));
  const ComplexVec3 cross =
      inc(h, h) - inc(h, -h) - inc(-h, h) + inc(-h, -h);
  const RealVec3 x_uv = (0.25 * s2) * re_vec(cross);
  return {x_uu, x_vv, x_uv};
}

}  // namespace wrep
