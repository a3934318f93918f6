#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "wrep/complex_core.hpp"
#include "wrep/errors.hpp"
#include "wrep/expr.hpp"
#include "wrep/weierstrass.hpp"

#include "support/random_exprs.hpp"

using wrep::Complex;
using wrep::ComplexVec3;
using wrep::Expr;
using wrep::IntegrationPath;
using wrep::RealVec3;
using wrep::WeierstrassData;

namespace {

const Complex kI{0.0, 1.0};

WeierstrassData enneper() {
  return WeierstrassData::make_phi(wrep::parse("1"), wrep::parse("z"));
}

WeierstrassData catenoid() {
  return WeierstrassData::make_phi(wrep::parse("exp(-z)"), wrep::parse("exp(z)"));
}

bool close(const RealVec3& a, const RealVec3& b, double tol) {
  return std::abs(a.x1 - b.x1) <= tol && std::abs(a.x2 - b.x2) <= tol &&
         std::abs(a.x3 - b.x3) <= tol;
}

double cdist(Complex a, Complex b) { return std::abs(a - b); }

double vdist(const ComplexVec3& a, const ComplexVec3& b) {
  return std::max({cdist(a.c1, b.c1), cdist(a.c2, b.c2), cdist(a.c3, b.c3)});
}

}  // namespace

TEST_CASE("make_phi builds the representation triple symbolically") {
  const WeierstrassData d = enneper();
  REQUIRE(d.has_fg());

  const Expr one = Expr::literal(1.0);
  const Expr two = Expr::literal(2.0);
  const Expr i = Expr::literal(kI);
  const Expr z = Expr::variable();
  const Expr g2 = Expr::pow(z, 2);

  CHECK(d.phi()[0] == one * (one - g2));
  CHECK(d.phi()[1] == (i * one) * (one + g2));
  CHECK(d.phi()[2] == (two * one) * z);
}

TEST_CASE("from_phi keeps the components verbatim and has no fg pair") {
  const WeierstrassData d = WeierstrassData::from_phi(
      wrep::parse("z^2 - 1"), wrep::parse("i*(z^2 + 1)"), wrep::parse("2*z"));
  CHECK_FALSE(d.has_fg());
  CHECK(d.phi()[0] == wrep::parse("z^2 - 1"));
  CHECK(d.phi()[2] == wrep::parse("2*z"));
}

TEST_CASE("phi_at matches hand evaluation") {
  SUBCASE("enneper") {
    const WeierstrassData d = enneper();
    const ComplexVec3 at0 = d.phi_at(Complex{0.0});
    CHECK(at0.c1 == Complex{1.0});
    CHECK(at0.c2 == kI);
    CHECK(at0.c3 == Complex{0.0});

    const ComplexVec3 at2 = d.phi_at(Complex{2.0});
    CHECK(at2.c1 == Complex{-3.0});
    CHECK(at2.c2 == 5.0 * kI);
    CHECK(at2.c3 == Complex{4.0});
  }
  SUBCASE("catenoid at the basepoint") {
    const ComplexVec3 v = catenoid().phi_at(Complex{0.0});
    CHECK(std::abs(v.c1) <= 1e-16);
    CHECK(cdist(v.c2, 2.0 * kI) <= 1e-15);
    CHECK(cdist(v.c3, Complex{2.0}) <= 1e-15);
  }
  SUBCASE("direct-phi mode") {
    const WeierstrassData d = WeierstrassData::from_phi(
        wrep::parse("z^2 - 1"), wrep::parse("i*(z^2 + 1)"), wrep::parse("2*z"));
    const ComplexVec3 v = d.phi_at(Complex{0.0});
    CHECK(v.c1 == Complex{-1.0});
    CHECK(v.c2 == kI);
    CHECK(v.c3 == Complex{0.0});
  }
}

TEST_CASE("phi_prime_at is the symbolic derivative") {
  const WeierstrassData d = enneper();
  const ComplexVec3 at0 = d.phi_prime_at(Complex{0.0});
  CHECK(cdist(at0.c1, Complex{0.0}) == 0.0);
  CHECK(cdist(at0.c2, Complex{0.0}) == 0.0);
  CHECK(at0.c3 == Complex{2.0});

  // phi' = (-2z, 2iz, 2)
  const Complex p{0.3, -0.8};
  const ComplexVec3 at_p = d.phi_prime_at(p);
  CHECK(cdist(at_p.c1, -2.0 * p) <= 1e-15);
  CHECK(cdist(at_p.c2, 2.0 * kI * p) <= 1e-15);
  CHECK(at_p.c3 == Complex{2.0});
}

TEST_CASE("integrate_phi matches the closed-form antiderivative") {
  const WeierstrassData d = enneper();
  // Phi = (z - z^3/3, i(z + z^3/3), z^2)
  auto closed = [](Complex z) -> ComplexVec3 {
    const Complex z3 = z * z * z / 3.0;
    return {z - z3, kI * (z + z3), z * z};
  };

  SUBCASE("straight path to a real target") {
    const ComplexVec3 got = d.integrate_phi(Complex{1.0}, 1e-12);
    CHECK(vdist(got, closed(Complex{1.0})) <= 1e-11);
  }
  SUBCASE("straight path to a complex target") {
    const Complex t{0.4, 0.7};
    CHECK(vdist(d.integrate_phi(t, 1e-12), closed(t)) <= 1e-11);
  }
  SUBCASE("axis-aligned path agrees") {
    const Complex t{-0.6, 0.9};
    const ComplexVec3 got =
        d.integrate_phi(t, IntegrationPath::axis_aligned(Complex{0.0}, t), 1e-12);
    CHECK(vdist(got, closed(t)) <= 1e-11);
  }
}

TEST_CASE("surface_point anchors at the basepoint exactly") {
  const WeierstrassData d = catenoid();
  const RealVec3 x0 = d.surface_point(Complex{0.0});
  CHECK(x0.x1 == 0.0);
  CHECK(x0.x2 == 0.0);
  CHECK(x0.x3 == 0.0);

  // Custom basepoint is honored.
  wrep::WeierstrassOptions opts;
  opts.basepoint = Complex{0.5, -0.25};
  const WeierstrassData shifted =
      WeierstrassData::make_phi(wrep::parse("1"), wrep::parse("z"), opts);
  CHECK(shifted.basepoint() == opts.basepoint);
  const RealVec3 xb = shifted.surface_point(opts.basepoint);
  CHECK(xb.x1 == 0.0);
  CHECK(xb.x2 == 0.0);
  CHECK(xb.x3 == 0.0);
}

TEST_CASE("surface_point matches the real part of the antiderivative") {
  const WeierstrassData d = enneper();
  const RealVec3 at1 = d.surface_point(Complex{1.0});
  CHECK(close(at1, RealVec3{2.0 / 3.0, 0.0, 1.0}, 1e-10));

  const RealVec3 at_i = d.surface_point(kI);
  CHECK(close(at_i, RealVec3{0.0, -2.0 / 3.0, -1.0}, 1e-10));
}

TEST_CASE("first_derivs are the real and negated imaginary parts of phi") {
  const WeierstrassData d = enneper();
  const wrep::FirstDerivs fd = d.first_derivs(Complex{0.0});
  CHECK(fd.x_u.x1 == 1.0);
  CHECK(fd.x_u.x2 == 0.0);
  CHECK(fd.x_u.x3 == 0.0);
  CHECK(fd.x_v.x1 == 0.0);
  CHECK(fd.x_v.x2 == -1.0);
  CHECK(fd.x_v.x3 == 0.0);

  const Complex p{0.7, -0.3};
  const ComplexVec3 phi = d.phi_at(p);
  const wrep::FirstDerivs at_p = d.first_derivs(p);
  CHECK(at_p.x_u.x1 == phi.c1.real());
  CHECK(at_p.x_v.x1 == -phi.c1.imag());
  CHECK(at_p.x_u.x3 == phi.c3.real());
  CHECK(at_p.x_v.x3 == -phi.c3.imag());
}

TEST_CASE("second_derivs satisfy the harmonicity identity bitwise") {
  const WeierstrassData cat = catenoid();
  std::mt19937 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex p = testsupport::random_point(rng, -1.0, 1.0);
    const wrep::SecondDerivs sd = cat.second_derivs(p);
    const RealVec3 sum = sd.x_uu + sd.x_vv;
    CHECK(sum.x1 == 0.0);
    CHECK(sum.x2 == 0.0);
    CHECK(sum.x3 == 0.0);
  }

  const wrep::SecondDerivs at0 = enneper().second_derivs(Complex{0.0});
  CHECK(at0.x_uu.x3 == 2.0);
  CHECK(at0.x_vv.x3 == -2.0);
  CHECK(at0.x_uu.x1 == 0.0);
}

TEST_CASE("second_derivs match central differences of first_derivs") {
  const WeierstrassData d = catenoid();
  const Complex p{0.35, -0.55};
  const double h = 1e-4;
  const wrep::SecondDerivs sd = d.second_derivs(p);

  const RealVec3 xu_up = d.first_derivs(p + h).x_u;
  const RealVec3 xu_dn = d.first_derivs(p - h).x_u;
  const RealVec3 fd_uu = (1.0 / (2.0 * h)) * (xu_up - xu_dn);
  CHECK(close(sd.x_uu, fd_uu, 1e-6));

  const RealVec3 xu_vp = d.first_derivs(p + h * kI).x_u;
  const RealVec3 xu_vn = d.first_derivs(p - h * kI).x_u;
  const RealVec3 fd_uv = (1.0 / (2.0 * h)) * (xu_vp - xu_vn);
  CHECK(close(sd.x_uv, fd_uv, 1e-6));
}

TEST_CASE("fd derivative helpers agree with the analytic ones") {
  const WeierstrassData d = enneper();
  const Complex p{0.2, 0.6};
  const double h = 1e-4;

  const wrep::FirstDerivs an1 = d.first_derivs(p);
  const wrep::FirstDerivs fd1 = d.fd_first_derivs(p, h);
  CHECK(close(an1.x_u, fd1.x_u, 1e-6));
  CHECK(close(an1.x_v, fd1.x_v, 1e-6));

  const wrep::SecondDerivs an2 = d.second_derivs(p);
  const wrep::SecondDerivs fd2 = d.fd_second_derivs(p, h);
  CHECK(close(an2.x_uu, fd2.x_uu, 1e-4));
  CHECK(close(an2.x_vv, fd2.x_vv, 1e-4));
  CHECK(close(an2.x_uv, fd2.x_uv, 1e-4));
}

TEST_CASE("any (f, g) pair yields an isotropic phi") {
  // The three algebraic identities behind the construction, on random
  // polynomial pairs: phi.phi = 0, |x_u| = |x_v|, x_u . x_v = 0.
  std::mt19937 rng(59);
  for (int pair = 0; pair < 20; ++pair) {
    const Expr f = testsupport::random_polynomial(rng);
    const Expr g = testsupport::random_polynomial(rng);
    const WeierstrassData d = WeierstrassData::make_phi(f, g);
    for (int k = 0; k < 5; ++k) {
      const Complex p = testsupport::random_point(rng);
      const ComplexVec3 phi = d.phi_at(p);
      const RealVec3 re = wrep::re_vec(phi);
      const RealVec3 im = wrep::im_vec(phi);
      const double a = wrep::norm_sq(re);

      const double null_res =
          std::abs(wrep::cvec_square(phi)) / (1.0 + wrep::hermitian_norm_sq(phi));
      CHECK(null_res <= 1e-10);
      CHECK(std::abs(a - wrep::norm_sq(im)) / (1.0 + a) <= 1e-10);
      CHECK(std::abs(wrep::dot_real(re, im)) / (1.0 + a) <= 1e-10);
    }
  }
}

TEST_CASE("direct phi triples are not isotropic by construction") {
  const WeierstrassData bad = WeierstrassData::from_phi(
      wrep::parse("1 - z^2"), wrep::parse("i*(1 - z^2)"), wrep::parse("2*z"));
  // phi.phi = 4z^2 here; nonzero away from the origin.
  const Complex p{1.0, 0.0};
  CHECK(std::abs(wrep::cvec_square(bad.phi_at(p))) > 1.0);
}

TEST_CASE("straight and axis-aligned paths agree for analytic data") {
  std::mt19937 rng(67);
  const WeierstrassData surfaces[] = {
      enneper(), catenoid(),
      WeierstrassData::from_phi(wrep::parse("z^2 - 1"), wrep::parse("i*(z^2 + 1)"),
                                wrep::parse("2*z"))};
  for (const WeierstrassData& d : surfaces) {
    for (int k = 0; k < 5; ++k) {
      const Complex t = testsupport::random_point(rng, -0.9, 0.9);
      const ComplexVec3 a = d.integrate_phi(t, 1e-12);
      const ComplexVec3 b =
          d.integrate_phi(t, IntegrationPath::axis_aligned(Complex{0.0}, t), 1e-12);
      CHECK(vdist(a, b) <= 1e-9);
    }
  }
}

TEST_CASE("paths are validated against the target and exclusions") {
  SUBCASE("path must end at the target") {
    const WeierstrassData d = enneper();
    const IntegrationPath p = IntegrationPath::straight(Complex{0.0}, Complex{1.0});
    CHECK_THROWS_AS(d.integrate_phi(Complex{0.5}, p), wrep::PathError);
  }
  SUBCASE("path must start at the basepoint") {
    const WeierstrassData d = enneper();
    const IntegrationPath p =
        IntegrationPath::straight(Complex{0.25}, Complex{1.0});
    CHECK_THROWS_AS(d.integrate_phi(Complex{1.0}, p), wrep::PathError);
  }
  SUBCASE("declared exclusion zone blocks a crossing path") {
    wrep::WeierstrassOptions opts;
    opts.exclusions.push_back(wrep::ExclusionZone{Complex{0.5, 0.0}, 0.1});
    const WeierstrassData d =
        WeierstrassData::make_phi(wrep::parse("1"), wrep::parse("z"), opts);

    CHECK_THROWS_AS(d.integrate_phi(Complex{1.0}), wrep::PathError);

    // A detour around the zone is accepted and still lands on the closed form.
    IntegrationPath detour;
    detour.kind = IntegrationPath::Kind::axis_aligned;
    detour.waypoints = {Complex{0.0}, Complex{0.0, 0.5}, Complex{1.0, 0.5},
                        Complex{1.0, 0.0}};
    const ComplexVec3 got = d.integrate_phi(Complex{1.0}, detour, 1e-12);
    CHECK(cdist(got.c1, Complex{2.0 / 3.0}) <= 1e-10);
    CHECK(cdist(got.c3, Complex{1.0}) <= 1e-10);
  }
  SUBCASE("singular evaluation on the path surfaces as PathError") {
    // g = 1/z makes phi singular at 0; integrating across it must not
    // silently succeed.
    const WeierstrassData d =
        WeierstrassData::make_phi(wrep::parse("1"), wrep::parse("1/z"));
    CHECK_THROWS_AS(d.integrate_phi(Complex{0.5}, 1e-10), wrep::Error);
  }
}
