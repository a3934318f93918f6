#include <doctest.h>

#include <limits>
#include <random>

#include "wrep/complex_core.hpp"

#include "support/random_exprs.hpp"

using wrep::Complex;
using wrep::ComplexVec3;
using wrep::RealVec3;

namespace {

ComplexVec3 random_cvec(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  return {Complex{d(rng), d(rng)}, Complex{d(rng), d(rng)},
          Complex{d(rng), d(rng)}};
}

}  // namespace

TEST_CASE("cvec_square on known vectors") {
  const Complex i{0.0, 1.0};

  CHECK(wrep::cvec_square({1.0, 0.0, 0.0}) == Complex{1.0, 0.0});
  CHECK(wrep::cvec_square({i, 0.0, 0.0}) == Complex{-1.0, 0.0});

  // (-3)^2 + (5i)^2 + 4^2 = 9 - 25 + 16 = 0: a null vector.
  const ComplexVec3 null_vec{-3.0, 5.0 * i, 4.0};
  CHECK(wrep::cvec_square(null_vec) == Complex{0.0, 0.0});
  CHECK(wrep::hermitian_norm_sq(null_vec) == doctest::Approx(50.0));
}

TEST_CASE("re_vec and im_vec split components") {
  const ComplexVec3 v{Complex{1.0, 2.0}, Complex{-3.0, 4.0}, Complex{0.0, -5.0}};
  const RealVec3 re = wrep::re_vec(v);
  const RealVec3 im = wrep::im_vec(v);
  CHECK(re.x1 == 1.0);
  CHECK(re.x2 == -3.0);
  CHECK(re.x3 == 0.0);
  CHECK(im.x1 == 2.0);
  CHECK(im.x2 == 4.0);
  CHECK(im.x3 == -5.0);
}

TEST_CASE("re_vec of i*v equals -im_vec of v") {
  std::mt19937 rng(7);
  const Complex i{0.0, 1.0};
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexVec3 v = random_cvec(rng);
    const RealVec3 lhs = wrep::re_vec(i * v);
    const RealVec3 rhs = -wrep::im_vec(v);
    CHECK(lhs.x1 == rhs.x1);
    CHECK(lhs.x2 == rhs.x2);
    CHECK(lhs.x3 == rhs.x3);
  }
}

TEST_CASE("real vector dot, cross, norms") {
  const RealVec3 a{1.0, 2.0, 3.0};
  const RealVec3 b{-4.0, 5.0, 6.0};

  CHECK(wrep::dot_real(a, b) == doctest::Approx(24.0));
  CHECK(wrep::norm_sq(a) == doctest::Approx(14.0));
  CHECK(wrep::norm(RealVec3{3.0, 4.0, 0.0}) == doctest::Approx(5.0));

  const RealVec3 c = wrep::cross(a, b);
  CHECK(c.x1 == doctest::Approx(2.0 * 6.0 - 3.0 * 5.0));
  CHECK(c.x2 == doctest::Approx(3.0 * -4.0 - 1.0 * 6.0));
  CHECK(c.x3 == doctest::Approx(1.0 * 5.0 - 2.0 * -4.0));

  // cross(a, b) is orthogonal to both factors.
  CHECK(wrep::dot_real(c, a) == doctest::Approx(0.0));
  CHECK(wrep::dot_real(c, b) == doctest::Approx(0.0));
}

TEST_CASE("cvec_square decomposes into real and imaginary parts") {
  // For v = p + iq: v.v = (|p|^2 - |q|^2) + 2i (p.q).
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexVec3 v = random_cvec(rng);
    const RealVec3 p = wrep::re_vec(v);
    const RealVec3 q = wrep::im_vec(v);
    const Complex sq = wrep::cvec_square(v);
    CHECK(sq.real() ==
          doctest::Approx(wrep::norm_sq(p) - wrep::norm_sq(q)).epsilon(1e-12));
    CHECK(sq.imag() ==
          doctest::Approx(2.0 * wrep::dot_real(p, q)).epsilon(1e-12));
  }
}

TEST_CASE("vector arithmetic and finiteness checks") {
  const RealVec3 a{1.0, -2.0, 0.5};
  const RealVec3 b{0.25, 4.0, -1.0};
  const RealVec3 s = a + b;
  CHECK(s.x1 == 1.25);
  CHECK(s.x2 == 2.0);
  CHECK(s.x3 == -0.5);
  const RealVec3 d = a - b;
  CHECK(d.x1 == 0.75);
  const RealVec3 t = 2.0 * a;
  CHECK(t.x2 == -4.0);

  CHECK(wrep::all_finite(a));
  RealVec3 bad = a;
  bad.x3 = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(wrep::all_finite(bad));
  bad.x3 = std::numeric_limits<double>::infinity();
  CHECK_FALSE(wrep::all_finite(bad));

  const ComplexVec3 cv{Complex{1.0, 0.0}, Complex{0.0, 1.0}, Complex{2.0, 3.0}};
  CHECK(wrep::all_finite(cv));
  ComplexVec3 cbad = cv;
  cbad.c2 = Complex{0.0, std::numeric_limits<double>::quiet_NaN()};
  CHECK_FALSE(wrep::all_finite(cbad));
}
