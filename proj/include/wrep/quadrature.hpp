#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "wrep/complex_core.hpp"
#include "wrep/errors.hpp"

namespace wrep {

/// 15-point Gauss-Legendre rule on [-1, 1] (exact for polynomials up to
/// degree 29).
struct Gl15Point {
  double node;
  double weight;
};

inline constexpr std::array<Gl15Point, 15> kGl15 = {{
    {-0.98799251802048538, 0.030753241996118647},
    {-0.93727339240070595, 0.070366047488108069},
    {-0.84820658341042721, 0.10715922046717177},
    {-0.72441773136017007, 0.13957067792615391},
    {-0.57097217260853883, 0.16626920581699378},
    {-0.39415134707756339, 0.18616100001556188},
    {-0.20119409399743451, 0.19843148532711125},
    {0.0, 0.2025782419255609},
    {0.20119409399743451, 0.19843148532711125},
    {0.39415134707756339, 0.18616100001556188},
    {0.57097217260853883, 0.16626920581699378},
    {0.72441773136017007, 0.13957067792615391},
    {0.84820658341042721, 0.10715922046717177},
    {0.93727339240070595, 0.070366047488108069},
    {0.98799251802048538, 0.030753241996118647},
}};

/// Single G15 panel of \int_a^b f(z) dz along the straight segment a -> b.
template <class F>
ComplexVec3 gl15_segment(F&& f, Complex a, Complex b) {
  const Complex mid = 0.5 * (a + b);
  const Complex half = 0.5 * (b - a);
  ComplexVec3 acc{};
  for (const auto& p : kGl15) {
    acc = acc + Complex(p.weight) * f(mid + half * p.node);
  }
  return half * acc;
}

namespace detail {

inline double max_component_abs(const ComplexVec3& v) {
  return std::max({std::abs(v.c1), std::abs(v.c2), std::abs(v.c3)});
}

inline constexpr int kMaxBisectionDepth = 30;

template <class F>
ComplexVec3 adapt_segment(F& f, Complex a, Complex b, const ComplexVec3& whole,
                          double tol, int depth, double& unresolved) {
  const Complex mid = 0.5 * (a + b);
  const ComplexVec3 left = gl15_segment(f, a, mid);
  const ComplexVec3 right = gl15_segment(f, mid, b);
  const ComplexVec3 refined = left + right;
  double err = max_component_abs(refined - whole);
  // A NaN estimate (singular node) must count as failure, not success.
  if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
  if (err <= tol || depth >= kMaxBisectionDepth) {
    if (err > tol) unresolved = std::max(unresolved, err);
    return refined;
  }
  return adapt_segment(f, a, mid, left, 0.5 * tol, depth + 1, unresolved) +
         adapt_segment(f, mid, b, right, 0.5 * tol, depth + 1, unresolved);
}

}  // namespace detail

/// Adaptive Gauss-Legendre integration of f along the straight segment
/// a -> b: 15-point panels, recursive bisection, absolute tolerance per
/// component. Throws QuadratureError when bisection bottoms out with the
/// estimate still above tolerance.
template <class F>
ComplexVec3 integrate_segment(F&& f, Complex a, Complex b, double abs_tol) {
  if (a == b) return ComplexVec3{};
  double unresolved = 0.0;
  const ComplexVec3 whole = gl15_segment(f, a, b);
  const ComplexVec3 result =
      detail::adapt_segment(f, a, b, whole, abs_tol, 0, unresolved);
  if (unresolved > 0.0) {
    throw QuadratureError("quadrature did not converge to tolerance " +
                              std::to_string(abs_tol) +
                              "; final error estimate " +
                              std::to_string(unresolved),
                          unresolved);
  }
  return result;
}

}  // namespace wrep
