#pragma once

#include <cmath>
#include <complex>

namespace wrep {

using Complex = std::complex<double>;

/// Triple of complex numbers in fixed coordinate order (x1, x2, x3).
struct ComplexVec3 {
  Complex c1{};
  Complex c2{};
  Complex c3{};
};

/// Triple of real surface coordinates.
struct RealVec3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

inline RealVec3 operator+(const RealVec3& a, const RealVec3& b) {
  return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
}

inline RealVec3 operator-(const RealVec3& a, const RealVec3& b) {
  return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
}

inline RealVec3 operator-(const RealVec3& a) { return {-a.x1, -a.x2, -a.x3}; }

inline RealVec3 operator*(double s, const RealVec3& a) {
  return {s * a.x1, s * a.x2, s * a.x3};
}

inline ComplexVec3 operator+(const ComplexVec3& a, const ComplexVec3& b) {
  return {a.c1 + b.c1, a.c2 + b.c2, a.c3 + b.c3};
}

inline ComplexVec3 operator-(const ComplexVec3& a, const ComplexVec3& b) {
  return {a.c1 - b.c1, a.c2 - b.c2, a.c3 - b.c3};
}

inline ComplexVec3 operator*(const Complex& s, const ComplexVec3& a) {
  return {s * a.c1, s * a.c2, s * a.c3};
}

/// v.v = v1^2 + v2^2 + v3^2, with no conjugation. This is the isotropy
/// ("null") form, not a Hermitian norm: cvec_square((i,0,0)) == -1.
inline Complex cvec_square(const ComplexVec3& v) {
  return v.c1 * v.c1 + v.c2 * v.c2 + v.c3 * v.c3;
}

inline RealVec3 re_vec(const ComplexVec3& v) {
  return {v.c1.real(), v.c2.real(), v.c3.real()};
}

inline RealVec3 im_vec(const ComplexVec3& v) {
  return {v.c1.imag(), v.c2.imag(), v.c3.imag()};
}

inline double dot_real(const RealVec3& a, const RealVec3& b) {
  return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

inline RealVec3 cross(const RealVec3& a, const RealVec3& b) {
  return {a.x2 * b.x3 - a.x3 * b.x2,
          a.x3 * b.x1 - a.x1 * b.x3,
          a.x1 * b.x2 - a.x2 * b.x1};
}

inline double norm_sq(const RealVec3& a) { return dot_real(a, a); }

inline double norm(const RealVec3& a) { return std::sqrt(norm_sq(a)); }

/// Sum of |v_i|^2; the Hermitian magnitude used as a residual scale.
inline double hermitian_norm_sq(const ComplexVec3& v) {
  return std::norm(v.c1) + std::norm(v.c2) + std::norm(v.c3);
}

inline bool all_finite(const RealVec3& a) {
  return std::isfinite(a.x1) && std::isfinite(a.x2) && std::isfinite(a.x3);
}

inline bool all_finite(const ComplexVec3& v) {
  return std::isfinite(v.c1.real()) && std::isfinite(v.c1.imag()) &&
         std::isfinite(v.c2.real()) && std::isfinite(v.c2.imag()) &&
         std::isfinite(v.c3.real()) && std::isfinite(v.c3.imag());
}

}  // namespace wrep
