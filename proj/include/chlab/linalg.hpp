#pragma once

// Fixed-size complex 3-vectors and 3x3 matrices.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>

#include "chlab/error.hpp"

namespace chlab {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline const cplx kI{0.0, 1.0};

/// Primitive cube root of unity e^{2i pi/3}.
inline cplx omega() { return std::polar(1.0, kTwoPi / 3.0); }

/// Reduces an angle to [0, 2pi).
inline double wrap_2pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

/// Distance between two angles on the circle, in [0, pi].
inline double angle_distance(double a, double b) {
  double d = wrap_2pi(a - b);
  return d > kPi ? kTwoPi - d : d;
}

/// Principal cube root exp(log(z)/3), branch cut on the negative real axis.
inline cplx principal_cbrt(cplx z) {
  if (z == cplx{0.0, 0.0}) return z;
  return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0);
}

struct CVec3 {
  std::array<cplx, 3> v{};

  CVec3() = default;
  CVec3(cplx a, cplx b, cplx c) : v{a, b, c} {}

  cplx& operator[](std::size_t i) { return v[i]; }
  const cplx& operator[](std::size_t i) const { return v[i]; }

  bool is_finite() const {
    for (const auto& x : v)
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
  }

  double norm() const {
    return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
  }

  double max_abs() const {
    return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
  }

  CVec3 conj() const { return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}; }

  CVec3& operator+=(const CVec3& o) {
    for (int i = 0; i < 3; ++i) v[i] += o.v[i];
    return *this;
  }
  CVec3& operator-=(const CVec3& o) {
    for (int i = 0; i < 3; ++i) v[i] -= o.v[i];
    return *this;
  }
  CVec3& operator*=(cplx s) {
    for (auto& x : v) x *= s;
    return *this;
  }
};

inline CVec3 operator+(CVec3 a, const CVec3& b) { return a += b; }
inline CVec3 operator-(CVec3 a, const CVec3& b) { return a -= b; }
inline CVec3 operator-(CVec3 a) { return a *= -1.0; }
inline CVec3 operator*(cplx s, CVec3 a) { return a *= s; }
inline CVec3 operator*(CVec3 a, cplx s) { return a *= s; }
inline CVec3 operator/(CVec3 a, cplx s) { return a *= (1.0 / s); }

/// Bilinear dot product sum a_i b_i (no conjugation).
inline cplx dot(const CVec3& a, const CVec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Euclidean Hermitian product sum a_i conj(b_i).
inline cplx edot(const CVec3& a, const CVec3& b) {
  return a[0] * std::conj(b[0]) + a[1] * std::conj(b[1]) + a[2] * std::conj(b[2]);
}

/// Bilinear exterior product, identified with a vector through e1^e2 = e3.
inline CVec3 wedge(const CVec3& a, const CVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Rescales so that the largest entry has modulus one.
inline CVec3 normalize_max(const CVec3& a) {
  double m = a.max_abs();
  if (m == 0.0) throw Error(ErrorCode::ZeroVector, "cannot normalize the zero vector");
  return a / cplx{m, 0.0};
}

/// Euclidean unit vector.
inline CVec3 normalize_euclid(const CVec3& a) {
  double n = a.norm();
  if (n == 0.0) throw Error(ErrorCode::ZeroVector, "cannot normalize the zero vector");
  return a / cplx{n, 0.0};
}

/// sin of the Euclidean angle between the complex lines spanned by a and b.
inline double projective_distance(const CVec3& a, const CVec3& b) {
  double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  return wedge(a, b).norm() / (na * nb);
}

struct CMat3 {
  std::array<std::array<cplx, 3>, 3> m{};

  CMat3() = default;
  CMat3(std::initializer_list<std::initializer_list<cplx>> rows) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      std::size_t j = 0;
      for (const auto& x : row) m[i][j++] = x;
      ++i;
    }
  }

  static CMat3 identity() { return diag(1.0, 1.0, 1.0); }
  static CMat3 zero() { return CMat3{}; }
  static CMat3 diag(cplx a, cplx b, cplx c) {
    CMat3 r;
    r.m[0][0] = a;
    r.m[1][1] = b;
    r.m[2][2] = c;
    return r;
  }
  static CMat3 from_columns(const CVec3& a, const CVec3& b, const CVec3& c) {
    CMat3 r;
    for (int i = 0; i < 3; ++i) {
      r.m[i][0] = a[i];
      r.m[i][1] = b[i];
      r.m[i][2] = c[i];
    }
    return r;
  }
  /// Outer product a b^T.
  static CMat3 outer(const CVec3& a, const CVec3& b) {
    CMat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = a[i] * b[j];
    return r;
  }

  cplx& operator()(std::size_t i, std::size_t j) { return m[i][j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return m[i][j]; }

  CVec3 row(std::size_t i) const { return {m[i][0], m[i][1], m[i][2]}; }
  CVec3 col(std::size_t j) const { return {m[0][j], m[1][j], m[2][j]}; }

  bool is_finite() const {
    for (const auto& r : m)
      for (const auto& x : r)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
  }

  cplx trace() const { return m[0][0] + m[1][1] + m[2][2]; }

  cplx det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }

  /// Sum of principal 2x2 minors.
  cplx minor_sum() const {
    return (m[0][0] * m[1][1] - m[0][1] * m[1][0]) + (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
           (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
  }

  CMat3 transpose() const {
    CMat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }

  CMat3 conj() const {
    CMat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = std::conj(m[i][j]);
    return r;
  }

  CMat3 adjoint() const { return transpose().conj(); }

  CMat3 inverse() const {
    cplx d = det();
    if (std::abs(d) == 0.0) throw Error(ErrorCode::DegenerateConfiguration, "singular matrix");
    CMat3 r;
    // rows of the inverse are the cross products of columns
    CVec3 c0 = col(0), c1 = col(1), c2 = col(2);
    CVec3 r0 = wedge(c1, c2), r1 = wedge(c2, c0), r2 = wedge(c0, c1);
    for (int j = 0; j < 3; ++j) {
      r.m[0][j] = r0[j] / d;
      r.m[1][j] = r1[j] / d;
      r.m[2][j] = r2[j] / d;
    }
    return r;
  }

  /// Frobenius norm.
  double norm() const {
    double s = 0.0;
    for (const auto& r : m)
      for (const auto& x : r) s += std::norm(x);
    return std::sqrt(s);
  }

  CMat3& operator+=(const CMat3& o) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] += o.m[i][j];
    return *this;
  }
  CMat3& operator-=(const CMat3& o) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] -= o.m[i][j];
    return *this;
  }
  CMat3& operator*=(cplx s) {
    for (auto& r : m)
      for (auto& x : r) x *= s;
    return *this;
  }
};

inline CMat3 operator+(CMat3 a, const CMat3& b) { return a += b; }
inline CMat3 operator-(CMat3 a, const CMat3& b) { return a -= b; }
inline CMat3 operator*(cplx s, CMat3 a) { return a *= s; }
inline CMat3 operator*(CMat3 a, cplx s) { return a *= s; }
inline CMat3 operator/(CMat3 a, cplx s) { return a *= (1.0 / s); }

inline CMat3 operator*(const CMat3& a, const CMat3& b) {
  CMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
  return r;
}

inline CVec3 operator*(const CMat3& a, const CVec3& x) {
  return {a.m[0][0] * x[0] + a.m[0][1] * x[1] + a.m[0][2] * x[2],
          a.m[1][0] * x[0] + a.m[1][1] * x[1] + a.m[1][2] * x[2],
          a.m[2][0] * x[0] + a.m[2][1] * x[1] + a.m[2][2] * x[2]};
}

inline CMat3 power(const CMat3& a, int n) {
  CMat3 r = CMat3::identity();
  CMat3 base = a;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

/// Smallest Frobenius distance between a and omega^k b over k = 0, 1, 2.
inline double distance_mod_omega(const CMat3& a, const CMat3& b, int* best_k = nullptr) {
  double best = (a - b).norm();
  int k_best = 0;
  cplx w = 1.0;
  for (int k = 1; k < 3; ++k) {
    w *= omega();
    double d = (a - w * b).norm();
    if (d < best) {
      best = d;
      k_best = k;
    }
  }
  if (best_k) *best_k = k_best;
  return best;
}

/// Smallest distance between complex numbers a and omega^k b.
inline double distance_mod_omega(cplx a, cplx b) {
  double best = std::abs(a - b);
  cplx w = 1.0;
  for (int k = 1; k < 3; ++k) {
    w *= omega();
    best = std::min(best, std::abs(a - w * b));
  }
  return best;
}

inline std::ostream& operator<<(std::ostream& os, const CVec3& a) {
  return os << "(" << a[0] << ", " << a[1] << ", " << a[2] << ")";
}

inline std::ostream& operator<<(std::ostream& os, const CMat3& a) {
  os << "[";
  for (int i = 0; i < 3; ++i) os << (i ? "; " : "") << a.m[i][0] << " " << a.m[i][1] << " " << a.m[i][2];
  return os << "]";
}

}  // namespace chlab
