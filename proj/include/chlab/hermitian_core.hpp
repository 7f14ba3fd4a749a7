#pragma once

// The signature-(2,1) Hermitian form and the projective geometry it induces
// on the complex hyperbolic plane: inner products, box products, the
// Hermitian cross-ratio, point types and the Bergman distance.

#include <cmath>
#include <string_view>

#include "chlab/error.hpp"
#include "chlab/jacobi.hpp"
#include "chlab/linalg.hpp"

namespace chlab {

namespace tol {
inline constexpr double herm = 1e-12;   // Hermitian symmetry of a form matrix
inline constexpr double type = 1e-10;   // null band for <v,v> on max-normalized vectors
inline constexpr double delta = 1e-9;   // deltoid discriminant band
inline constexpr double dec = 1e-8;     // decomposability product test
inline constexpr double angle = 1e-9;   // angle comparisons (radians)
}  // namespace tol

enum class PointType { Negative, Null, Positive };

constexpr std::string_view to_string(PointType t) {
  switch (t) {
    case PointType::Negative: return "Negative";
    case PointType::Null: return "Null";
    case PointType::Positive: return "Positive";
  }
  return "?";
}

/// A Hermitian form <z,w> = w^* G z of signature (2,1).
class HermitianForm {
 public:
  /// The canonical form J = diag(1, 1, -1).
  HermitianForm() : g_(CMat3::diag(1.0, 1.0, -1.0)), g_inv_(g_), det_(-1.0), canonical_(true) {}

  explicit HermitianForm(const CMat3& g) : g_(g) {
    if (!g.is_finite()) throw Error(ErrorCode::NonFinite, "form matrix has non-finite entries");
    const double scale = std::max(1.0, g.norm());
    if ((g - g.adjoint()).norm() > tol::herm * scale)
      throw Error(ErrorCode::SignatureError, "form matrix is not Hermitian");
    auto eig = hermitian_eigen(g);
    const double band = 1e-12 * scale;
    if (!(eig.values[0] > band && eig.values[1] > band && eig.values[2] < -band))
      throw Error(ErrorCode::SignatureError, "form matrix does not have signature (2,1)");
    g_inv_ = g.inverse();
    det_ = g.det().real();
    canonical_ = (g - CMat3::diag(1.0, 1.0, -1.0)).norm() == 0.0;
  }

  static HermitianForm standard() { return HermitianForm(); }

  const CMat3& matrix() const { return g_; }
  const CMat3& inverse_matrix() const { return g_inv_; }
  double det() const { return det_; }
  bool is_canonical() const { return canonical_; }

  /// <u, v> = v^* G u.
  cplx operator()(const CVec3& u, const CVec3& v) const { return edot(g_ * u, v); }

 private:
  CMat3 g_;
  CMat3 g_inv_;
  double det_;
  bool canonical_;
};

inline cplx herm_inner(const CVec3& u, const CVec3& v, const HermitianForm& form = {}) {
  return form(u, v);
}

/// u [x] v = G^{-1} conj(u ^ v); for J this is J conj(u ^ v). Orthogonal to u and v.
inline CVec3 box_product(const CVec3& u, const CVec3& v, const HermitianForm& form = {}) {
  return form.inverse_matrix() * wedge(u, v).conj();
}

inline PointType point_type(const CVec3& v, const HermitianForm& form = {}) {
  if (v.max_abs() == 0.0) throw Error(ErrorCode::ZeroVector, "point_type of the zero vector");
  CVec3 n = normalize_max(v);
  double q = form(n, n).real();
  if (q < -tol::type) return PointType::Negative;
  if (q > tol::type) return PointType::Positive;
  return PointType::Null;
}

/// Scales v to <v,v> = +-1; null vectors are returned max-normalized.
inline CVec3 normalize_form(const CVec3& v, const HermitianForm& form = {}) {
  CVec3 n = normalize_max(v);
  double q = form(n, n).real();
  if (std::abs(q) <= tol::type) return n;
  return n / cplx{std::sqrt(std::abs(q)), 0.0};
}

/// X(a,b,c,d) = <c,a><d,b> / (<c,b><d,a>).
inline cplx cross_ratio(const CVec3& a, const CVec3& b, const CVec3& c, const CVec3& d,
                        const HermitianForm& form = {}) {
  CVec3 an = normalize_max(a), bn = normalize_max(b), cn = normalize_max(c), dn = normalize_max(d);
  cplx cb = form(cn, bn), da = form(dn, an);
  if (std::abs(cb) <= tol::type || std::abs(da) <= tol::type)
    throw Error(ErrorCode::DegenerateConfiguration, "cross-ratio denominator vanishes");
  return form(cn, an) * form(dn, bn) / (cb * da);
}

/// Bergman distance, cosh^2(d/2) = <z,w><w,z> / (<z,z><w,w>).
inline double hyperbolic_distance(const CVec3& z, const CVec3& w, const HermitianForm& form = {}) {
  if (point_type(z, form) != PointType::Negative || point_type(w, form) != PointType::Negative)
    throw Error(ErrorCode::NotInBall, "hyperbolic_distance needs two negative-type points");
  CVec3 zn = normalize_max(z), wn = normalize_max(w);
  double zz = form(zn, zn).real(), ww = form(wn, wn).real();
  // |<z,w>|^2 - <z,z><w,w> = -det(G) <z[x]w, z[x]w>
  CVec3 b = box_product(zn, wn, form);
  double sinh2 = -form.det() * form(b, b).real() / (zz * ww);
  sinh2 = std::max(0.0, sinh2);
  return 2.0 * std::asinh(std::sqrt(sinh2));
}

/// Signature counts (positive, negative) of a Hermitian matrix, zero band relative to its norm.
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

inline Signature signature_of(const CMat3& h, double rel_band = 1e-12) {
  auto eig = hermitian_eigen(h);
  const double band = rel_band * std::max(1.0, h.norm());
  Signature s;
  for (double x : eig.values) {
    if (x > band)
      ++s.positive;
    else if (x < -band)
      ++s.negative;
    else
      ++s.zero;
  }
  return s;
}

}  // namespace chlab
