#pragma once

// Complex reflections and triangles of complex lines.
//
// A triangle of mirrors is stored through the Gram matrix of its unit polar
// vectors c1, c2, c3 in the normalization <c_{k-1}, c_{k+1}> = r_k u with
// u = e^{i alpha / 3}. In the basis (c1, c2, c3) the form has matrix
//
//   H = [[1, r3 u, r2 u^-1], [r3 u^-1, 1, r1 u], [r2 u, r1 u^-1, 1]]
//
// with H_ij = <c_j, c_i>.

#include <array>
#include <cmath>
#include <limits>
#include <string_view>

#include "chlab/error.hpp"
#include "chlab/hermitian_core.hpp"
#include "chlab/jacobi.hpp"
#include "chlab/linalg.hpp"
#include "chlab/su21.hpp"

namespace chlab {

enum class MirrorKind { MirrorLine, MirrorPoint };

constexpr std::string_view to_string(MirrorKind k) {
  return k == MirrorKind::MirrorLine ? "MirrorLine" : "MirrorPoint";
}

/// z -> z + (eta - 1) <z,c>/<c,c> c.
inline CMat3 reflection_matrix(const CVec3& c, cplx eta, const HermitianForm& form = {}) {
  if (!c.is_finite() || !std::isfinite(eta.real()) || !std::isfinite(eta.imag()))
    throw Error(ErrorCode::NonFinite, "reflection_matrix input is not finite");
  if (std::abs(std::abs(eta) - 1.0) > 1e-12) throw Error(ErrorCode::NotUnitModulus, "rotation factor must have modulus one");
  const CVec3 cn = normalize_max(c);
  const cplx cc = form(cn, cn);
  if (std::abs(cc) <= tol::type) throw Error(ErrorCode::NullPolarVector, "polar vector is null");
  // row vector z -> <z, c> = c^* G z
  const CVec3 row = form.matrix().transpose() * cn.conj();
  return CMat3::identity() + ((eta - 1.0) / cc) * CMat3::outer(cn, row);
}

struct ComplexReflection {
  CVec3 polar;
  cplx eta{-1.0, 0.0};
  MirrorKind kind = MirrorKind::MirrorLine;
  CMat3 matrix = CMat3::identity();  // determinant eta

  static ComplexReflection make(const CVec3& polar, cplx eta, const HermitianForm& form = {}) {
    if (std::abs(std::abs(eta) - 1.0) > 1e-12) throw Error(ErrorCode::NotUnitModulus, "rotation factor must have modulus one");
    if (std::abs(eta - 1.0) <= 1e-12) throw Error(ErrorCode::TrivialRotation, "rotation factor 1 is not a reflection");
    ComplexReflection r;
    r.polar = normalize_form(polar, form);
    r.eta = eta;
    switch (point_type(polar, form)) {
      case PointType::Positive: r.kind = MirrorKind::MirrorLine; break;
      case PointType::Negative: r.kind = MirrorKind::MirrorPoint; break;
      case PointType::Null: throw Error(ErrorCode::NullPolarVector, "polar vector is null");
    }
    r.matrix = reflection_matrix(r.polar, eta, form);
    return r;
  }
};

/// Relation between two complex lines: intersecting at an angle, ultraparallel at a distance, or asymptotic.
struct LineRelation {
  enum class Kind { Intersecting, Ultraparallel, Asymptotic };
  Kind kind = Kind::Intersecting;
  double value = kPi / 2;  // angle in (0, pi/2] or distance > 0

  static LineRelation intersecting(double angle) { return {Kind::Intersecting, angle}; }
  static LineRelation ultraparallel(double distance) { return {Kind::Ultraparallel, distance}; }
  static LineRelation asymptotic() { return {Kind::Asymptotic, 0.0}; }

  /// |<c1, c2>| for unit polar vectors.
  double modulus() const {
    switch (kind) {
      case Kind::Intersecting: return std::cos(value);
      case Kind::Ultraparallel: return std::cosh(value / 2.0);
      case Kind::Asymptotic: return 1.0;
    }
    return 0.0;
  }

  static LineRelation from_modulus(double r) {
    if (std::abs(r - 1.0) <= tol::type) return asymptotic();
    if (r < 1.0) return intersecting(std::acos(std::max(0.0, r)));
    return ultraparallel(2.0 * std::acosh(r));
  }
};

inline LineRelation line_relation(const CVec3& c1, const CVec3& c2, const HermitianForm& form = {}) {
  if (point_type(c1, form) != PointType::Positive || point_type(c2, form) != PointType::Positive)
    throw Error(ErrorCode::NotPolarVectors, "line_relation needs two positive-type polar vectors");
  const CVec3 a = normalize_form(c1, form), b = normalize_form(c2, form);
  return LineRelation::from_modulus(std::abs(form(a, b)));
}

struct TriangleData {
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
  double alpha = 0.0;
  cplx u{1.0, 0.0};
  CMat3 gram = CMat3::identity();

  std::array<double, 3> r() const { return {r1, r2, r3}; }
};

inline CMat3 triangle_gram(double r1, double r2, double r3, double alpha) {
  const cplx u = std::polar(1.0, alpha / 3.0), ub = std::conj(u);
  return CMat3{{1.0, r3 * u, r2 * ub}, {r3 * ub, 1.0, r1 * u}, {r2 * u, r1 * ub, 1.0}};
}

inline TriangleData triangle_data(double r1, double r2, double r3, double alpha) {
  TriangleData t;
  t.r1 = r1;
  t.r2 = r2;
  t.r3 = r3;
  t.alpha = wrap_2pi(alpha);
  t.u = std::polar(1.0, alpha / 3.0);
  t.gram = triangle_gram(r1, r2, r3, alpha);
  return t;
}

/// det H = 1 - (r1^2 + r2^2 + r3^2) + 2 r1 r2 r3 cos(alpha).
inline double triangle_gram_det(double r1, double r2, double r3, double alpha) {
  return 1.0 - (r1 * r1 + r2 * r2 + r3 * r3) + 2.0 * r1 * r2 * r3 * std::cos(alpha);
}

/// Whether three pairwise intersecting lines at angles phi_k with invariant alpha exist.
inline bool triangle_exists(double phi1, double phi2, double phi3, double alpha) {
  const double r1 = std::cos(phi1), r2 = std::cos(phi2), r3 = std::cos(phi3);
  return triangle_gram_det(r1, r2, r3, alpha) < -1e-12;
}

/// (arccos(delta), 2pi - arccos(delta)) with delta = (sum r^2 - 1) / (2 r1 r2 r3); the admissible alpha set.
struct AlphaInterval {
  double lo = 0.0;
  double hi = kTwoPi;
  bool empty = false;
  bool whole = false;  // every alpha works
  double delta = 0.0;

  bool contains(double alpha) const {
    if (empty) return false;
    if (whole) return true;
    double a = wrap_2pi(alpha);
    return a > lo && a < hi;
  }
  double mid() const { return whole ? kPi : 0.5 * (lo + hi); }
};

inline AlphaInterval alpha_interval(double r1, double r2, double r3) {
  AlphaInterval iv;
  const double prod = r1 * r2 * r3;
  if (prod <= 1e-15) {
    iv.delta = std::numeric_limits<double>::infinity();
    const double d = 1.0 - (r1 * r1 + r2 * r2 + r3 * r3);
    if (d < -1e-12)
      iv.whole = true;
    else
      iv.empty = true;
    return iv;
  }
  iv.delta = (r1 * r1 + r2 * r2 + r3 * r3 - 1.0) / (2.0 * prod);
  if (iv.delta <= -1.0) {
    iv.empty = true;
  } else if (iv.delta > 1.0) {
    iv.whole = true;
  } else {
    iv.lo = std::acos(iv.delta);
    iv.hi = kTwoPi - iv.lo;
  }
  return iv;
}

/// arg(<c3,c2><c1,c3><c2,c1>) in [0, 2pi).
inline double angular_invariant(const CVec3& c1, const CVec3& c2, const CVec3& c3, const HermitianForm& form = {}) {
  const CVec3 a = normalize_max(c1), b = normalize_max(c2), c = normalize_max(c3);
  const cplx x = form(c, b), y = form(a, c), z = form(b, a);
  if (std::abs(x) <= tol::type || std::abs(y) <= tol::type || std::abs(z) <= tol::type)
    throw Error(ErrorCode::DegenerateTriple, "orthogonal polar vectors have no angular invariant");
  return wrap_2pi(std::arg(x * y * z));
}

/// Rescales unit polar vectors so that <c_{k-1}, c_{k+1}> = r_k e^{i alpha/3}: c1 is kept,
/// then the phase of c2 is fixed by <c2,c1>, then that of c3 by <c1,c3>.
inline std::array<CVec3, 3> normalize_polar_phases(const CVec3& c1, const CVec3& c2, const CVec3& c3,
                                                   const HermitianForm& form = {}) {
  for (const auto* c : {&c1, &c2, &c3})
    if (point_type(*c, form) != PointType::Positive)
      throw Error(ErrorCode::NotPolarVectors, "polar vectors must have positive type");
  std::array<CVec3, 3> c{normalize_form(c1, form), normalize_form(c2, form), normalize_form(c3, form)};
  const double alpha = angular_invariant(c[0], c[1], c[2], form);
  const double third = alpha / 3.0;
  c[1] = std::polar(1.0, third - std::arg(form(c[1], c[0]))) * c[1];
  c[2] = std::polar(1.0, std::arg(form(c[0], c[2])) - third) * c[2];
  return c;
}

inline TriangleData triangle_data_from_polars(const CVec3& c1, const CVec3& c2, const CVec3& c3,
                                              const HermitianForm& form = {}) {
  auto c = normalize_polar_phases(c1, c2, c3, form);
  return triangle_data(std::abs(form(c[2], c[1])), std::abs(form(c[0], c[2])), std::abs(form(c[1], c[0])),
                       angular_invariant(c[0], c[1], c[2], form));
}

/// Three reflections in the mirrors of a normalized triangle.
struct ReflectionTriple {
  TriangleData data;
  std::array<cplx, 3> etas{};
  std::array<double, 3> thetas{};  // eta_k = e^{i theta_k}
  std::array<CMat3, 3> lifts;      // in the basis (c1, c2, c3), det = eta_k
  CMat3 to_canonical;              // coordinates in (c1,c2,c3) -> coordinates for diag(1,1,-1)
  std::array<CVec3, 3> polars;     // c_k in the canonical frame
  std::array<CMat3, 3> canonical;  // reflections in the canonical frame, det = eta_k
  bool degenerate = false;         // Gram matrix is singular (concurrent mirrors or common perpendicular)

  /// SU(2,1) lift e^{-i theta_k/3} R_k in the canonical frame.
  SU21Element su(int k) const {
    return SU21Element::trusted(std::polar(1.0, -thetas[k] / 3.0) * canonical[k]);
  }
  ComplexReflection reflection(int k) const {
    ComplexReflection r;
    r.polar = polars[k];
    r.eta = etas[k];
    r.kind = MirrorKind::MirrorLine;
    r.matrix = canonical[k];
    return r;
  }
};

namespace detail {

/// C with C^* J C = H, from H = V D V^* with D descending: C = diag(sqrt|d|) V^*.
/// With `singular`, the eigenvalue of least modulus is taken as exactly zero.
inline CMat3 canonical_basis_change(const CMat3& h, bool singular = false) {
  auto eig = hermitian_eigen(h);
  if (singular) {
    int z = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(eig.values[i]) < std::abs(eig.values[z])) z = i;
    eig.values[z] = 0.0;
  }
  CMat3 c = eig.vectors.adjoint();
  for (int i = 0; i < 3; ++i) {
    const double s = std::sqrt(std::abs(eig.values[i]));
    for (int j = 0; j < 3; ++j) c(i, j) *= s;
  }
  return c;
}

}  // namespace detail

struct TripleOptions {
  /// Accept a singular Gram matrix of signature (+,+,0) or (+,0,-).
  bool allow_degenerate = false;
};

/// Reflection triple from the three line relations (between C2,C3; C3,C1; C1,C2),
/// the angular invariant and the rotation angles theta_k (eta_k = e^{i theta_k}).
inline ReflectionTriple reflection_triple_from_angles(const std::array<LineRelation, 3>& rel, double alpha,
                                                      const std::array<double, 3>& thetas,
                                                      TripleOptions opt = {}) {
  for (double t : thetas)
    if (!std::isfinite(t)) throw Error(ErrorCode::NonFinite, "rotation angle is not finite");
  for (double t : thetas)
    if (angle_distance(t, 0.0) <= 1e-12) throw Error(ErrorCode::TrivialRotation, "rotation factor 1 is not a reflection");
  for (const auto& r : rel) {
    if (!std::isfinite(r.value)) throw Error(ErrorCode::NonFinite, "line relation is not finite");
    if (r.kind == LineRelation::Kind::Intersecting && !(r.value > 0.0 && r.value <= kPi / 2 + 1e-15))
      throw Error(ErrorCode::InvalidRelation, "intersection angle must lie in (0, pi/2]");
    if (r.kind == LineRelation::Kind::Ultraparallel && !(r.value > 0.0))
      throw Error(ErrorCode::InvalidRelation, "distance must be positive");
  }

  ReflectionTriple t;
  t.data = triangle_data(rel[0].modulus(), rel[1].modulus(), rel[2].modulus(), alpha);
  t.thetas = thetas;
  for (int k = 0; k < 3; ++k) t.etas[k] = std::polar(1.0, thetas[k]);

  const Signature sig = signature_of(t.data.gram, 1e-10);
  const bool ok = sig.positive == 2 && sig.negative == 1;
  const bool degenerate_ok =
      opt.allow_degenerate && sig.zero == 1 && (sig.positive == 2 || (sig.positive == 1 && sig.negative == 1));
  if (!ok && !degenerate_ok) {
    bool all_intersecting = true;
    for (const auto& r : rel)
      if (r.kind != LineRelation::Kind::Intersecting) all_intersecting = false;
    if (all_intersecting) throw Error(ErrorCode::NonRealizable, "no triangle with these angles and angular invariant");
    throw Error(ErrorCode::SignatureError, "Gram matrix does not have signature (2,1)");
  }
  t.degenerate = !ok;

  t.to_canonical = detail::canonical_basis_change(t.data.gram, t.degenerate);
  for (int k = 0; k < 3; ++k) {
    CVec3 e;
    e[k] = 1.0;
    // Gram rows give <z, c_k> = (H z)_k
    const CVec3 row = t.data.gram.row(k);
    CMat3 lift = CMat3::identity();
    for (int j = 0; j < 3; ++j) lift(k, j) += (t.etas[k] - 1.0) * row[j];
    t.lifts[k] = lift;
    t.polars[k] = t.to_canonical * e;
    t.canonical[k] = reflection_matrix(t.polars[k], t.etas[k]);
  }
  return t;
}

/// Same as reflection_triple_from_angles with rotation factors in place of angles.
inline ReflectionTriple reflection_triple(const std::array<LineRelation, 3>& rel, double alpha,
                                          const std::array<cplx, 3>& etas, TripleOptions opt = {}) {
  std::array<double, 3> th{};
  for (int k = 0; k < 3; ++k) {
    if (std::abs(std::abs(etas[k]) - 1.0) > 1e-12) throw Error(ErrorCode::NotUnitModulus, "rotation factor must have modulus one");
    th[k] = std::arg(etas[k]);
  }
  return reflection_triple_from_angles(rel, alpha, th, opt);
}

}  // namespace chlab
