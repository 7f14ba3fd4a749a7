#pragma once

// Isometry types of PU(2,1) read off SU(2,1) lifts, angle pairs of elliptic
// classes and trace coordinates of pairs.

#include <cmath>
#include <string_view>

#include "chlab/eigen.hpp"
#include "chlab/error.hpp"
#include "chlab/hermitian_core.hpp"
#include "chlab/linalg.hpp"
#include "chlab/su21.hpp"

namespace chlab {

enum class IsometryClass { Loxodromic, Parabolic, RegularElliptic, SpecialEllipticLine, SpecialEllipticPoint, Identity };

constexpr std::string_view to_string(IsometryClass c) {
  switch (c) {
    case IsometryClass::Loxodromic: return "Loxodromic";
    case IsometryClass::Parabolic: return "Parabolic";
    case IsometryClass::RegularElliptic: return "RegularElliptic";
    case IsometryClass::SpecialEllipticLine: return "SpecialEllipticLine";
    case IsometryClass::SpecialEllipticPoint: return "SpecialEllipticPoint";
    case IsometryClass::Identity: return "Identity";
  }
  return "?";
}

constexpr bool is_elliptic(IsometryClass c) {
  return c == IsometryClass::RegularElliptic || c == IsometryClass::SpecialEllipticLine ||
         c == IsometryClass::SpecialEllipticPoint || c == IsometryClass::Identity;
}

/// Unordered rotation angles of an elliptic class, stored as 0 <= a2 <= a1 < 2pi.
struct AnglePair {
  double a1 = 0.0;
  double a2 = 0.0;

  AnglePair() = default;
  AnglePair(double x, double y) {
    x = wrap_2pi(x);
    y = wrap_2pi(y);
    a1 = std::max(x, y);
    a2 = std::min(x, y);
  }

  /// Class of the inverse element.
  AnglePair inverse() const { return {kTwoPi - a2, kTwoPi - a1}; }
  bool is_regular() const {
    return angle_distance(a1, a2) > tol::angle && angle_distance(a1, 0.0) > tol::angle &&
           angle_distance(a2, 0.0) > tol::angle;
  }
};

/// Distance between two classes as unordered pairs on the torus.
inline double angle_pair_distance(const AnglePair& p, const AnglePair& q) {
  double same = std::max(angle_distance(p.a1, q.a1), angle_distance(p.a2, q.a2));
  double swap = std::max(angle_distance(p.a1, q.a2), angle_distance(p.a2, q.a1));
  return std::min(same, swap);
}

struct CharacterPoint {
  cplx tr_a, tr_b, tr_ab, tr_ainv_b, tr_comm;
};

/// |t|^4 - 8 Re(t^3) + 18 |t|^2 - 27: negative inside the deltoid, zero on it.
inline double goldman_discriminant(cplx t) {
  const double n = std::norm(t);
  return n * n - 8.0 * (t * t * t).real() + 18.0 * n - 27.0;
}

namespace detail {

inline bool near_scalar_identity(const CMat3& m) {
  return distance_mod_omega(m, CMat3::identity()) <= 1e-9 * std::max(1.0, m.norm());
}

struct Classified {
  IsometryClass kind;
  EigenSystem eig;
  bool has_eig = false;
};

inline Classified classify_full(const SU21Element& g) {
  const CMat3& m = g.matrix();
  if (near_scalar_identity(m)) return {IsometryClass::Identity, {}, false};
  const double f = goldman_discriminant(g.trace());
  if (f < -tol::delta) return {IsometryClass::RegularElliptic, eigen_system(m, g.form()), true};
  if (f > tol::delta) return {IsometryClass::Loxodromic, {}, false};
  EigenSystem es;
  try {
    es = eigen_system(m, g.form(), EigenOptions{1e-6, true});
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DefectiveMatrix) return {IsometryClass::Parabolic, {}, false};
    throw;
  }
  if (es.distinct == 1) return {IsometryClass::Identity, es, true};
  for (int i = 0; i < 3; ++i) {
    bool simple = true;
    for (int j = 0; j < 3; ++j)
      if (j != i && std::abs(es[i].value - es[j].value) <= 1e-14) simple = false;
    if (!simple) continue;
    if (es[i].type == PointType::Positive) return {IsometryClass::SpecialEllipticLine, es, true};
    if (es[i].type == PointType::Negative) return {IsometryClass::SpecialEllipticPoint, es, true};
  }
  return {IsometryClass::Parabolic, es, true};
}

inline EigenSystem elliptic_eigen(const SU21Element& g) {
  auto c = classify_full(g);
  if (!is_elliptic(c.kind)) throw Error(ErrorCode::NotElliptic, "element is not elliptic");
  if (c.kind != IsometryClass::RegularElliptic) {
    // near-special elements may still have three separated, well-typed eigenvalues
    try {
      auto plain = eigen_system(g.matrix(), g.form());
      if (plain.distinct == 3 && plain.count(PointType::Negative) == 1 && plain.count(PointType::Null) == 0)
        return plain;
    } catch (const Error&) {
    }
  }
  if (!c.has_eig) c.eig = eigen_system(g.matrix(), g.form(), EigenOptions{1e-6, true});
  if (c.eig.count(PointType::Negative) != 1)
    throw Error(ErrorCode::NotElliptic, "no isolated negative-type eigenvector");
  return c.eig;
}

}  // namespace detail

inline IsometryClass classify(const SU21Element& g) { return detail::classify_full(g).kind; }

inline cplx negative_type_eigenvalue(const SU21Element& g) {
  if (detail::near_scalar_identity(g.matrix())) return g.trace() / 3.0;
  auto es = detail::elliptic_eigen(g);
  for (const auto& p : es.pairs)
    if (p.type == PointType::Negative) return p.value;
  throw Error(ErrorCode::NotElliptic, "no negative-type eigenvalue");
}

inline AnglePair angle_pair(const SU21Element& g) {
  if (detail::near_scalar_identity(g.matrix())) return {0.0, 0.0};
  auto es = detail::elliptic_eigen(g);
  cplx neg = 0.0;
  for (const auto& p : es.pairs)
    if (p.type == PointType::Negative) neg = p.value;
  double ang[2];
  int k = 0;
  for (const auto& p : es.pairs)
    if (p.type != PointType::Negative) ang[k++] = std::arg(p.value / neg);
  return {ang[0], ang[1]};
}

/// Unit-determinant lift of diag(e^{i a1}, e^{i a2}, 1).
inline SU21Element elliptic_from_angle_pair(const AnglePair& p) {
  const cplx s = principal_cbrt(std::polar(1.0, p.a1 + p.a2));
  return SU21Element::trusted(CMat3::diag(std::polar(1.0, p.a1), std::polar(1.0, p.a2), 1.0) / s);
}

inline CharacterPoint character_point(const SU21Element& a, const SU21Element& b) {
  const SU21Element ai = a.inverse(), bi = b.inverse();
  return {a.trace(), b.trace(), (a * b).trace(), (ai * b).trace(), (a * b * ai * bi).trace()};
}

}  // namespace chlab
