#pragma once

// The deltoid 2e^{it} + e^{-2it} bounding the traces of regular elliptic
// elements, its tangent lines, and traces of products of two reflections.

#include <algorithm>
#include <array>
#include <cmath>

#include "chlab/eigen.hpp"
#include "chlab/error.hpp"
#include "chlab/isometry.hpp"
#include "chlab/linalg.hpp"
#include "chlab/reflections.hpp"

namespace chlab {

inline cplx deltoid_point(double theta) { return 2.0 * std::polar(1.0, theta) + std::polar(1.0, -2.0 * theta); }

/// Tangent to the deltoid at parameter theta: { e^{i theta} + t e^{-i theta/2} : t real }.
struct TangentLine {
  double foot_theta = 0.0;
  cplx foot;
  cplx direction;

  explicit TangentLine(double theta)
      : foot_theta(theta), foot(deltoid_point(theta)), direction(std::polar(1.0, -theta / 2.0)) {}

  /// Signed coordinate of z along the line, measured from the foot.
  double parameter(cplx z) const { return ((z - foot) * std::conj(direction)).real(); }
  /// Distance from z to the line.
  double residual(cplx z) const { return std::abs(((z - foot) * std::conj(direction)).imag()); }
};

struct TangentTriple {
  std::array<double, 3> thetas{};  // in [0, 2pi), ascending
  bool near_degenerate = false;    // two tangency points closer than 1e-6
};

/// Parameters of the three tangents through an interior point z: the unit roots of
/// w^3 - z w^2 + conj(z) w - 1 = 0.
inline TangentTriple tangents_through(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error(ErrorCode::NonFinite, "point is not finite");
  if (!(goldman_discriminant(z) < -tol::delta)) throw Error(ErrorCode::NotInsideDeltoid, "point is not strictly inside the deltoid");
  auto w = cubic_roots(-z, std::conj(z), -1.0);
  TangentTriple out;
  for (int k = 0; k < 3; ++k) {
    // Newton on g(t) = Im((z - e^{it}) e^{it/2}) keeps the root on the circle
    double t = std::arg(w[k]);
    for (int it = 0; it < 4; ++it) {
      const double g = std::imag((z - std::polar(1.0, t)) * std::polar(1.0, t / 2.0));
      const cplx dz = std::polar(1.0, t / 2.0) * (0.5 * kI * (z - std::polar(1.0, t)) - kI * std::polar(1.0, t));
      const double dg = dz.imag();
      if (dg == 0.0) break;
      const double nt = t - g / dg;
      if (!(std::abs(std::imag((z - std::polar(1.0, nt)) * std::polar(1.0, nt / 2.0))) < std::abs(g))) break;
      t = nt;
    }
    out.thetas[k] = wrap_2pi(t);
  }
  std::sort(out.thetas.begin(), out.thetas.end());
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (angle_distance(out.thetas[i], out.thetas[j]) < 1e-6) out.near_degenerate = true;
  return out;
}

/// Trace of e^{-i theta1/3} R1 (e^{-i theta2/3} R2)^{-1} for reflections with rotation angles
/// theta1, theta2 whose mirrors are in the given relation.
inline cplx trace_product(double theta1, double theta2, const LineRelation& rel) {
  if (angle_distance(theta1, 0.0) <= 1e-12 || angle_distance(theta2, 0.0) <= 1e-12)
    throw Error(ErrorCode::TrivialRotation, "rotation angle 0 is not a reflection");
  double coeff = 0.0;
  switch (rel.kind) {
    case LineRelation::Kind::Intersecting:
      if (!(rel.value > 0.0 && rel.value <= kPi / 2 + 1e-15))
        throw Error(ErrorCode::InvalidRelation, "intersection angle must lie in (0, pi/2]");
      coeff = -std::pow(std::sin(rel.value), 2);
      break;
    case LineRelation::Kind::Ultraparallel:
      if (!(rel.value > 0.0)) throw Error(ErrorCode::InvalidRelation, "distance must be positive");
      coeff = std::pow(std::sinh(rel.value / 2.0), 2);
      break;
    case LineRelation::Kind::Asymptotic: coeff = 0.0; break;
  }
  const double d = theta2 - theta1;
  return deltoid_point(d / 3.0) +
         4.0 * coeff * std::sin(theta1 / 2.0) * std::sin(theta2 / 2.0) * std::polar(1.0, -d / 6.0);
}

/// 2 lambda + lambda^{-2}: foot of the tangent carrying the traces with negative-type eigenvalue lambda.
inline cplx tangent_foot(cplx lambda_minus) {
  if (std::abs(std::abs(lambda_minus) - 1.0) > 1e-9) throw Error(ErrorCode::NotUnitModulus, "eigenvalue must have modulus one");
  return 2.0 * lambda_minus + 1.0 / (lambda_minus * lambda_minus);
}

}  // namespace chlab
