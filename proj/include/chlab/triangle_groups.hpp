#pragma once

// Representations of <a, b, c | a^p = b^q = c^r = abc = 1> by elliptic
// triples, and trace curves on their charts.

#include <cmath>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "chlab/decompose.hpp"
#include "chlab/error.hpp"
#include "chlab/isometry.hpp"
#include "chlab/linalg.hpp"
#include "chlab/su21.hpp"

namespace chlab {

struct PQRSignature {
  int p = 3, q = 3, r = 4;

  PQRSignature() = default;
  PQRSignature(int p_, int q_, int r_) : p(p_), q(q_), r(r_) {
    if (p < 2 || q < 2 || r < 2) throw Error(ErrorCode::InvalidSignature, "orders must be at least 2");
    if (q * r + p * r + p * q >= p * q * r) throw Error(ErrorCode::InvalidSignature, "1/p + 1/q + 1/r must be below 1");
  }
  int min() const { return std::min({p, q, r}); }
  std::string label() const { return std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r); }
};

/// Classes (2 pi k/p, 2 pi l/p), 0 <= l <= k < p, whose projective order is exactly p.
inline std::vector<AnglePair> elliptic_classes_of_order(int p) {
  if (p < 2) throw Error(ErrorCode::InvalidSignature, "order must be at least 2");
  std::vector<AnglePair> out;
  for (int k = 0; k < p; ++k)
    for (int l = 0; l <= k; ++l) {
      if (k == 0 && l == 0) continue;
      if (std::gcd(std::gcd(k, l), p) != 1) continue;
      out.emplace_back(kTwoPi * k / p, kTwoPi * l / p);
    }
  return out;
}

/// Smallest n <= limit with M^n scalar, or 0.
inline int projective_order(const CMat3& m, int limit, double tol = 1e-8) {
  CMat3 acc = m;
  for (int n = 1; n <= limit; ++n) {
    if (scalar_distance(acc) <= tol) return n;
    acc = acc * m;
  }
  return 0;
}

inline bool relation_check(const EllipticTriple& t, const PQRSignature& sig, double tol = 1e-8) {
  if (scalar_distance(power(t.A.matrix(), sig.p)) > tol) return false;
  if (scalar_distance(power(t.B.matrix(), sig.q)) > tol) return false;
  if (scalar_distance(power(t.C.matrix(), sig.r)) > tol) return false;
  const CMat3 abc = (t.A * t.B * t.C).matrix();
  return (abc - t.omega * CMat3::identity()).norm() <= tol * std::max(1.0, abc.norm());
}

/// Class of a rotation by 2pi/n about a point of a totally real plane, as an angle pair.
inline AnglePair rfuchsian_class(int n) { return {kTwoPi - kTwoPi / n, kTwoPi / n}; }

inline ComponentChart rfuchsian_chart(const PQRSignature& sig) {
  return component_chart(rfuchsian_class(sig.p), rfuchsian_class(sig.q), rfuchsian_class(sig.r));
}

inline std::array<AnglePair, 3> exotic_classes_45_20() {
  return {AnglePair(3 * kPi / 2, kPi), AnglePair(6 * kPi / 5, 2 * kPi / 5), AnglePair(8 * kPi / 5, 3 * kPi / 10)};
}

inline ComponentChart exotic_chart_45_20() {
  const auto c = exotic_classes_45_20();
  return component_chart(c[0], c[1], c[2]);
}

struct RepresentationSample {
  EllipticTriple triple;
  double theta = 0.0;
  double alpha = 0.0;
  std::string chart_id;
};

struct FixedTheta {
  double theta;
};
struct FixedAlpha {
  double alpha;
};
using LevelSpec = std::variant<FixedTheta, FixedAlpha>;

struct TracePoint {
  double theta = 0.0;
  double alpha = 0.0;
  cplx tr_ainv_b;
};

/// Tr(A^-1 B) along a level curve of theta (alpha runs over the closure of I(theta)) or of
/// alpha (theta runs over the part of the domain where alpha is admissible).
inline std::vector<TracePoint> trace_curve(const ComponentChart& chart, const LevelSpec& level, int grid = 64) {
  if (grid < 2) throw Error(ErrorCode::OutOfChart, "a trace curve needs at least two samples");
  std::vector<TracePoint> out;
  auto push = [&](double theta, double alpha, bool boundary) {
    ChartSample s = chart_sample(chart, theta, alpha, boundary);
    out.push_back({theta, alpha, (s.triple.A.inverse() * s.triple.B).trace()});
  };
  if (const auto* ft = std::get_if<FixedTheta>(&level)) {
    if (!chart.in_domain(ft->theta)) throw Error(ErrorCode::OutOfChart, "theta lies outside the chart domain");
    const AlphaInterval iv = chart.alpha_interval(ft->theta);
    if (iv.empty) throw Error(ErrorCode::OutOfChart, "no admissible alpha at this theta");
    if (iv.whole) {
      for (int i = 0; i < grid; ++i) push(ft->theta, kTwoPi * i / grid, false);
    } else {
      for (int i = 0; i <= grid; ++i) push(ft->theta, iv.lo + (iv.hi - iv.lo) * i / grid, i == 0 || i == grid);
    }
  } else {
    const double alpha = std::get<FixedAlpha>(level).alpha;
    for (const auto& d : chart.domain)
      for (int i = 1; i < grid; ++i) {
        const double theta = d.lo + (d.hi - d.lo) * i / grid;
        if (chart.alpha_interval(theta).contains(alpha)) push(theta, alpha, false);
      }
    if (out.empty()) throw Error(ErrorCode::OutOfChart, "alpha is not admissible anywhere on the domain");
  }
  return out;
}

}  // namespace chlab
