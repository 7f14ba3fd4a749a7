#pragma once

// Reducible part of the image of (A, B) -> class of AB for two regular
// elliptic classes, drawn in the half-square {0 <= y <= x < 2pi}.

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <vector>

#include "chlab/decompose.hpp"
#include "chlab/error.hpp"
#include "chlab/isometry.hpp"
#include "chlab/linalg.hpp"

namespace chlab {

inline constexpr double kSkeletonTol = 1e-7;

/// Point of the half-square, the canonical (max, min) form of an unordered angle pair.
using HalfSquarePoint = AnglePair;

struct SkeletonSegment {
  enum class Kind { Spherical, Hyperbolic };
  Kind kind = Kind::Spherical;
  double slope = -1.0;                            // in the unwrapped (first, second) coordinates
  std::array<double, 2> start{}, end{};           // unwrapped endpoints
  std::vector<std::vector<HalfSquarePoint>> polylines;  // canonical points, split where they wrap
  std::array<double, 2> at(double s) const {
    return {start[0] + s * (end[0] - start[0]), start[1] + s * (end[1] - start[1])};
  }
};

struct ReducibleSkeleton {
  std::array<HalfSquarePoint, 2> vertices;
  SkeletonSegment spherical;
  std::vector<SkeletonSegment> hyperbolic;
};

namespace detail {

inline void require_regular(const AnglePair& c) {
  if (!c.is_regular()) throw Error(ErrorCode::NotRegularElliptic, "class is not regular elliptic");
}

inline std::vector<std::vector<HalfSquarePoint>> sweep(const SkeletonSegment& seg, int resolution) {
  std::vector<std::vector<HalfSquarePoint>> lines(1);
  HalfSquarePoint prev;
  for (int i = 0; i <= resolution; ++i) {
    const auto p = seg.at(static_cast<double>(i) / resolution);
    const HalfSquarePoint h(p[0], p[1]);
    if (i > 0 && std::max(std::abs(h.a1 - prev.a1), std::abs(h.a2 - prev.a2)) > kPi / 2) lines.emplace_back();
    lines.back().push_back(h);
    prev = h;
  }
  return lines;
}

}  // namespace detail

inline std::array<HalfSquarePoint, 2> totally_reducible_vertices(const AnglePair& c1, const AnglePair& c2) {
  detail::require_regular(c1);
  detail::require_regular(c2);
  return {HalfSquarePoint(c1.a1 + c2.a1, c1.a2 + c2.a2), HalfSquarePoint(c1.a1 + c2.a2, c1.a2 + c2.a1)};
}

/// The segment of classes {S/2 + r, S/2 - r}, r in [|p - q|, p + q], of products with a common
/// negative-type fixed point; S is the sum of all four angles and p, q the half-differences.
inline SkeletonSegment spherical_segment(const AnglePair& c1, const AnglePair& c2) {
  const double s = c1.a1 + c1.a2 + c2.a1 + c2.a2;
  const double p = 0.5 * (c1.a1 - c1.a2), q = 0.5 * (c2.a1 - c2.a2);
  SkeletonSegment seg;
  seg.kind = SkeletonSegment::Kind::Spherical;
  seg.slope = -1.0;
  seg.start = {s / 2 + (p + q), s / 2 - (p + q)};
  seg.end = {s / 2 + std::abs(p - q), s / 2 - std::abs(p - q)};
  return seg;
}

/// Products with a common positive-type eigenvector: the common eigenvalue is e^{i(a_i + b_j)}
/// and the complementary rotation sweeps from a_o + b_o towards 2pi.
inline std::vector<SkeletonSegment> hyperbolic_segments(const AnglePair& c1, const AnglePair& c2) {
  const std::array<double, 2> a{c1.a1, c1.a2}, b{c2.a1, c2.a2};
  std::vector<SkeletonSegment> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double ao = a[1 - i], bo = b[1 - j];
      const double psi0 = ao + bo;
      const double dmax = psi0 < kTwoPi ? kTwoPi - psi0 : -(psi0 - kTwoPi);
      SkeletonSegment seg;
      seg.kind = SkeletonSegment::Kind::Hyperbolic;
      seg.slope = 2.0;
      seg.start = {a[i] + b[j], psi0};
      seg.end = {a[i] + b[j] + dmax / 2, psi0 + dmax};
      out.push_back(seg);
    }
  return out;
}

inline ReducibleSkeleton reducible_skeleton(const AnglePair& c1, const AnglePair& c2, int resolution = 256) {
  ReducibleSkeleton sk;
  sk.vertices = totally_reducible_vertices(c1, c2);
  sk.spherical = spherical_segment(c1, c2);
  sk.spherical.polylines = detail::sweep(sk.spherical, resolution);
  sk.hyperbolic = hyperbolic_segments(c1, c2);
  for (auto& h : sk.hyperbolic) {
    h.polylines = detail::sweep(h, resolution);
    // in canonical (max, min) order the slope 2 becomes 1/2 when the common eigenvalue is the smaller angle
    const auto mid = h.at(0.5);
    if (wrap_2pi(mid[0]) < wrap_2pi(mid[1])) h.slope = 0.5;
  }
  return sk;
}

enum class SkeletonMembership { NotOnSkeleton, Spherical, Hyperbolic, Vertex };

constexpr std::string_view to_string(SkeletonMembership m) {
  switch (m) {
    case SkeletonMembership::NotOnSkeleton: return "NotOnSkeleton";
    case SkeletonMembership::Spherical: return "Spherical";
    case SkeletonMembership::Hyperbolic: return "Hyperbolic";
    case SkeletonMembership::Vertex: return "Vertex";
  }
  return "?";
}

namespace detail {

/// Whether the class c lies on the segment, trying each way of matching one coordinate.
inline bool on_segment(const SkeletonSegment& seg, const AnglePair& c, double tol) {
  const double dx = seg.end[0] - seg.start[0], dy = seg.end[1] - seg.start[1];
  const bool use_y = std::abs(dy) >= std::abs(dx);
  const double span = use_y ? dy : dx;
  const double origin = use_y ? seg.start[1] : seg.start[0];
  if (std::abs(span) <= tol) return angle_pair_distance(HalfSquarePoint(seg.start[0], seg.start[1]), c) <= tol;
  for (double v : {c.a1, c.a2}) {
    const double base = wrap_2pi(v - origin);
    for (double shift : {base - kTwoPi, base, base + kTwoPi}) {
      double s = shift / span;
      if (s < -tol || s > 1.0 + tol) continue;
      s = std::clamp(s, 0.0, 1.0);
      const auto p = seg.at(s);
      if (angle_pair_distance(HalfSquarePoint(p[0], p[1]), c) <= tol) return true;
    }
  }
  return false;
}

}  // namespace detail

/// Where the class c3 of AB sits on the reducible skeleton of (c1, c2).
inline SkeletonMembership skeleton_membership(const AnglePair& c3, const AnglePair& c1, const AnglePair& c2,
                                              double tol = kSkeletonTol) {
  detail::require_regular(c1);
  detail::require_regular(c2);
  detail::require_regular(c3);
  const auto v = totally_reducible_vertices(c1, c2);
  if (angle_pair_distance(c3, v[0]) <= tol || angle_pair_distance(c3, v[1]) <= tol) return SkeletonMembership::Vertex;
  if (classes_decomposable(c1, c2, c3.inverse()) && detail::on_segment(spherical_segment(c1, c2), c3, tol))
    return SkeletonMembership::Spherical;
  for (const auto& h : hyperbolic_segments(c1, c2))
    if (detail::on_segment(h, c3, tol)) return SkeletonMembership::Hyperbolic;
  return SkeletonMembership::NotOnSkeleton;
}

enum class FiberKind { Empty, Point, DecomposableFamily };

constexpr std::string_view to_string(FiberKind k) {
  switch (k) {
    case FiberKind::Empty: return "empty";
    case FiberKind::Point: return "point";
    case FiberKind::DecomposableFamily: return "decomposable_family";
  }
  return "?";
}

struct FiberReport {
  FiberKind kind = FiberKind::Empty;
  SkeletonMembership membership = SkeletonMembership::NotOnSkeleton;
  int samples = 0;
  int decomposed = 0;               // interior samples whose decomposition was recovered
  int boundary_samples = 0;
  double boundary_trace_spread = 0.0;  // largest mod-omega spread of the five traces at the alpha boundary
  std::optional<ComponentChart> chart;
};

/// Probes the pairs (A, B) in (c1, c2) with AB in c3 through the chart of (c1, c2, c3^{-1}).
inline FiberReport fiber_probe(const AnglePair& c1, const AnglePair& c2, const AnglePair& c3, int samples = 8) {
  FiberReport rep;
  rep.membership = skeleton_membership(c3, c1, c2);
  if (rep.membership == SkeletonMembership::NotOnSkeleton) return rep;
  try {
    rep.chart = component_chart(c1, c2, c3.inverse());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyDomain) {
      rep.kind = FiberKind::Point;
      return rep;
    }
    if (e.code() == ErrorCode::NotDecomposableClasses) return rep;
    throw;
  }
  const ComponentChart& ch = *rep.chart;
  std::vector<CharacterPoint> boundary;
  const int n = std::max(2, samples);
  for (const auto& iv : ch.domain) {
    for (int i = 0; i < n; ++i) {
      const double theta = iv.lo + (iv.hi - iv.lo) * (i + 0.5) / n;
      const AlphaInterval ai = ch.alpha_interval(theta);
      if (ai.empty) continue;
      for (int j = 0; j < n; ++j) {
        const double alpha = ai.whole ? kTwoPi * (j + 0.5) / n : ai.lo + (ai.hi - ai.lo) * (j + 0.5) / n;
        ChartSample s = chart_sample(ch, theta, alpha);
        ++rep.samples;
        try {
          auto cfg = irreducible_config(s.triple, kSphericalTypes);
          construct_decomposition(s.triple, cfg);
          ++rep.decomposed;
        } catch (const Error&) {
        }
      }
      if (!ai.whole) {
        ChartSample b = chart_sample(ch, theta, ai.lo, true);
        boundary.push_back(character_point(b.triple.A, b.triple.B));
      }
    }
  }
  rep.boundary_samples = static_cast<int>(boundary.size());
  for (std::size_t i = 1; i < boundary.size(); ++i) {
    const auto& p = boundary[0];
    const auto& q = boundary[i];
    rep.boundary_trace_spread = std::max(
        {rep.boundary_trace_spread, distance_mod_omega(p.tr_a, q.tr_a), distance_mod_omega(p.tr_b, q.tr_b),
         distance_mod_omega(p.tr_ab, q.tr_ab), distance_mod_omega(p.tr_ainv_b, q.tr_ainv_b),
         distance_mod_omega(p.tr_comm, q.tr_comm)});
  }
  rep.kind = rep.samples > 0 && rep.decomposed == rep.samples ? FiberKind::DecomposableFamily : FiberKind::Empty;
  return rep;
}

}  // namespace chlab
