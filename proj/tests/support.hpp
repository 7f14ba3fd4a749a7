#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chlab/chlab.hpp"

namespace chlab::testing {

/// Seed from CHLAB_SEED, or a fixed default.
inline std::uint64_t seed_from_env(std::uint64_t fallback = 20240607) {
  if (const char* s = std::getenv("CHLAB_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0') return v;
  }
  return fallback;
}

class Rng {
 public:
  explicit Rng(std::uint64_t salt = 0) : g_(seed_from_env() ^ (salt * 0x9E3779B97F4A7C15ull)) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(g_); }
  double angle() { return uniform(0.0, kTwoPi); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(g_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g_); }
  cplx gauss() { return {normal(), normal()}; }
  cplx phase() { return std::polar(1.0, angle()); }
  CVec3 vec() { return {gauss(), gauss(), gauss()}; }

 private:
  std::mt19937_64 g_;
};

/// Block diag(U, e^{i phi}) with U a random 2x2 unitary.
inline CMat3 random_compact(Rng& rng) {
  const cplx a = rng.gauss(), b = rng.gauss();
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  const cplx p = a / n, q = b / n, ph = rng.phase();
  return CMat3{{p, -std::conj(q) * ph, 0.0}, {q, std::conj(p) * ph, 0.0}, {0.0, 0.0, rng.phase()}};
}

/// Hyperbolic translation along the real axis of the first coordinate.
inline CMat3 boost(double t) {
  return CMat3{{std::cosh(t), 0.0, std::sinh(t)}, {0.0, 1.0, 0.0}, {std::sinh(t), 0.0, std::cosh(t)}};
}

/// Random J-unitary matrix K1 T K2 of determinant one, with translation length at most max_boost.
inline CMat3 random_unitary(Rng& rng, double max_boost = 1.5) {
  const CMat3 m = random_compact(rng) * boost(rng.uniform(0.0, max_boost)) * random_compact(rng);
  return m / principal_cbrt(m.det());
}

inline SU21Element random_su21(Rng& rng, double max_boost = 1.5) {
  return SU21Element::trusted(random_unitary(rng, max_boost));
}

inline SU21Element conjugate(const SU21Element& g, const CMat3& p) {
  return SU21Element::trusted(p * g.matrix() * p.inverse(), g.form());
}

/// Unit-determinant diagonal element with the given unit eigenvalues on e1, e2 and e3.
inline SU21Element diagonal_elliptic(double x, double y, double z) {
  const CMat3 m = CMat3::diag(std::polar(1.0, x), std::polar(1.0, y), std::polar(1.0, z));
  return SU21Element::trusted(m / principal_cbrt(m.det()));
}

/// Random regular class with the angles at least `gap` apart from each other and from 0.
inline AnglePair random_regular_class(Rng& rng, double gap = 0.05) {
  for (;;) {
    const AnglePair c(rng.angle(), rng.angle());
    if (angle_distance(c.a1, c.a2) > gap && angle_distance(c.a1, 0.0) > gap && angle_distance(c.a2, 0.0) > gap)
      return c;
  }
}

inline double pair_gap(const AnglePair& p, const AnglePair& q) { return angle_pair_distance(p, q); }

/// Random interior point of the deltoid, at least `margin` inside in discriminant.
inline cplx random_deltoid_interior(Rng& rng, double margin = 1e-6) {
  for (;;) {
    const cplx z(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
    if (goldman_discriminant(z) < -margin) return z;
  }
}

/// Random angle avoiding 0 mod 2pi by `gap`.
inline double nonzero_angle(Rng& rng, double gap = 0.05) { return rng.uniform(gap, kTwoPi - gap); }

/// Trace of R1 R2^{-1} for two reflections with polar vectors e1, e2 of a form with
/// <e1,e2> = r, rotation angles t1, t2, each reflection built from its defining formula
/// z -> z + (eta - 1) <z,c>/<c,c> c and scaled to determinant one.
inline cplx two_reflection_trace(double t1, double t2, double r) {
  // Gram matrix G_ij = <e_j, e_i> with a third vector completing the form
  const double third = r < 1.0 ? -1.0 : 1.0;
  const double g[3][3] = {{1.0, r, 0.0}, {r, 1.0, 0.0}, {0.0, 0.0, third}};
  auto refl = [&](int k, double t) {
    const cplx eta = std::polar(1.0, t);
    CMat3 m = CMat3::identity();
    // column j is the image of e_j: e_j + (eta - 1) <e_j, e_k> e_k
    for (int j = 0; j < 3; ++j) m(k, j) += (eta - 1.0) * g[k][j];
    return m / principal_cbrt(m.det());
  };
  const CMat3 a = refl(0, t1), b = refl(1, t2);
  return (a * b.inverse()).trace();
}

/// Code of the chlab::Error thrown by f, or nullopt when nothing is thrown.
template <class F>
std::optional<ErrorCode> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

/// 1 - |u.v| / (|u||v|): zero iff u and v span the same complex line.
inline double line_gap(const CVec3& u, const CVec3& v) {
  cplx d = 0.0;
  for (int i = 0; i < 3; ++i) d += u[i] * std::conj(v[i]);
  return 1.0 - std::abs(d) / (u.norm() * v.norm());
}

/// Random spherical reflection triple, kept away from the admissible boundary.
inline ReflectionTriple random_spherical_triple(Rng& rng) {
  for (;;) {
    const double p1 = rng.uniform(0.2, kPi / 2), p2 = rng.uniform(0.2, kPi / 2), p3 = rng.uniform(0.2, kPi / 2);
    const AlphaInterval iv = alpha_interval(std::cos(p1), std::cos(p2), std::cos(p3));
    if (iv.empty) continue;
    const double alpha = iv.whole ? rng.angle() : rng.uniform(iv.lo + 0.05, iv.hi - 0.05);
    if (!iv.whole && iv.hi - iv.lo < 0.2) continue;
    const std::array<double, 3> th{nonzero_angle(rng, 0.2), nonzero_angle(rng, 0.2),
                                   nonzero_angle(rng, 0.2)};
    auto t = reflection_triple_from_angles(
        {LineRelation::intersecting(p1), LineRelation::intersecting(p2), LineRelation::intersecting(p3)}, alpha, th);
    const EllipticTriple e = EllipticTriple::from_reflections(t);
    bool regular = true;
    for (int k = 0; k < 3; ++k) regular = regular && classify(e[k]) == IsometryClass::RegularElliptic;
    if (regular) return t;
  }
}

/// Random hyperbolic reflection triple with short distances, so that the products stay elliptic.
inline std::optional<ReflectionTriple> random_hyperbolic_triple(Rng& rng) {
  const std::array<double, 3> l{rng.uniform(0.02, 0.3), rng.uniform(0.02, 0.3), rng.uniform(0.02, 0.3)};
  const double alpha = rng.angle();
  const std::array<double, 3> th{nonzero_angle(rng, 0.3), nonzero_angle(rng, 0.3),
                                 nonzero_angle(rng, 0.3)};
  std::array<LineRelation, 3> rel{LineRelation::ultraparallel(l[0]), LineRelation::ultraparallel(l[1]),
                                  LineRelation::ultraparallel(l[2])};
  const Signature s = signature_of(triangle_gram(rel[0].modulus(), rel[1].modulus(), rel[2].modulus(), alpha));
  if (s.positive != 2 || s.negative != 1) return std::nullopt;
  auto t = reflection_triple_from_angles(rel, alpha, th);
  const EllipticTriple e = EllipticTriple::from_reflections(t);
  for (int k = 0; k < 3; ++k)
    if (classify(e[k]) != IsometryClass::RegularElliptic) return std::nullopt;
  return t;
}

inline ReflectionTriple involutions_334() {
  return reflection_triple({LineRelation::intersecting(kPi / 3), LineRelation::intersecting(kPi / 4),
                            LineRelation::intersecting(kPi / 3)},
                           kPi, {-1.0, -1.0, -1.0});
}

/// Rows of a comma-separated text without quoting, header included.
inline std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace chlab::testing
