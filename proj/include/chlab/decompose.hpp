#pragma once

// Decompositions of elliptic triples ABC = 1 as A = R1 R2^-1, B = R2 R3^-1,
// C = R3 R1^-1 with complex reflections R_k, and the (theta, alpha) charts of
// the components made of such triples.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "chlab/eigen.hpp"
#include "chlab/error.hpp"
#include "chlab/hermitian_core.hpp"
#include "chlab/isometry.hpp"
#include "chlab/linalg.hpp"
#include "chlab/reflections.hpp"
#include "chlab/su21.hpp"
#include "chlab/trace_geometry.hpp"

namespace chlab {

struct EllipticTriple {
  SU21Element A, B, C;
  cplx omega{1.0, 0.0};  // A B C = omega I

  /// Completes (A, B) with C = (AB)^{-1}.
  static EllipticTriple from_pair(const SU21Element& a, const SU21Element& b) {
    EllipticTriple t;
    t.A = a;
    t.B = b;
    t.C = (a * b).inverse();
    return t;
  }

  static EllipticTriple make(const SU21Element& a, const SU21Element& b, const SU21Element& c) {
    EllipticTriple t;
    t.A = a;
    t.B = b;
    t.C = c;
    const CMat3 p = (a * b * c).matrix();
    int k = 0;
    const double d = distance_mod_omega(p, CMat3::identity(), &k);
    if (d > 1e-9 * std::max(1.0, a.matrix().norm() * b.matrix().norm() * c.matrix().norm()))
      throw Error(ErrorCode::InvalidRelation, "A B C is not a scalar multiple of the identity");
    t.omega = std::pow(chlab::omega(), k);
    for (const auto* g : {&a, &b, &c})
      if (!is_elliptic(classify(*g))) throw Error(ErrorCode::NotElliptic, "triple members must be elliptic");
    return t;
  }

  static EllipticTriple from_reflections(const ReflectionTriple& r) {
    const SU21Element r1 = r.su(0), r2 = r.su(1), r3 = r.su(2);
    EllipticTriple t;
    t.A = r1 * r2.inverse();
    t.B = r2 * r3.inverse();
    t.C = r3 * r1.inverse();
    return t;
  }

  const SU21Element& operator[](int i) const { return i == 0 ? A : (i == 1 ? B : C); }
};

enum class DecompositionKind { Spherical, Hyperbolic, Mixed };

constexpr std::string_view to_string(DecompositionKind k) {
  switch (k) {
    case DecompositionKind::Spherical: return "Spherical";
    case DecompositionKind::Hyperbolic: return "Hyperbolic";
    case DecompositionKind::Mixed: return "Mixed";
  }
  return "?";
}

using TypeVector = std::array<PointType, 3>;

inline constexpr TypeVector kSphericalTypes{PointType::Negative, PointType::Negative, PointType::Negative};
inline constexpr TypeVector kHyperbolicTypes{PointType::Positive, PointType::Positive, PointType::Positive};

inline DecompositionKind kind_of(const TypeVector& t) {
  if (t == kSphericalTypes) return DecompositionKind::Spherical;
  if (t == kHyperbolicTypes) return DecompositionKind::Hyperbolic;
  return DecompositionKind::Mixed;
}

/// Fixed points of A, B, C of prescribed types with their eigenvalues.
struct FixedPointConfig {
  CVec3 P_A, P_B, P_C;
  CVec3 P_BA;  // A^{-1} P_C, fixed by BA
  TypeVector types{};
  std::array<cplx, 3> lambdas{};
  cplx omega{1.0, 0.0};
  HermitianForm form;
};

enum class ConfigPolicy { FirstIrreducible, PreferDecomposable };

/// Whether some eigenvector of one element is also an eigenvector of the other.
inline bool has_common_eigenvector(const SU21Element& a, const SU21Element& b, double tol = 1e-8) {
  auto residual_in = [](const CMat3& m, const CVec3& v) {
    const CVec3 u = normalize_euclid(v);
    const CVec3 mu = m * u;
    const cplx lam = edot(mu, u);
    return (mu - lam * u).norm() / std::max(1.0, m.norm());
  };
  auto vectors_of = [](const SU21Element& g) -> std::vector<CVec3> {
    try {
      auto es = eigen_system(g.matrix(), g.form(), EigenOptions{1e-6, goldman_discriminant(g.trace()) > -tol::delta});
      if (es.distinct == 1) return {};
      std::vector<CVec3> out;
      for (const auto& p : es.pairs) out.push_back(p.vector);
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DefectiveMatrix) throw;
      return {};
    }
  };
  if (scalar_distance(a.matrix()) < tol || scalar_distance(b.matrix()) < tol) return true;
  for (const auto& v : vectors_of(a))
    if (residual_in(b.matrix(), v) < tol) return true;
  for (const auto& v : vectors_of(b))
    if (residual_in(a.matrix(), v) < tol) return true;
  return false;
}

/// (lambda_A lambda_B lambda_C)^3 - 1.
inline double cube_residual(const std::array<cplx, 3>& lambdas) {
  return std::abs(std::pow(lambdas[0] * lambdas[1] * lambdas[2], 3) - 1.0);
}

inline FixedPointConfig irreducible_config(const EllipticTriple& t, const TypeVector& want,
                                           ConfigPolicy policy = ConfigPolicy::PreferDecomposable) {
  if (has_common_eigenvector(t.A, t.B)) throw Error(ErrorCode::ReducibleTriple, "A and B share an eigenvector");
  std::array<EigenSystem, 3> es{detail::elliptic_eigen(t.A), detail::elliptic_eigen(t.B), detail::elliptic_eigen(t.C)};
  std::array<std::vector<int>, 3> cand;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i)
      if (es[k][i].type == want[k]) cand[k].push_back(i);
    if (cand[k].empty()) throw Error(ErrorCode::TypeUnavailable, "no eigenvector of the requested type");
  }
  const HermitianForm& form = t.A.form();
  std::optional<FixedPointConfig> first;
  for (int ia : cand[0])
    for (int ib : cand[1])
      for (int ic : cand[2]) {
        FixedPointConfig c;
        c.P_A = normalize_max(es[0][ia].vector);
        c.P_B = normalize_max(es[1][ib].vector);
        c.P_C = normalize_max(es[2][ic].vector);
        if (std::abs(form(c.P_A, c.P_B)) <= tol::type || std::abs(form(c.P_B, c.P_C)) <= tol::type ||
            std::abs(form(c.P_C, c.P_A)) <= tol::type)
          continue;
        if (projective_distance(c.P_A, c.P_B) < 1e-8 || projective_distance(c.P_B, c.P_C) < 1e-8 ||
            projective_distance(c.P_C, c.P_A) < 1e-8)
          continue;
        c.P_BA = normalize_max(t.A.inverse().matrix() * c.P_C);
        c.types = want;
        c.lambdas = {es[0][ia].value, es[1][ib].value, es[2][ic].value};
        c.omega = t.omega;
        c.form = form;
        if (policy == ConfigPolicy::FirstIrreducible) return c;
        if (cube_residual(c.lambdas) <= tol::dec) return c;
        if (!first) first = c;
      }
  if (first) return *first;
  throw Error(ErrorCode::TypeUnavailable, "no pairwise non-orthogonal configuration of the requested type");
}

struct DecomposabilityReport {
  bool decomposable = false;   // cube test on the eigenvalues
  double cube_residual = 0.0;
  cplx cross_ratio;            // X(P_A, P_B, P_C, P_BA)
  bool cross_ratio_one = false;
  bool agree = false;
};

inline DecomposabilityReport decomposability_report(const FixedPointConfig& cfg) {
  DecomposabilityReport r;
  r.cube_residual = cube_residual(cfg.lambdas);
  r.decomposable = r.cube_residual <= tol::dec;
  r.cross_ratio = cross_ratio(cfg.P_A, cfg.P_B, cfg.P_C, cfg.P_BA, cfg.form);
  r.cross_ratio_one = std::abs(r.cross_ratio - 1.0) <= tol::dec;
  r.agree = r.decomposable == r.cross_ratio_one;
  return r;
}

inline bool decomposability_test(const FixedPointConfig& cfg) { return cube_residual(cfg.lambdas) <= tol::dec; }

struct Decomposition {
  std::array<ComplexReflection, 3> R;
  DecompositionKind kind = DecompositionKind::Spherical;
  double residual = 0.0;  // largest projective mismatch of the three products
};

namespace detail {

/// Reads a reflection from a matrix fixing the two points p and q.
inline ComplexReflection reflection_through(const CMat3& m, const CVec3& p, const CVec3& q, const HermitianForm& form) {
  const CVec3 polar = box_product(p, q, form);
  if (polar.norm() <= 1e-12 * p.norm() * q.norm()) throw Error(ErrorCode::DegenerateGeometry, "fixed points coincide");
  if (point_type(polar, form) == PointType::Null) throw Error(ErrorCode::DegenerateGeometry, "mirror is tangent to the boundary");
  const CVec3 pn = normalize_euclid(p);
  const cplx s = edot(m * pn, pn);
  if (std::abs(s) == 0.0) throw Error(ErrorCode::NotDecomposable, "matrix does not fix the mirror");
  const CMat3 mn = m / s;
  const CVec3 c = normalize_form(polar, form);
  const cplx eta = form(mn * c, c) / form(c, c);
  if (std::abs(std::abs(eta) - 1.0) > 1e-8 || std::abs(eta - 1.0) <= 1e-10)
    throw Error(ErrorCode::NotDecomposable, "product is not a complex reflection");
  ComplexReflection r = ComplexReflection::make(c, eta / std::abs(eta), form);
  if ((mn - r.matrix).norm() > 1e-8 * std::max(1.0, mn.norm()))
    throw Error(ErrorCode::NotDecomposable, "product is not a complex reflection");
  return r;
}

}  // namespace detail

inline Decomposition construct_decomposition(const EllipticTriple& t, const FixedPointConfig& cfg) {
  const DecompositionKind kind = kind_of(cfg.types);
  if (kind == DecompositionKind::Mixed) throw Error(ErrorCode::MixedNotSupported, "mixed decompositions are not constructed");
  const HermitianForm& form = cfg.form;

  const CVec3 pa = normalize_euclid(cfg.P_A), pb = normalize_euclid(cfg.P_B);
  const CVec3 pc = normalize_euclid(cfg.P_C), pba = normalize_euclid(cfg.P_BA);
  if (std::abs(form(pba, pa)) <= tol::type || std::abs(form(pba, pb)) <= tol::type)
    throw Error(ErrorCode::DegenerateGeometry, "A^-1 P_C is orthogonal to P_A or P_B");

  const CVec3 c2 = box_product(pa, pb, form);
  if (c2.norm() <= 1e-12) throw Error(ErrorCode::DegenerateGeometry, "P_A and P_B coincide");
  if (point_type(c2, form) == PointType::Null) throw Error(ErrorCode::DegenerateGeometry, "mirror through P_A, P_B is tangent to the boundary");
  const CVec3 c2n = normalize_euclid(c2);
  const cplx cc = form(c2n, c2n);

  // split P_C and A^-1 P_C along c2 and its orthogonal complement
  const cplx a = form(pc, c2n) / cc, b = form(pba, c2n) / cc;
  const CVec3 p = pc - a * c2n, q = pba - b * c2n;
  if (std::abs(a) <= 1e-12 || std::abs(b) <= 1e-12) throw Error(ErrorCode::DegenerateGeometry, "P_C lies on the mirror of R2");
  if (q.norm() <= 1e-12) throw Error(ErrorCode::DegenerateGeometry, "A^-1 P_C is polar to the mirror of R2");
  const cplx kappa = edot(p, q) / edot(q, q);
  if ((p - kappa * q).norm() > 1e-8 * std::max(1.0, p.norm()))
    throw Error(ErrorCode::NotDecomposable, "no reflection in the line (P_A P_B) maps P_C to A^-1 P_C");
  const cplx eta2 = kappa * b / a;
  if (std::abs(std::abs(eta2) - 1.0) > 1e-8)
    throw Error(ErrorCode::NotDecomposable, "rotation factor of R2 is not unimodular");
  if (std::abs(eta2 - 1.0) <= 1e-10) throw Error(ErrorCode::NotDecomposable, "R2 would be trivial");

  Decomposition d;
  d.kind = kind;
  d.R[1] = ComplexReflection::make(c2n, eta2 / std::abs(eta2), form);
  const CMat3 m1 = t.A.matrix() * d.R[1].matrix;
  const CMat3 m3 = t.B.inverse().matrix() * d.R[1].matrix;
  d.R[0] = detail::reflection_through(m1, pa, pc, form);
  d.R[2] = detail::reflection_through(m3, pb, pc, form);

  const CMat3 i1 = d.R[0].matrix.inverse(), i2 = d.R[1].matrix.inverse(), i3 = d.R[2].matrix.inverse();
  d.residual = std::max({projective_matrix_distance(d.R[0].matrix * i2, t.A.matrix()),
                         projective_matrix_distance(d.R[1].matrix * i3, t.B.matrix()),
                         projective_matrix_distance(d.R[2].matrix * i1, t.C.matrix())});
  if (d.residual > 1e-8) throw Error(ErrorCode::NotDecomposable, "reflection products do not recover the triple");
  return d;
}

inline Decomposition decomposition_of(const ReflectionTriple& r) {
  Decomposition d;
  for (int k = 0; k < 3; ++k) d.R[k] = r.reflection(k);
  const double lo = std::min({r.data.r1, r.data.r2, r.data.r3}), hi = std::max({r.data.r1, r.data.r2, r.data.r3});
  d.kind = hi < 1.0 ? DecompositionKind::Spherical : (lo > 1.0 ? DecompositionKind::Hyperbolic : DecompositionKind::Mixed);
  return d;
}

/// Negative-type eigenvalue of the unit-determinant lift of E(a1, a2) built from the principal cube root.
inline cplx principal_negative_eigenvalue(const AnglePair& c) {
  return 1.0 / principal_cbrt(std::polar(1.0, c.a1 + c.a2));
}

/// Class-level cube test for spherical decomposability of classes (cA, cB, cC).
inline bool classes_decomposable(const AnglePair& ca, const AnglePair& cb, const AnglePair& cc) {
  return cube_residual({principal_negative_eigenvalue(ca), principal_negative_eigenvalue(cb),
                        principal_negative_eigenvalue(cc)}) <= tol::dec;
}

struct ThetaInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double t) const { return t > lo && t < hi; }
};

/// Spherical decomposable triples with prescribed classes, parameterized by the rotation angle
/// theta of R1 and the angular invariant alpha of the mirror triangle.
struct ComponentChart {
  std::array<AnglePair, 3> classes;
  double beta = 0.0;   // theta2 - theta1
  double gamma = 0.0;  // theta3 - theta1
  std::array<cplx, 3> traces{};  // of the lifts with negative eigenvalues e^{i beta/3}, e^{i(gamma-beta)/3}, e^{-i gamma/3}
  std::vector<ThetaInterval> domain;

  std::array<double, 3> thetas(double theta) const { return {theta, theta + beta, theta + gamma}; }

  /// sin^2 of the mirror angles (phi1, phi2, phi3) at theta; phi_k is the angle between C_{k-1} and C_{k+1}.
  std::array<double, 3> sin2phi(double theta) const {
    const auto th = thetas(theta);
    auto solve = [](double ta, double tb, cplx tr) {
      const double d = tb - ta;
      const double den = 4.0 * std::sin(ta / 2.0) * std::sin(tb / 2.0);
      return ((deltoid_point(d / 3.0) - tr) * std::polar(1.0, d / 6.0)).real() / den;
    };
    return {solve(th[1], th[2], traces[1]), solve(th[2], th[0], traces[2]), solve(th[0], th[1], traces[0])};
  }

  bool admissible(double theta) const {
    for (double s : sin2phi(theta))
      if (!std::isfinite(s) || !(s > 0.0 && s <= 1.0)) return false;
    return true;
  }

  bool in_domain(double theta) const {
    for (const auto& iv : domain)
      if (iv.contains(theta)) return true;
    return false;
  }

  std::array<double, 3> phis(double theta) const {
    auto s = sin2phi(theta);
    return {std::asin(std::sqrt(std::min(1.0, s[0]))), std::asin(std::sqrt(std::min(1.0, s[1]))),
            std::asin(std::sqrt(std::min(1.0, s[2])))};
  }

  AlphaInterval alpha_interval(double theta) const {
    auto p = phis(theta);
    return chlab::alpha_interval(std::cos(p[0]), std::cos(p[1]), std::cos(p[2]));
  }
};

namespace detail {

inline std::vector<ThetaInterval> scan_domain(const ComponentChart& chart, int grid = 4096) {
  std::vector<ThetaInterval> out;
  auto refine = [&](double in, double out_pt) {
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (in + out_pt);
      if (chart.admissible(mid))
        in = mid;
      else
        out_pt = mid;
    }
    return 0.5 * (in + out_pt);
  };
  const double h = kTwoPi / grid;
  int i = 0;
  while (i < grid) {
    const double t = (i + 0.5) * h;
    if (!chart.admissible(t)) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 < grid && chart.admissible((j + 1.5) * h)) ++j;
    const double first = (i + 0.5) * h, last = (j + 0.5) * h;
    const double lo = i == 0 ? refine(first, 0.0) : refine(first, (i - 0.5) * h);
    const double hi = j == grid - 1 ? refine(last, kTwoPi) : refine(last, (j + 1.5) * h);
    out.push_back({lo, hi});
    i = j + 1;
  }
  return out;
}

}  // namespace detail

inline ComponentChart component_chart(const AnglePair& ca, const AnglePair& cb, const AnglePair& cc,
                                      const TypeVector& types = kSphericalTypes) {
  if (types != kSphericalTypes)
    throw Error(ErrorCode::TypeUnavailable, "charts are available for spherical decompositions only");
  const cplx la = principal_negative_eigenvalue(ca), lb = principal_negative_eigenvalue(cb),
             lc = principal_negative_eigenvalue(cc);
  if (cube_residual({la, lb, lc}) > tol::dec)
    throw Error(ErrorCode::NotDecomposableClasses, "the classes fail the eigenvalue cube test");
  ComponentChart ch;
  ch.classes = {ca, cb, cc};
  ch.beta = 3.0 * std::arg(la);
  ch.gamma = ch.beta + 3.0 * std::arg(lb);
  const std::array<cplx, 3> lam{std::polar(1.0, ch.beta / 3.0), std::polar(1.0, (ch.gamma - ch.beta) / 3.0),
                                std::polar(1.0, -ch.gamma / 3.0)};
  for (int k = 0; k < 3; ++k) {
    const AnglePair& c = ch.classes[k];
    ch.traces[k] = lam[k] * (1.0 + std::polar(1.0, c.a1) + std::polar(1.0, c.a2));
  }
  ch.domain = detail::scan_domain(ch);
  if (ch.domain.empty()) throw Error(ErrorCode::EmptyDomain, "no rotation angle gives admissible mirror angles");
  return ch;
}

struct ChartSample {
  ReflectionTriple reflections;
  EllipticTriple triple;
  Decomposition decomposition;
  double theta = 0.0;
  double alpha = 0.0;
};

/// The decomposable triple at (theta, alpha). With allow_boundary, alpha may sit on the
/// closure of the admissible interval, where the triple is reducible.
inline ChartSample chart_sample(const ComponentChart& chart, double theta, double alpha, bool allow_boundary = false) {
  if (!chart.in_domain(theta)) throw Error(ErrorCode::OutOfChart, "theta lies outside the chart domain");
  const auto phi = chart.phis(theta);
  const AlphaInterval iv = chart.alpha_interval(theta);
  bool ok = iv.contains(alpha);
  if (!ok && allow_boundary && !iv.empty && !iv.whole)
    ok = angle_distance(alpha, iv.lo) <= 1e-9 || angle_distance(alpha, iv.hi) <= 1e-9;
  if (!ok) throw Error(ErrorCode::OutOfChart, "alpha lies outside the admissible interval");
  ChartSample s;
  s.theta = theta;
  s.alpha = alpha;
  s.reflections = reflection_triple_from_angles(
      {LineRelation::intersecting(phi[0]), LineRelation::intersecting(phi[1]), LineRelation::intersecting(phi[2])},
      alpha, chart.thetas(theta), TripleOptions{allow_boundary});
  s.triple = EllipticTriple::from_reflections(s.reflections);
  s.decomposition = decomposition_of(s.reflections);
  return s;
}

struct Deformation {
  std::vector<double> alphas;
  std::vector<ReflectionTriple> reflections;
  std::vector<EllipticTriple> triples;
  DecompositionKind kind = DecompositionKind::Spherical;
  /// Spread of the pairwise box products of the final polar vectors (concurrent mirrors or
  /// common perpendicular line).
  double witness = 0.0;
};

/// Moves the angular invariant of the mirror triangle to the nearest end of its admissible
/// interval, keeping the mirror angles (or distances) and the rotation factors.
inline Deformation deform_to_reducible(const Decomposition& dec, int steps = 16) {
  if (steps < 2) throw Error(ErrorCode::DegenerateGeometry, "a deformation needs at least two samples");
  if (dec.kind == DecompositionKind::Mixed) throw Error(ErrorCode::MixedNotSupported, "mixed decompositions cannot be deformed");
  for (const auto& r : dec.R)
    if (r.kind != MirrorKind::MirrorLine) throw Error(ErrorCode::MixedNotSupported, "point mirrors cannot be deformed");
  const HermitianForm form;
  std::array<CVec3, 3> c{normalize_form(dec.R[0].polar), normalize_form(dec.R[1].polar), normalize_form(dec.R[2].polar)};
  const std::array<double, 3> r{std::abs(form(c[2], c[1])), std::abs(form(c[0], c[2])), std::abs(form(c[1], c[0]))};
  const bool all_in = r[0] < 1.0 && r[1] < 1.0 && r[2] < 1.0;
  const bool all_out = r[0] > 1.0 && r[1] > 1.0 && r[2] > 1.0;
  if (!all_in && !all_out) throw Error(ErrorCode::MixedNotSupported, "mirrors are neither pairwise intersecting nor pairwise ultraparallel");
  const double alpha0 = angular_invariant(c[0], c[1], c[2]);
  const AlphaInterval iv = alpha_interval(r[0], r[1], r[2]);
  if (iv.empty || iv.whole) throw Error(ErrorCode::DegenerateGeometry, "the admissible interval has no finite end");
  const double a0 = wrap_2pi(alpha0);
  const double target = (a0 - iv.lo) <= (iv.hi - a0) ? iv.lo : iv.hi;

  std::array<LineRelation, 3> rel;
  for (int k = 0; k < 3; ++k) rel[k] = LineRelation::from_modulus(r[k]);
  const std::array<double, 3> th{std::arg(dec.R[0].eta), std::arg(dec.R[1].eta), std::arg(dec.R[2].eta)};

  Deformation out;
  out.kind = all_in ? DecompositionKind::Spherical : DecompositionKind::Hyperbolic;
  for (int i = 0; i < steps; ++i) {
    const double s = static_cast<double>(i) / (steps - 1);
    const double a = a0 + (target - a0) * s;
    auto rt = reflection_triple_from_angles(rel, a, th, TripleOptions{i == steps - 1});
    out.alphas.push_back(a);
    out.triples.push_back(EllipticTriple::from_reflections(rt));
    out.reflections.push_back(std::move(rt));
  }
  const auto& last = out.reflections.back().polars;
  const CVec3 p01 = box_product(last[0], last[1]), p12 = box_product(last[1], last[2]), p20 = box_product(last[2], last[0]);
  out.witness = std::max({projective_distance(p01, p12), projective_distance(p12, p20), projective_distance(p20, p01)});
  return out;
}

}  // namespace chlab
