#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace chlab;
using chlab::testing::Rng;
using chlab::testing::thrown_code;

namespace {

/// Smallest n <= limit with M^n scalar, by repeated multiplication; 0 if none.
int brute_force_order(const CMat3& m, int limit) {
  CMat3 acc = m;
  for (int n = 1; n <= limit; ++n) {
    const cplx s = acc.trace() / 3.0;
    if ((acc - s * CMat3::identity()).norm() <= 1e-9) return n;
    acc = acc * m;
  }
  return 0;
}

std::set<std::pair<int, int>> as_multiples(const std::vector<AnglePair>& v, int p) {
  std::set<std::pair<int, int>> out;
  for (const auto& c : v)
    out.insert({static_cast<int>(std::lround(c.a1 * p / kTwoPi)), static_cast<int>(std::lround(c.a2 * p / kTwoPi))});
  return out;
}

}  // namespace

TEST(PQRSignature, Validation) {
  EXPECT_EQ(PQRSignature(3, 3, 4).label(), "3,3,4");
  EXPECT_EQ(PQRSignature(4, 5, 20).min(), 4);
  EXPECT_EQ(thrown_code([] { PQRSignature(3, 3, 3); }), ErrorCode::InvalidSignature);
  EXPECT_EQ(thrown_code([] { PQRSignature(2, 3, 6); }), ErrorCode::InvalidSignature);
  EXPECT_EQ(thrown_code([] { PQRSignature(1, 7, 7); }), ErrorCode::InvalidSignature);
}

TEST(EllipticClassesOfOrder, Examples) {
  EXPECT_EQ(as_multiples(elliptic_classes_of_order(2), 2), (std::set<std::pair<int, int>>{{1, 0}, {1, 1}}));
  const auto three = as_multiples(elliptic_classes_of_order(3), 3);
  EXPECT_TRUE(three.count({2, 1}));
  const auto four = as_multiples(elliptic_classes_of_order(4), 4);
  EXPECT_TRUE(four.count({3, 1}));
  EXPECT_FALSE(four.count({2, 0}));
  EXPECT_EQ(thrown_code([] { elliptic_classes_of_order(1); }), ErrorCode::InvalidSignature);
}

TEST(EllipticClassesOfOrder, MatchesBruteForce) {
  for (int p = 2; p <= 12; ++p) {
    std::set<std::pair<int, int>> expected;
    for (int k = 0; k < p; ++k)
      for (int l = 0; l <= k; ++l) {
        if (k == 0 && l == 0) continue;
        const SU21Element e = elliptic_from_angle_pair({kTwoPi * k / p, kTwoPi * l / p});
        if (brute_force_order(e.matrix(), p) == p) expected.insert({k, l});
      }
    const auto got = elliptic_classes_of_order(p);
    EXPECT_EQ(as_multiples(got, p), expected) << "p=" << p;
    for (const auto& c : got) EXPECT_EQ(projective_order(elliptic_from_angle_pair(c).matrix(), p), p);
  }
}

TEST(RelationCheck, ChartGrids) {
  for (const auto& [ch, sig] :
       {std::pair{rfuchsian_chart({3, 3, 4}), PQRSignature(3, 3, 4)}, std::pair{rfuchsian_chart({4, 5, 6}), PQRSignature(4, 5, 6)},
        std::pair{exotic_chart_45_20(), PQRSignature(4, 5, 20)}}) {
    int sampled = 0;
    for (const auto& d : ch.domain)
      for (int i = 0; i < 16; ++i) {
        const double theta = d.lo + (d.hi - d.lo) * (i + 0.5) / 16.0;
        const AlphaInterval iv = ch.alpha_interval(theta);
        if (iv.empty) continue;
        for (int j = 0; j < 16; ++j) {
          const double alpha = iv.whole ? kTwoPi * (j + 0.5) / 16.0 : iv.lo + (iv.hi - iv.lo) * (j + 0.5) / 16.0;
          const ChartSample s = chart_sample(ch, theta, alpha);
          EXPECT_TRUE(relation_check(s.triple, sig)) << sig.label() << " " << theta << " " << alpha;
          EXPECT_EQ(brute_force_order(s.triple.A.matrix(), sig.p), sig.p);
          EXPECT_EQ(brute_force_order(s.triple.B.matrix(), sig.q), sig.q);
          EXPECT_EQ(brute_force_order(s.triple.C.matrix(), sig.r), sig.r);
          ++sampled;
        }
      }
    EXPECT_GE(sampled, 128) << sig.label();
  }
}

TEST(RelationCheck, GenericPerturbationFails) {
  const ChartSample s = chart_sample(rfuchsian_chart({3, 3, 4}), kPi, kPi);
  EllipticTriple t = s.triple;
  t.A = t.A * elliptic_from_angle_pair({1.0, 0.3});
  EXPECT_FALSE(relation_check(t, {3, 3, 4}));
  EXPECT_TRUE(relation_check(s.triple, {3, 3, 4}));
}

TEST(RFuchsianChart, GenericSinFormulas) {
  for (const PQRSignature sig : {PQRSignature(3, 3, 4), PQRSignature(4, 5, 6), PQRSignature(3, 7, 8), PQRSignature(5, 5, 5)}) {
    const ComponentChart ch = rfuchsian_chart(sig);
    EXPECT_LE(angle_distance(ch.beta, 0.0), 1e-9);
    EXPECT_LE(angle_distance(ch.gamma, 0.0), 1e-9);
    const int m = sig.min();
    ASSERT_EQ(ch.domain.size(), 1u);
    EXPECT_NEAR(ch.domain[0].lo, kTwoPi / m, 1e-9);
    EXPECT_NEAR(ch.domain[0].hi, kTwoPi - kTwoPi / m, 1e-9);
    for (int i = 1; i < 8; ++i) {
      const double theta = ch.domain[0].lo + (ch.domain[0].hi - ch.domain[0].lo) * i / 8.0;
      const double h = 2.0 * std::pow(std::sin(theta / 2.0), 2);
      const auto s = ch.sin2phi(theta);
      // phi1 sits between C2 and C3, the mirrors of B
      EXPECT_NEAR(s[0], (1.0 - std::cos(kTwoPi / sig.q)) / h, 1e-12);
      EXPECT_NEAR(s[1], (1.0 - std::cos(kTwoPi / sig.r)) / h, 1e-12);
      EXPECT_NEAR(s[2], (1.0 - std::cos(kTwoPi / sig.p)) / h, 1e-12);
    }
    for (double theta : {kTwoPi / m + 1e-6, kTwoPi - kTwoPi / m - 1e-6}) {
      const auto s = ch.sin2phi(theta);
      const double top = std::max({s[0], s[1], s[2]});
      EXPECT_LE(top, 1.0);
      EXPECT_GT(top, 1.0 - 1e-3);
    }
  }
}

TEST(RFuchsianChart, InvolutionsAtPi) {
  const ChartSample s = chart_sample(rfuchsian_chart({4, 5, 6}), kPi, rfuchsian_chart({4, 5, 6}).alpha_interval(kPi).mid());
  for (cplx eta : s.reflections.etas) EXPECT_LE(std::abs(eta + 1.0), 1e-12);
}

TEST(ExoticChart, Examples) {
  const ComponentChart ch = exotic_chart_45_20();
  const double theta = 1.3 * kPi;
  const ChartSample s = chart_sample(ch, theta, ch.alpha_interval(theta).mid());
  EXPECT_EQ(projective_order(s.triple.A.matrix(), 40), 4);
  EXPECT_EQ(projective_order(s.triple.B.matrix(), 40), 5);
  EXPECT_EQ(projective_order(s.triple.C.matrix(), 40), 20);
  // just past theta = pi one of the mirror angles degenerates
  const auto edge = ch.sin2phi(kPi + 1e-9);
  bool degenerate = false;
  for (double v : edge) degenerate = degenerate || std::abs(v - 1.0) < 1e-6 || std::abs(v) < 1e-6;
  EXPECT_TRUE(degenerate);
  const auto c = exotic_classes_45_20();
  EXPECT_EQ(skeleton_membership(c[2].inverse(), c[0], c[1]), SkeletonMembership::Spherical);
}

TEST(TraceCurve, ThetaLevelThroughReduciblePoint) {
  const ComponentChart ch = rfuchsian_chart({3, 3, 4});
  const auto pts = trace_curve(ch, FixedTheta{kPi}, 32);
  ASSERT_EQ(pts.size(), 33u);
  const AlphaInterval iv = ch.alpha_interval(kPi);
  EXPECT_NEAR(pts.front().alpha, iv.lo, 1e-15);
  EXPECT_NEAR(pts.back().alpha, iv.hi, 1e-12);
  // both ends of the alpha interval give the same reducible representation
  EXPECT_LE(distance_mod_omega(pts.front().tr_ainv_b, pts.back().tr_ainv_b), 1e-8);
  // the reducible point lies on the real axis
  EXPECT_LE(std::abs(pts.front().tr_ainv_b.imag()), 1e-8);
  for (const auto& p : pts) EXPECT_DOUBLE_EQ(p.theta, kPi);
}

TEST(TraceCurve, BoundaryCollapsesToOneReduciblePoint) {
  const ComponentChart ch = rfuchsian_chart({3, 3, 4});
  std::vector<cplx> ends;
  for (double theta : {2.9, 3.0, kPi, 3.2, 3.3}) {
    const auto pts = trace_curve(ch, FixedTheta{theta}, 16);
    ends.push_back(pts.front().tr_ainv_b);
    ends.push_back(pts.back().tr_ainv_b);
  }
  for (cplx e : ends) EXPECT_LE(distance_mod_omega(e, ends[0]), 1e-7);
}

TEST(TraceCurve, OnlyBoundarySamplesAreReducible) {
  const ComponentChart ch = rfuchsian_chart({3, 3, 4});
  for (double theta : {2.9, kPi, 3.3}) {
    const AlphaInterval iv = ch.alpha_interval(theta);
    const int n = 16;
    for (int i = 0; i <= n; ++i) {
      const double alpha = iv.lo + (iv.hi - iv.lo) * i / n;
      const bool boundary = i == 0 || i == n;
      const ChartSample s = chart_sample(ch, theta, alpha, boundary);
      EXPECT_EQ(has_common_eigenvector(s.triple.A, s.triple.B, 1e-6), boundary) << theta << " " << i;
    }
  }
}

TEST(TraceCurve, MatchesCharacterPoint) {
  const ComponentChart ch = exotic_chart_45_20();
  const auto pts = trace_curve(ch, FixedTheta{1.25 * kPi}, 12);
  for (const auto& p : pts) {
    const bool boundary = &p == &pts.front() || &p == &pts.back();
    const ChartSample s = chart_sample(ch, p.theta, p.alpha, boundary);
    EXPECT_LE(std::abs(character_point(s.triple.A, s.triple.B).tr_ainv_b - p.tr_ainv_b), 1e-10);
  }
  const auto alpha_pts = trace_curve(ch, FixedAlpha{ch.alpha_interval(1.25 * kPi).mid()}, 32);
  EXPECT_FALSE(alpha_pts.empty());
  for (const auto& p : alpha_pts) EXPECT_TRUE(ch.in_domain(p.theta));
}

TEST(TraceCurve, Errors) {
  const ComponentChart ch = rfuchsian_chart({3, 3, 4});
  EXPECT_EQ(thrown_code([&] { trace_curve(ch, FixedTheta{1.0}); }), ErrorCode::OutOfChart);
  EXPECT_EQ(thrown_code([&] { trace_curve(ch, FixedTheta{2.2}); }), ErrorCode::OutOfChart);
  EXPECT_EQ(thrown_code([&] { trace_curve(ch, FixedAlpha{0.0}); }), ErrorCode::OutOfChart);
  EXPECT_EQ(thrown_code([&] { trace_curve(ch, FixedTheta{kPi}, 1); }), ErrorCode::OutOfChart);
}
