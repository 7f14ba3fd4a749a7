#include <gtest/gtest.h>

#include "support.hpp"

using namespace chlab;
using chlab::testing::Rng;

TEST(GoldmanDiscriminant, Examples) {
  EXPECT_NEAR(goldman_discriminant(3.0), 0.0, 1e-12);
  EXPECT_NEAR(goldman_discriminant(0.0), -27.0, 1e-12);
  EXPECT_NEAR(goldman_discriminant(deltoid_point(0.7)), 0.0, 1e-9);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(elliptic_from_angle_pair({4 * kPi / 3, 2 * kPi / 3})), IsometryClass::RegularElliptic);
  const cplx eta = kI;
  const CMat3 r = std::pow(eta, -1.0 / 3.0) * CMat3::diag(1.0, eta, 1.0);
  EXPECT_EQ(classify(SU21Element(r)), IsometryClass::SpecialEllipticLine);
  // complex reflection in the origin
  const CMat3 s = std::pow(eta, -2.0 / 3.0) * CMat3::diag(eta, eta, 1.0);
  EXPECT_EQ(classify(SU21Element(s)), IsometryClass::SpecialEllipticPoint);
  const double t = std::log(2.0);
  EXPECT_EQ(classify(SU21Element(chlab::testing::boost(t))), IsometryClass::Loxodromic);
  EXPECT_EQ(classify(SU21Element()), IsometryClass::Identity);
  EXPECT_EQ(classify(SU21Element::trusted(omega() * CMat3::identity())), IsometryClass::Identity);
}

TEST(Classify, Parabolic) {
  const CMat3 x{{0.0, 1.0, 0.0}, {-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0}};
  const CMat3 u = CMat3::identity() + x + 0.5 * (x * x);
  EXPECT_EQ(classify(SU21Element(u)), IsometryClass::Parabolic);
}

TEST(Classify, ConjugationInvariant) {
  Rng rng(20);
  for (int i = 0; i < 500; ++i) {
    const SU21Element g = chlab::testing::random_su21(rng, 1.2);
    const SU21Element h = chlab::testing::conjugate(g, chlab::testing::random_unitary(rng, 1.0));
    EXPECT_EQ(classify(g), classify(h));
  }
}

TEST(AnglePair, Normalization) {
  const AnglePair p(1.0, 5.0);
  EXPECT_DOUBLE_EQ(p.a1, 5.0);
  EXPECT_DOUBLE_EQ(p.a2, 1.0);
  const AnglePair q(-1.0, 7.0);
  EXPECT_NEAR(q.a1, kTwoPi - 1.0, 1e-15);
  EXPECT_NEAR(q.a2, 7.0 - kTwoPi, 1e-15);
  const AnglePair inv = AnglePair(3 * kPi / 2, kPi / 2).inverse();
  EXPECT_NEAR(inv.a1, 3 * kPi / 2, 1e-15);
  EXPECT_NEAR(inv.a2, kPi / 2, 1e-15);
}

TEST(AnglePairExtraction, Examples) {
  const AnglePair c = angle_pair(elliptic_from_angle_pair({3 * kPi / 2, kPi / 2}));
  EXPECT_NEAR(c.a1, 3 * kPi / 2, 1e-12);
  EXPECT_NEAR(c.a2, kPi / 2, 1e-12);
  const AnglePair id = angle_pair(SU21Element());
  EXPECT_NEAR(id.a1, 0.0, 1e-12);
  EXPECT_NEAR(id.a2, 0.0, 1e-12);
  EXPECT_THROW(angle_pair(SU21Element(chlab::testing::boost(1.0))), Error);
}

TEST(AnglePairExtraction, ConjugationRoundTrip) {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const AnglePair c(rng.angle(), rng.angle());
    const SU21Element e = elliptic_from_angle_pair(c);
    const SU21Element g = chlab::testing::conjugate(e, chlab::testing::random_unitary(rng));
    EXPECT_LE(angle_pair_distance(angle_pair(g), c), 1e-9) << c.a1 << "," << c.a2;
  }
}

TEST(EllipticFromAnglePair, Traces) {
  EXPECT_LE(distance_mod_omega(elliptic_from_angle_pair({0, 0}).matrix(), CMat3::identity()), 1e-15);
  EXPECT_LE(distance_mod_omega(elliptic_from_angle_pair({4 * kPi / 3, 2 * kPi / 3}).trace(), 0.0), 1e-12);
  EXPECT_LE(distance_mod_omega(elliptic_from_angle_pair({3 * kPi / 2, kPi / 2}).trace(), 1.0), 1e-12);
}

TEST(NegativeTypeEigenvalue, Examples) {
  const cplx eta = std::polar(1.0, 2.1);
  const cplx scale = std::pow(eta, -1.0 / 3.0);
  EXPECT_LE(std::abs(negative_type_eigenvalue(SU21Element(scale * CMat3::diag(1.0, eta, 1.0))) - scale), 1e-12);
  EXPECT_LE(std::abs(negative_type_eigenvalue(SU21Element()) - 1.0), 1e-12);
  const SU21Element e = elliptic_from_angle_pair({2.0, 1.0});
  EXPECT_LE(std::abs(negative_type_eigenvalue(e) - e.matrix()(2, 2)), 1e-12);
  EXPECT_THROW(negative_type_eigenvalue(SU21Element(chlab::testing::boost(0.5))), Error);
}

TEST(NegativeTypeEigenvalue, ReflectionProducts) {
  Rng rng(22);
  int checked = 0;
  while (checked < 200) {
    const double p1 = rng.uniform(0.3, kPi / 2), p2 = rng.uniform(0.3, kPi / 2), p3 = rng.uniform(0.3, kPi / 2);
    const AlphaInterval iv = alpha_interval(std::cos(p1), std::cos(p2), std::cos(p3));
    if (iv.empty) continue;
    const double alpha = iv.whole ? rng.angle() : rng.uniform(iv.lo, iv.hi);
    const std::array<double, 3> th{chlab::testing::nonzero_angle(rng), chlab::testing::nonzero_angle(rng),
                                   chlab::testing::nonzero_angle(rng)};
    const auto rt = reflection_triple_from_angles(
        {LineRelation::intersecting(p1), LineRelation::intersecting(p2), LineRelation::intersecting(p3)}, alpha, th);
    const SU21Element a = rt.su(0) * rt.su(1).inverse();
    if (classify(a) != IsometryClass::RegularElliptic) continue;
    EXPECT_LE(distance_mod_omega(negative_type_eigenvalue(a), std::polar(1.0, (th[1] - th[0]) / 3.0)), 1e-9);
    ++checked;
  }
}

TEST(Discriminant, SignMatchesEigenvalueMultiplicity) {
  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    const bool special = i % 5 == 0;
    const double a = rng.angle(), b = special ? a : rng.angle();
    const SU21Element e = chlab::testing::conjugate(chlab::testing::diagonal_elliptic(a, b, 0.0),
                                                    chlab::testing::random_unitary(rng));
    const double f = goldman_discriminant(e.trace());
    EXPECT_LT(f, tol::delta);
    const EigenSystem es = eigen_system(e.matrix());
    const bool distinct = std::abs(es[0].value - es[1].value) > 1e-6 && std::abs(es[1].value - es[2].value) > 1e-6 &&
                          std::abs(es[0].value - es[2].value) > 1e-6;
    if (distinct && std::min({angle_distance(a, b), angle_distance(a, 0.0), angle_distance(b, 0.0)}) > 1e-3) {
      EXPECT_LT(f, -tol::delta);
    }
    if (special) {
      EXPECT_GE(f, -tol::delta);
    }
  }
}

TEST(CharacterPoint, Examples) {
  const CharacterPoint id = character_point(SU21Element(), SU21Element());
  for (cplx t : {id.tr_a, id.tr_b, id.tr_ab, id.tr_ainv_b, id.tr_comm}) EXPECT_LE(std::abs(t - 3.0), 1e-12);
  const CharacterPoint d = character_point(chlab::testing::diagonal_elliptic(1.0, 2.0, 0.0),
                                           chlab::testing::diagonal_elliptic(0.3, -0.7, 0.1));
  EXPECT_LE(std::abs(d.tr_comm - 3.0), 1e-12);
}

TEST(CharacterPoint, MatchesDirectProducts) {
  Rng rng(24);
  for (int i = 0; i < 50; ++i) {
    const SU21Element a = chlab::testing::random_su21(rng), b = chlab::testing::random_su21(rng);
    const CharacterPoint p = character_point(a, b);
    const CMat3 am = a.matrix(), bm = b.matrix(), ai = am.inverse(), bi = bm.inverse();
    const double s = std::max(1.0, am.norm() * bm.norm());
    EXPECT_LE(std::abs(p.tr_ab - (am * bm).trace()), 1e-10 * s);
    EXPECT_LE(std::abs(p.tr_ainv_b - (ai * bm).trace()), 1e-10 * s);
    EXPECT_LE(std::abs(p.tr_comm - (am * bm * ai * bi).trace()), 1e-9 * s * s);
    EXPECT_LE(std::abs(std::conj(p.tr_a) - ai.trace()), 1e-10 * s);
  }
}
