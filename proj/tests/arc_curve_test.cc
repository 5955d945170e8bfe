#include "ecp3p/arc_curve.h"

#include <gtest/gtest.h>

#include "ecp3p/error.h"
#include "suites.h"

namespace ecp3p {
namespace {

using test::Configuration;
using test::kDeg;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidConfig;
}

TEST(CurveParams, DerivedQuantities) {
  const CurveParams p = CurveParams::from_half_angle(0.3, 0.7, 0.4);
  const double m = std::cos(0.3), n = std::sin(0.3);
  const double d = 0.49 - 0.16;
  EXPECT_NEAR(p.eta(), 1 - 4 * d * d * m * m * n * n, 1e-15);
  EXPECT_NEAR(p.beta(), 0.65 - d * d, 1e-15);
}

TEST(CurveParams, Validation) {
  EXPECT_EQ(code_of([] { CurveParams::make(0.6, 0.81, 0.5, 0.5); }), ErrorCode::kInvalidCurveParams);
  EXPECT_EQ(code_of([] { CurveParams::make(1.0, 0.0, 0.5, 0.5); }), ErrorCode::kInvalidCurveParams);
  EXPECT_EQ(code_of([] { CurveParams::make(0.6, 0.8, NAN, 0.5); }), ErrorCode::kInvalidCurveParams);
}

TEST(SphereResidual, ConstructedConfiguration) {
  const Configuration c = Configuration::build(40 * kDeg, 70 * kDeg, 55 * kDeg, 0.6);
  EXPECT_LE(std::abs(sphere_residual(c.params(), UnitVec3::normalized(c.a))), 1e-12);
}

TEST(SphereResidual, NorthPoleGivesConstantTerm) {
  const CurveParams p = CurveParams::from_half_angle(0.5, 0.2, 0.3);
  const double m2 = p.mu0() * p.mu0(), n2 = p.nu0() * p.nu0();
  const double expected = -4.0 * (1 - 0.25) * (1 - 0.01) * m2 * m2 * n2 * n2;
  EXPECT_NEAR(sphere_residual(p, UnitVec3::unit_z()), expected, 1e-15);
  EXPECT_NE(expected, 0.0);
}

TEST(SphereResidual, EqualAlphasMatchReducedForm) {
  test::Rng rng(31);
  const double a = 0.45;
  const CurveParams p = CurveParams::from_half_angle(0.6, a, a);
  const double m2 = p.mu0() * p.mu0(), n2 = p.nu0() * p.nu0();
  for (int t = 0; t < 100; ++t) {
    const Vec3 v = rng.unit();
    const double x2 = v.x() * v.x(), y2 = v.y() * v.y(), z2 = v.z() * v.z();
    const double reduced = x2 * y2 + (1 - 4 * a * a * m2) * n2 * x2 * z2 + (1 - 4 * a * a * n2) * m2 * y2 * z2 +
                           (1 - 4 * a * a) * m2 * n2 * z2 * z2;
    // On the unit sphere the spherical form equals -4 mu0^2 nu0^2 times the projective one.
    EXPECT_NEAR(sphere_residual(p, UnitVec3::from_unit(v)), -4.0 * m2 * n2 * reduced, 1e-12);
  }
}

TEST(SphereResidual, Symmetries) {
  test::Rng rng(32);
  for (int t = 0; t < 200; ++t) {
    const Configuration c = test::random_configuration(rng);
    const CurveParams p = c.params();
    const Vec3 v = rng.unit();
    const double r = sphere_residual(p, UnitVec3::from_unit(v));
    EXPECT_EQ(r, sphere_residual(p, UnitVec3::from_unit(-v)));
    EXPECT_EQ(r, sphere_residual(p, UnitVec3::from_unit(Vec3(v.x(), v.y(), -v.z()))));
  }
}

TEST(ProjQuartic6, AgreesWithSphereOnCurve) {
  test::Rng rng(33);
  for (int t = 0; t < 500; ++t) {
    const Configuration c = test::random_configuration(rng);
    EXPECT_LE(std::abs(proj_quartic6(c.params())(c.a)), 1e-12);
  }
}

TEST(ProjQuartic6, Homogeneous) {
  test::Rng rng(34);
  const ProjQuartic6 q = proj_quartic6(CurveParams::from_half_angle(0.4, 0.3, 0.8));
  const Vec3 v(rng.normal(), rng.normal(), rng.normal());
  EXPECT_NEAR(q(2.0 * v), 16.0 * q(v), 1e-12 * std::abs(q(v)) + 1e-14);
}

TEST(ProjQuartic6, EqualAlphasReducedCoefficients) {
  const double a = 0.35;
  const CurveParams p = CurveParams::from_half_angle(0.7, a, a);
  const double m2 = p.mu0() * p.mu0(), n2 = p.nu0() * p.nu0();
  const ProjQuartic6 q = proj_quartic6(p);
  EXPECT_EQ(q.xy_r2, 0.0);
  EXPECT_EQ(q.x4y4, 0.0);
  EXPECT_NEAR(q.x2y2, 1.0, 1e-15);
  EXPECT_NEAR(q.x2z2, (1 - 4 * a * a * m2) * n2, 1e-15);
  EXPECT_NEAR(q.y2z2, (1 - 4 * a * a * n2) * m2, 1e-15);
  EXPECT_NEAR(q.z4, (1 - 4 * a * a) * m2 * n2, 1e-15);
}

TEST(ProjQuartic6, GradientMatchesFiniteDifference) {
  test::Rng rng(35);
  const ProjQuartic6 q = proj_quartic6(CurveParams::from_half_angle(0.4, 0.3, 0.8));
  const Vec3 v(rng.normal(), rng.normal(), rng.normal());
  const double h = 1e-6;
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = h;
    EXPECT_NEAR(q.gradient(v)[k], (q(v + e) - q(v - e)) / (2 * h), 1e-6);
  }
}

TEST(NuRecovery, ConstructedConfiguration) {
  const Configuration c = Configuration::build(40 * kDeg, 70 * kDeg, 55 * kDeg, 0.6);
  const auto [nu1, nu2] = nu_recovery(c.params(), UnitVec3::normalized(c.a));
  EXPECT_NEAR(nu1, std::sin(c.phi1), 1e-12);
  EXPECT_NEAR(nu2, std::sin(c.phi2), 1e-12);
}

TEST(NuRecovery, PoleAndDegenerate) {
  const auto [nu1, nu2] = nu_recovery(CurveParams::from_half_angle(0.5, 0.3, 0.4), UnitVec3::unit_z());
  EXPECT_EQ(nu1, 0.0);
  EXPECT_EQ(nu2, 0.0);
  EXPECT_EQ(code_of([] { nu_recovery(CurveParams::from_half_angle(0.5, 0.0, 0.4), UnitVec3::unit_z()); }),
            ErrorCode::kDegenerateParams);
}

TEST(MuRecovery, ConstructedConfiguration) {
  const Configuration c = Configuration::build(40 * kDeg, 70 * kDeg, 55 * kDeg, 0.6);
  const SlidingState s = mu_recovery(c.params(), UnitVec3::normalized(c.a));
  EXPECT_NEAR(s.mu1, std::cos(c.phi1), 1e-10);
  EXPECT_NEAR(s.mu2, std::cos(c.phi2), 1e-10);
  EXPECT_NEAR(s.mu1 * s.mu1 + s.nu1 * s.nu1, 1.0, 1e-10);
  EXPECT_NEAR(s.mu2 * s.mu2 + s.nu2 * s.nu2, 1.0, 1e-10);
  EXPECT_LE((s.anchor1(c.params()) - c.a1).norm(), 1e-10);
  EXPECT_LE((s.anchor2(c.params()) - c.a2).norm(), 1e-10);
}

TEST(MuRecovery, EquatorPoint) {
  EXPECT_EQ(code_of([] { mu_recovery(CurveParams::from_half_angle(0.5, 0.3, 0.4), UnitVec3::unit_x()); }),
            ErrorCode::kEquatorPoint);
}

TEST(MuRecovery, Antipode) {
  test::Rng rng(36);
  for (int t = 0; t < 200; ++t) {
    const Configuration c = test::random_configuration(rng);
    const SlidingState s = mu_recovery(c.params(), UnitVec3::normalized(-c.a));
    // -a = alpha1 (-a1) + alpha2 (-a2): both anchors flip.
    EXPECT_LE((s.anchor1(c.params()) + c.a1).norm(), 1e-10);
    EXPECT_LE((s.anchor2(c.params()) + c.a2).norm(), 1e-10);
  }
}

TEST(MuRecovery, ConsistencyRelation) {
  test::Rng rng(37);
  for (int t = 0; t < 500; ++t) {
    const Configuration c = test::random_configuration(rng);
    const CurveParams p = c.params();
    const double m2 = p.mu0() * p.mu0(), n2 = p.nu0() * p.nu0();
    const double lhs = 2 * m2 * n2 *
                       (1 - c.alpha1 * c.alpha1 - c.alpha2 * c.alpha2 -
                        2 * c.alpha1 * c.alpha2 * std::cos(c.phi1) * std::cos(c.phi2));
    const double rhs = (m2 - n2) * (n2 * c.a.x() * c.a.x() - m2 * c.a.y() * c.a.y());
    EXPECT_NEAR(lhs, rhs, 1e-11);
  }
}

TEST(AlphasFromDots, Examples) {
  const Alphas a = alphas_from_dots(0.3, 1.0, 0.3);
  EXPECT_NEAR(a.alpha1, 1.0, 1e-15);
  EXPECT_NEAR(a.alpha2, 0.0, 1e-15);
  const Alphas b = alphas_from_dots(0.3, 0.5, 0.5);
  EXPECT_NEAR(b.alpha1, 0.5 / 1.3, 1e-15);
  EXPECT_NEAR(b.alpha2, 0.5 / 1.3, 1e-15);
  EXPECT_EQ(code_of([] { alphas_from_dots(1.0, 0.5, 0.5); }), ErrorCode::kParallelAnchors);
}

TEST(AlphasFromDots, ForwardConstruction) {
  test::Rng rng(38);
  for (int t = 0; t < 1000; ++t) {
    const Vec3 a1 = rng.unit(), a2 = rng.unit();
    if (std::abs(a1.dot(a2)) > 0.99) continue;
    const double x1 = rng.uniform(-2, 2), x2 = rng.uniform(-2, 2);
    const Vec3 a = x1 * a1 + x2 * a2;
    const Alphas got = alphas_from_dots(a1.dot(a2), a1.dot(a), a2.dot(a));
    EXPECT_NEAR(got.alpha1, x1, 1e-12 * 100);
    EXPECT_NEAR(got.alpha2, x2, 1e-12 * 100);
  }
}

TEST(Singularities, VanishWithGradient) {
  test::Rng rng(39);
  for (int t = 0; t < 100; ++t) {
    const CurveParams p = test::random_configuration(rng).params();
    const ProjQuartic6 q = proj_quartic6(p);
    const auto s = singularities(p);
    for (const Vec3& v : s) {
      EXPECT_EQ(v.z(), 0.0);
      EXPECT_LE(std::abs(q(v.normalized())), 1e-12);
      EXPECT_LE(q.gradient(v.normalized()).norm(), 1e-10);
    }
    // Cosine of the angle between the two points.
    EXPECT_NEAR(std::abs(s[0].normalized().dot(s[1].normalized())), std::abs(p.skew()), 1e-12);
  }
}

TEST(Singularities, Gates) {
  // eta < 0 needs (alpha1^2 - alpha2^2)^2 mu0^2 nu0^2 > 1/4.
  EXPECT_EQ(code_of([] { singularities(CurveParams::from_half_angle(0.78, 2.0, 0.5)); }),
            ErrorCode::kComplexSingularities);
  EXPECT_EQ(code_of([] { singularities(CurveParams::from_half_angle(0.5, 0.4, -0.4)); }),
            ErrorCode::kCoincidentSingularities);
}

TEST(Deformation, ColumnsAndImages) {
  test::Rng rng(40);
  for (int t = 0; t < 100; ++t) {
    const CurveParams p = test::random_configuration(rng).params();
    const Deformation d = deformation(p);
    const auto s = singularities(p);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(d.m.col(k).norm(), 1.0, 1e-12);
    EXPECT_LE(d.m.col(0).cross(s[0].normalized()).norm(), 1e-12);
    EXPECT_LE(d.m.col(1).cross(s[1].normalized()).norm(), 1e-12);
    EXPECT_LE(d.m.col(2).cross(Vec3::UnitZ()).norm(), 1e-15);
    EXPECT_GE(std::abs(d.m.determinant()), 1e-8);
    EXPECT_LE((d.m * d.m_inv - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(ProjQuartic9, PullbackAndSupport) {
  test::Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    const Configuration c = test::random_configuration(rng);
    const CurveParams p = c.params();
    const Deformation d = deformation(p);
    const ProjQuartic9 q9 = proj_quartic9(p, d);
    EXPECT_LE(std::abs(q9(d.m_inv * c.a)), 1e-10);
    EXPECT_EQ(q9(Vec3(1, 0, 0)), 0.0);
    EXPECT_EQ(q9(Vec3(0, 1, 0)), 0.0);
    // Closed form equals the pull-back of the projective curve divided by nu0^2.
    const ProjQuartic6 q6 = proj_quartic6(p);
    const Vec3 w(rng.normal(), rng.normal(), rng.normal());
    const double pulled = q6(d.m * w) / (p.nu0() * p.nu0());
    EXPECT_NEAR(q9(w), pulled, 1e-11 * std::max(1.0, std::abs(pulled)) * w.squaredNorm() * w.squaredNorm());
  }
}

TEST(ProjQuartic9, NearDegenerateEta) {
  // alpha2 chosen so that eta = 1e-6.
  const double m = std::cos(0.6), n = std::sin(0.6);
  const double a1 = 0.3;
  const double diff = std::sqrt((1 - 1e-6) / (4 * m * m * n * n));
  const CurveParams p = CurveParams::make(m, n, a1, std::sqrt(a1 * a1 + diff));
  EXPECT_NEAR(p.eta(), 1e-6, 1e-12);
  const ProjQuartic9 q9 = proj_quartic9(p, deformation(p));
  EXPECT_LE(std::abs(q9.u2v2), 1e-10);
}

TEST(CurveSuite, RandomParams) {
  const test::CurveSuiteResult r = test::run_curve_suite(1000, 42);
  EXPECT_LE(r.sphere_residual, 1e-12);
  EXPECT_LE(r.singular_value, 1e-12);
  EXPECT_LE(r.singular_gradient, 1e-10);
  EXPECT_LE(r.pullback_residual, 1e-10);
  EXPECT_LE(r.round_trip, 1e-10);
}

}  // namespace
}  // namespace ecp3p
