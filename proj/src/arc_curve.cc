#include "ecp3p/arc_curve.h"

#include <cmath>
#include <string>

#include "ecp3p/error.h"

namespace ecp3p {

namespace {

constexpr double kUnitTolerance = 1e-12;
constexpr double kDenominatorFloor = 1e-12;
constexpr double kEquatorFloor = 1e-10;
constexpr double kEtaFloor = 1e-12;
constexpr double kCoincidenceFloor = 1e-10;

double sq(double v) { return v * v; }

// [1 - (alpha1 + alpha2)^2] [1 - (alpha1 - alpha2)^2]
double pole_factor(const CurveParams& p) {
  return (1.0 - sq(p.alpha1() + p.alpha2())) * (1.0 - sq(p.alpha1() - p.alpha2()));
}

}  // namespace

CurveParams::CurveParams(double mu0, double nu0, double alpha1, double alpha2)
    : mu0_(mu0), nu0_(nu0), alpha1_(alpha1), alpha2_(alpha2) {
  const double diff = alpha1 * alpha1 - alpha2 * alpha2;
  eta_ = 1.0 - 4.0 * diff * diff * mu0 * mu0 * nu0 * nu0;
  beta_ = alpha1 * alpha1 + alpha2 * alpha2 - diff * diff;
}

CurveParams CurveParams::make(double mu0, double nu0, double alpha1, double alpha2) {
  if (!(mu0 > 0.0 && mu0 < 1.0 && nu0 > 0.0 && nu0 < 1.0)) {
    throw Error(ErrorCode::kInvalidCurveParams, "mu0 and nu0 must lie in (0, 1)");
  }
  if (std::abs(mu0 * mu0 + nu0 * nu0 - 1.0) > kUnitTolerance) {
    throw Error(ErrorCode::kInvalidCurveParams, "mu0^2 + nu0^2 must equal 1");
  }
  if (!std::isfinite(alpha1) || !std::isfinite(alpha2)) {
    throw Error(ErrorCode::kInvalidCurveParams, "non-finite alpha");
  }
  return CurveParams(mu0, nu0, alpha1, alpha2);
}

CurveParams CurveParams::from_half_angle(double theta0, double alpha1, double alpha2) {
  return make(std::cos(theta0), std::sin(theta0), alpha1, alpha2);
}

double ProjQuartic6::operator()(const Vec3& p) const {
  const double x2 = p.x() * p.x(), y2 = p.y() * p.y(), z2 = p.z() * p.z();
  return x4y4 * (x2 * x2 + y2 * y2) + x2y2 * x2 * y2 + x2z2 * x2 * z2 + y2z2 * y2 * z2 +
         xy_r2 * p.x() * p.y() * (x2 + y2 + z2) + z4 * z2 * z2;
}

Vec3 ProjQuartic6::gradient(const Vec3& p) const {
  const double x = p.x(), y = p.y(), z = p.z();
  const double r2 = x * x + y * y + z * z;
  return {4.0 * x4y4 * x * x * x + 2.0 * x2y2 * x * y * y + 2.0 * x2z2 * x * z * z +
              xy_r2 * (y * r2 + 2.0 * x * x * y),
          4.0 * x4y4 * y * y * y + 2.0 * x2y2 * x * x * y + 2.0 * y2z2 * y * z * z +
              xy_r2 * (x * r2 + 2.0 * x * y * y),
          2.0 * x2z2 * x * x * z + 2.0 * y2z2 * y * y * z + 2.0 * xy_r2 * x * y * z +
              4.0 * z4 * z * z * z};
}

double ProjQuartic9::operator()(const Vec3& p) const {
  const double u = p.x(), v = p.y(), w = p.z();
  const double w2 = w * w;
  return u2v2 * u * u * v * v + u2w2 * u * u * w2 + v2w2 * v * v * w2 + uvw2 * u * v * w2 +
         w4 * w2 * w2;
}

Vec3 ProjQuartic9::gradient(const Vec3& p) const {
  const double u = p.x(), v = p.y(), w = p.z();
  const double w2 = w * w;
  return {2.0 * u2v2 * u * v * v + 2.0 * u2w2 * u * w2 + uvw2 * v * w2,
          2.0 * u2v2 * u * u * v + 2.0 * v2w2 * v * w2 + uvw2 * u * w2,
          2.0 * u2w2 * u * u * w + 2.0 * v2w2 * v * v * w + 2.0 * uvw2 * u * v * w +
              4.0 * w4 * w2 * w};
}

double sphere_residual(const CurveParams& p, const UnitVec3& point) {
  const double m2 = sq(p.mu0()), n2 = sq(p.nu0());
  const double a1s = sq(p.alpha1()), a2s = sq(p.alpha2());
  const double x = point.x(), y = point.y();
  const double tilt = n2 * x * x - m2 * y * y;
  const double spread = n2 * x * x + m2 * y * y;
  const double cos2 = m2 - n2;
  const double mn2 = m2 * n2;
  return (1.0 - cos2 * cos2) * tilt * tilt + 4.0 * (1.0 - a1s - a2s) * mn2 * cos2 * tilt -
         4.0 * (a1s + a2s) * mn2 * spread +
         8.0 * (a2s - a1s) * mn2 * p.mu0() * p.nu0() * x * y - 4.0 * pole_factor(p) * mn2 * mn2;
}

ProjQuartic6 proj_quartic6(const CurveParams& p) {
  const double m2 = sq(p.mu0()), n2 = sq(p.nu0());
  const double diff = sq(p.alpha1()) - sq(p.alpha2());
  const double d2mn = diff * diff * m2 * n2;
  ProjQuartic6 q;
  q.x4y4 = d2mn;
  q.x2y2 = 1.0 + 2.0 * d2mn;
  q.x2z2 = (1.0 - 2.0 * p.beta() * m2) * n2;
  q.y2z2 = (1.0 - 2.0 * p.beta() * n2) * m2;
  q.xy_r2 = 2.0 * diff * p.mu0() * p.nu0();
  q.z4 = pole_factor(p) * m2 * n2;
  return q;
}

std::pair<double, double> nu_recovery(const CurveParams& p, const UnitVec3& point) {
  const double den1 = 2.0 * p.alpha1() * p.mu0() * p.nu0();
  const double den2 = 2.0 * p.alpha2() * p.mu0() * p.nu0();
  if (std::abs(den1) < kDenominatorFloor || std::abs(den2) < kDenominatorFloor) {
    throw Error(ErrorCode::kDegenerateParams, "alpha_i mu0 nu0 vanishes");
  }
  const double nx = p.nu0() * point.x();
  const double my = p.mu0() * point.y();
  return {(nx - my) / den1, (nx + my) / den2};
}

SlidingState mu_recovery(const CurveParams& p, const UnitVec3& point) {
  const auto [nu1, nu2] = nu_recovery(p, point);
  const double z = point.z();
  if (std::abs(z) < kEquatorFloor) {
    throw Error(ErrorCode::kEquatorPoint, "z = " + std::to_string(z));
  }
  const double m2 = sq(p.mu0()), n2 = sq(p.nu0());
  const double x = point.x(), y = point.y();
  const double a1s = sq(p.alpha1()), a2s = sq(p.alpha2());
  const double common = (n2 - m2 - 1.0) * n2 * x * x + (m2 - n2 - 1.0) * m2 * y * y;
  const double cross = 2.0 * p.mu0() * p.nu0() * x * y;
  const double tau_plus = common + cross + 2.0 * (1.0 + a1s - a2s) * m2 * n2;
  const double tau_minus = common - cross + 2.0 * (1.0 - a1s + a2s) * m2 * n2;
  const double den = 4.0 * m2 * n2 * z;
  return {tau_plus / (p.alpha1() * den), nu1, tau_minus / (p.alpha2() * den), nu2};
}

Alphas alphas_from_dots(double q12, double q1a, double q2a) {
  const double den = 1.0 - q12 * q12;
  if (!(den >= 1e-12)) {
    throw Error(ErrorCode::kParallelAnchors, "1 - q12^2 = " + std::to_string(den));
  }
  return {(q1a - q12 * q2a) / den, (q2a - q12 * q1a) / den};
}

std::array<Vec3, 2> singularities(const CurveParams& p) {
  if (!(p.eta() >= kEtaFloor)) {
    throw Error(ErrorCode::kComplexSingularities, "eta = " + std::to_string(p.eta()));
  }
  if (std::abs(std::abs(p.alpha1()) - std::abs(p.alpha2())) < kCoincidenceFloor) {
    throw Error(ErrorCode::kCoincidentSingularities, "|alpha1| == |alpha2|");
  }
  const double root = std::sqrt(p.eta());
  const double k = p.skew();
  // 1 - sqrt(eta) = k^2 / (1 + sqrt(eta)) since 1 - eta = k^2.
  return {Vec3(k * k / (1.0 + root), k, 0.0), Vec3(1.0 + root, k, 0.0)};
}

Deformation deformation(const CurveParams& p) {
  const auto s = singularities(p);
  return deformation(p, 1.0 / s[0].norm(), 1.0 / s[1].norm(), 1.0);
}

Deformation deformation(const CurveParams& p, double lambda1, double lambda2, double lambda3) {
  const auto s = singularities(p);
  if (lambda1 == 0.0 || lambda2 == 0.0 || lambda3 == 0.0) {
    throw Error(ErrorCode::kDegenerateParams, "deformation scale must be nonzero");
  }
  Deformation d;
  d.lambda1 = lambda1;
  d.lambda2 = lambda2;
  d.lambda3 = lambda3;
  const Vec3 c1 = lambda1 * s[0];
  const Vec3 c2 = lambda2 * s[1];
  d.m << c1.x(), c2.x(), 0.0, c1.y(), c2.y(), 0.0, 0.0, 0.0, lambda3;
  const double det2 = c1.x() * c2.y() - c2.x() * c1.y();
  d.m_inv << c2.y() / det2, -c2.x() / det2, 0.0, -c1.y() / det2, c1.x() / det2, 0.0, 0.0, 0.0,
      1.0 / lambda3;
  return d;
}

ProjQuartic9 proj_quartic9(const CurveParams& p, const Deformation& d) {
  const double m2 = sq(p.mu0()), n2 = sq(p.nu0());
  const double a1s = sq(p.alpha1()), a2s = sq(p.alpha2());
  const double diff2 = sq(a1s - a2s);
  const double eta = p.eta();
  const double root = std::sqrt(eta);
  const double l1 = d.lambda1, l2 = d.lambda2, l3 = d.lambda3;
  const double base = eta - 2.0 * p.beta() * m2;
  const double tilt = (1.0 - 2.0 * (a1s + a2s) * m2) * root;
  ProjQuartic9 q;
  q.u2v2 = 16.0 * diff2 * m2 * eta * eta * sq(l1 * l2);
  q.u2w2 = 2.0 * (base - tilt) * sq(l1 * l3);
  q.v2w2 = 2.0 * (base + tilt) * sq(l2 * l3);
  q.uvw2 = -32.0 * diff2 * p.beta() * m2 * m2 * n2 * l1 * l2 * l3 * l3;
  q.w4 = pole_factor(p) * m2 * sq(l3 * l3);
  return q;
}

}  // namespace ecp3p
