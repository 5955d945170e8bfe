#pragma once

// Algebra of the arc-sliding problem.
//
// Two unit vectors a1, a2 slide along the great circles theta = -theta0 and
// theta = +theta0 (both through the poles) keeping a1·a2 fixed. The point
// a = alpha1 a1 + alpha2 a2 on the moving great circle traces a quartic curve
// on the unit sphere. This header evaluates that curve, its projective form,
// the two real double points on the equator, and the projective deformation
// that sends those double points to (1:0:0) and (0:1:0).

#include <array>
#include <utility>

#include "ecp3p/geom3.h"

namespace ecp3p {

// (mu0, nu0) = (cos theta0, sin theta0); eta and beta are derived.
class CurveParams {
 public:
  // Throws kInvalidCurveParams unless mu0^2 + nu0^2 = 1 within 1e-12 and
  // both lie strictly inside (0, 1), or if an alpha is not finite.
  static CurveParams make(double mu0, double nu0, double alpha1, double alpha2);
  // Half-angle theta0 in (0, pi/2).
  static CurveParams from_half_angle(double theta0, double alpha1, double alpha2);

  double mu0() const { return mu0_; }
  double nu0() const { return nu0_; }
  double alpha1() const { return alpha1_; }
  double alpha2() const { return alpha2_; }
  // eta = 1 - 4 (alpha1^2 - alpha2^2)^2 mu0^2 nu0^2
  double eta() const { return eta_; }
  // beta = alpha1^2 + alpha2^2 - (alpha1^2 - alpha2^2)^2
  double beta() const { return beta_; }
  // 2 (alpha2^2 - alpha1^2) mu0 nu0: the Y coordinate shared by both singular points.
  double skew() const { return 2.0 * (alpha2_ * alpha2_ - alpha1_ * alpha1_) * mu0_ * nu0_; }

 private:
  CurveParams(double mu0, double nu0, double alpha1, double alpha2);

  double mu0_, nu0_, alpha1_, alpha2_, eta_, beta_;
};

// cos/sin of the polar angles of the two sliding endpoints.
struct SlidingState {
  double mu1 = 0.0, nu1 = 0.0, mu2 = 0.0, nu2 = 0.0;

  // a1 = (mu0 nu1, -nu0 nu1, mu1) on the theta = -theta0 circle.
  Vec3 anchor1(const CurveParams& p) const { return {p.mu0() * nu1, -p.nu0() * nu1, mu1}; }
  // a2 = (mu0 nu2, nu0 nu2, mu2) on the theta = +theta0 circle.
  Vec3 anchor2(const CurveParams& p) const { return {p.mu0() * nu2, p.nu0() * nu2, mu2}; }
};

// Homogeneous quartic in (X, Y, Z):
//   x4y4 (X^4 + Y^4) + x2y2 X^2Y^2 + x2z2 X^2Z^2 + y2z2 Y^2Z^2
//   + xy_r2 XY(X^2 + Y^2 + Z^2) + z4 Z^4
struct ProjQuartic6 {
  double x4y4 = 0.0, x2y2 = 0.0, x2z2 = 0.0, y2z2 = 0.0, xy_r2 = 0.0, z4 = 0.0;

  double operator()(const Vec3& p) const;
  Vec3 gradient(const Vec3& p) const;
};

// Homogeneous quartic in (U, V, W):
//   u2v2 U^2V^2 + u2w2 U^2W^2 + v2w2 V^2W^2 + uvw2 UVW^2 + w4 W^4
struct ProjQuartic9 {
  double u2v2 = 0.0, u2w2 = 0.0, v2w2 = 0.0, uvw2 = 0.0, w4 = 0.0;

  double operator()(const Vec3& p) const;
  Vec3 gradient(const Vec3& p) const;
};

// (X, Y, Z)^T = m (U, V, W)^T. Columns of m are lambda-scaled images of the
// standard basis: the two singular points and the Z axis.
struct Deformation {
  Mat3 m = Mat3::Identity();
  Mat3 m_inv = Mat3::Identity();
  double lambda1 = 1.0, lambda2 = 1.0, lambda3 = 1.0;
};

struct Alphas {
  double alpha1 = 0.0, alpha2 = 0.0;
};

// Left side of the spherical quartic at a point of the unit sphere. Zero iff
// the point lies on the sliding curve.
double sphere_residual(const CurveParams& p, const UnitVec3& point);

ProjQuartic6 proj_quartic6(const CurveParams& p);

// nu1, nu2 from the linear part of the sliding system. Throws
// kDegenerateParams when 2 alpha_i mu0 nu0 is below 1e-12 in magnitude.
std::pair<double, double> nu_recovery(const CurveParams& p, const UnitVec3& point);

// Full sliding state of the point: nu1, nu2 as above, and mu1, mu2 from the
// rational tau formulas. Throws kEquatorPoint when |z| < 1e-10.
SlidingState mu_recovery(const CurveParams& p, const UnitVec3& point);

// Coefficients of a = alpha1 a1 + alpha2 a2 from q12 = a1·a2, q1a = a1·a,
// q2a = a2·a. Throws kParallelAnchors when 1 - q12^2 < 1e-12.
Alphas alphas_from_dots(double q12, double q1a, double q2a);

// The two real singular points of the projective curve, on Z = 0:
//   [0] = (1 - sqrt(eta), skew, 0),  [1] = (1 + sqrt(eta), skew, 0).
// Throws kComplexSingularities when eta < 1e-12 and
// kCoincidentSingularities when ||alpha1| - |alpha2|| < 1e-10.
std::array<Vec3, 2> singularities(const CurveParams& p);

// Deformation with every column scaled to unit length (lambda3 = 1).
Deformation deformation(const CurveParams& p);
// Deformation with explicit lambdas (all nonzero).
Deformation deformation(const CurveParams& p, double lambda1, double lambda2, double lambda3);

// Image of the projective curve under the deformation, coefficients in the
// closed form. This is the pull-back of proj_quartic6 through d.m divided by
// nu0^2, so both share their zero set.
ProjQuartic9 proj_quartic9(const CurveParams& p, const Deformation& d);

}  // namespace ecp3p
