#include "ecp3p/p3p_lt.h"

#include <algorithm>
#include <cmath>

#include "ecp3p/error.h"
#include "ecp3p/roots.h"

namespace ecp3p {

namespace {

// Real roots of x^2 + b x + c, larger magnitude first for b < 0.
bool root2real(double b, double c, double& r1, double& r2) {
  const double v = b * b - 4.0 * c;
  if (v < 0.0) {
    r1 = r2 = -0.5 * b;
    return false;
  }
  const double y = std::sqrt(v);
  if (b < 0.0) {
    r1 = 0.5 * (-b + y);
    r2 = 2.0 * c / (-b + y);
  } else {
    r1 = 2.0 * c / (-b - y);
    r2 = 0.5 * (-b - y);
  }
  return true;
}

// Eigen decomposition of a symmetric 3x3 matrix known to be singular.
// Columns of `vecs` are the eigenvectors for vals[0], vals[1] and 0, with
// |vals[0]| >= |vals[1]|.
void eig_with_known_zero(const Mat3& x, Mat3& vecs, Vec3& vals) {
  Vec3 v3 = x.row(0).transpose().cross(x.row(1).transpose());
  v3.normalize();

  const double x01_sq = x(0, 1) * x(0, 1);
  const double b = -x(0, 0) - x(1, 1) - x(2, 2);
  const double c = -x01_sq - x(0, 2) * x(0, 2) - x(1, 2) * x(1, 2) +
                   x(0, 0) * (x(1, 1) + x(2, 2)) + x(1, 1) * x(2, 2);
  double e1 = 0.0, e2 = 0.0;
  root2real(b, c, e1, e2);
  if (std::abs(e1) < std::abs(e2)) std::swap(e1, e2);
  vals = {e1, e2, 0.0};

  const double mx0011 = -x(0, 0) * x(1, 1);
  const double prec0 = x(0, 1) * x(1, 2) - x(0, 2) * x(1, 1);
  const double prec1 = x(0, 1) * x(0, 2) - x(0, 0) * x(1, 2);
  auto vector_for = [&](double e) {
    const double tmp = 1.0 / (e * (x(0, 0) + x(1, 1)) + mx0011 - e * e + x01_sq);
    const double a1 = -(e * x(0, 2) + prec0) * tmp;
    const double a2 = -(e * x(1, 2) + prec1) * tmp;
    const double rnorm = 1.0 / std::sqrt(a1 * a1 + a2 * a2 + 1.0);
    return Vec3(a1 * rnorm, a2 * rnorm, rnorm);
  };
  vecs.col(0) = vector_for(e1);
  vecs.col(1) = vector_for(e2);
  vecs.col(2) = v3;
}

}  // namespace

std::vector<P3PSolution> solve_lt(const P3PProblem& p) {
  const Vec3& y1 = p.view(0);
  const Vec3& y2 = p.view(1);
  const Vec3& y3 = p.view(2);

  const double b12 = -2.0 * y1.dot(y2);
  const double b13 = -2.0 * y1.dot(y3);
  const double b23 = -2.0 * y2.dot(y3);
  const double a12 = p.side_between(0, 1) * p.side_between(0, 1);
  const double a13 = p.side_between(0, 2) * p.side_between(0, 2);
  const double a23 = p.side_between(1, 2) * p.side_between(1, 2);

  // Cubic whose roots make the conic pencil degenerate.
  const double c31 = -0.5 * b13;
  const double c23 = -0.5 * b23;
  const double c12 = -0.5 * b12;
  const double blob = c12 * c23 * c31 - 1.0;
  const double s31 = 1.0 - c31 * c31;
  const double s23 = 1.0 - c23 * c23;
  const double s12 = 1.0 - c12 * c12;
  const double p3 = a13 * (a23 * s31 - a13 * s23);
  const double p2 = 2.0 * blob * a23 * a13 + a13 * (2.0 * a12 + a13) * s23 + a23 * (a23 - a12) * s31;
  const double p1 = a23 * (a13 - a23) * s12 - a12 * a12 * s23 - 2.0 * a12 * (blob * a23 + a13 * s23);
  const double p0 = a12 * (a12 * s23 - a23 * s12);

  double g = 0.0;
  try {
    g = cubic_one_real_root({p3, p2, p1, p0});
  } catch (const Error& e) {
    throw Error(ErrorCode::kDegenerateCubic, e.what());
  }

  Mat3 a;
  a(0, 0) = a23 * (1.0 - g);
  a(0, 1) = a23 * b12 * 0.5;
  a(0, 2) = a23 * b13 * g * -0.5;
  a(1, 1) = a23 - a12 + a13 * g;
  a(1, 2) = b23 * (a13 * g - a12) * 0.5;
  a(2, 2) = g * (a13 - a23) - a12;
  a(1, 0) = a(0, 1);
  a(2, 0) = a(0, 2);
  a(2, 1) = a(1, 2);

  Mat3 v;
  Vec3 l;
  eig_with_known_zero(a, v, l);
  const double slope = std::sqrt(std::max(0.0, -l(1) / l(0)));

  std::vector<P3PSolution> out;
  auto emit = [&](double l1, double l2, double l3) {
    P3PSolution s;
    s.dist = {l1, l2, l3};
    for (int i = 0; i < 3; ++i) s.points[i] = s.dist[i] * p.view(i).vec();
    const Vec3 n = (s.points[1] - s.points[0]).cross(s.points[2] - s.points[0]);
    if (n.allFinite() && n.norm() > 0.0) {
      s.plane_normal = UnitVec3::normalized(n.dot(s.points[0]) < 0.0 ? Vec3(-n) : n);
      s.lambda = s.plane_normal.dot(s.points[0]);
    }
    out.push_back(s);
  };

  for (double s : {slope, -slope}) {
    const double w2 = 1.0 / (s * v(0, 1) - v(0, 0));
    const double w0 = (v(1, 0) - s * v(1, 1)) * w2;
    const double w1 = (v(2, 0) - s * v(2, 1)) * w2;
    const double aa = 1.0 / ((a13 - a12) * w1 * w1 - a12 * b13 * w1 - a12);
    const double bb = (a13 * b12 * w1 - a12 * b13 * w0 - 2.0 * w0 * w1 * (a12 - a13)) * aa;
    const double cc = ((a13 - a12) * w0 * w0 + a13 * b12 * w0 + a13) * aa;
    double tau1 = 0.0, tau2 = 0.0;
    if (!root2real(bb, cc, tau1, tau2)) continue;
    for (double tau : {tau1, tau2}) {
      if (!(tau > 0.0)) continue;
      const double d = a23 / (tau * (b23 + tau) + 1.0);
      if (!(d > 0.0)) continue;
      const double l2 = std::sqrt(d);
      const double l3 = tau * l2;
      const double l1 = w0 * l2 + w1 * l3;
      if (l1 >= 0.0) emit(l1, l2, l3);
    }
  }
  return out;
}

}  // namespace ecp3p
