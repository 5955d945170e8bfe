#include "ecp3p/quartic_family.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ecp3p/error.h"

namespace ecp3p {

namespace {

constexpr double kCoefficientFloor = 1e-12;
constexpr double kDeltaFloor = 1e-12;
constexpr double kKappaFloor = 1e-12;

}  // namespace

QForm qform_from_proj9(const ProjQuartic9& p9) {
  return {p9.u2v2, p9.u2w2, p9.v2w2, p9.w4, 0.5 * p9.uvw2};
}

JacobiConstants jacobi_constants(const QForm& q) {
  if (std::abs(q.A) < kCoefficientFloor || std::abs(q.B) < kCoefficientFloor ||
      std::abs(q.C) < kCoefficientFloor || std::abs(q.D) < kCoefficientFloor) {
    throw Error(ErrorCode::kZeroCoefficient, "A, B, C and D must be nonzero");
  }
  const double ad = q.A * q.D;
  const double bc = q.B * q.C;
  const double s = ad + bc - q.E * q.E;
  double delta = s * s - 4.0 * ad * bc;
  if (delta < -kDeltaFloor) {
    throw Error(ErrorCode::kNegativeDelta, "delta = " + std::to_string(delta));
  }
  delta = std::max(delta, 0.0);
  JacobiConstants k;
  k.delta = delta;
  k.rho = (s + std::sqrt(delta)) / (-2.0 * q.A * q.B);
  k.kappa2 = q.A * q.B * k.rho * k.rho / (q.C * q.D);
  k.f = -s / (-q.C * q.D);
  k.g = q.A * q.B / (q.C * q.D);
  return k;
}

JacobiPoint jacobi_map(const QForm& q, const JacobiConstants& k, double u, double v) {
  if (k.rho == 0.0) throw Error(ErrorCode::kZeroRho, "rho vanishes");
  const double num = (q.A * u * u + q.C) * v + q.E * u;
  return {u * u / k.rho, num * num / (-q.C * q.D)};
}

double j_invariant(const QForm& q) {
  const JacobiConstants k = jacobi_constants(q);
  if (k.delta == 0.0 || std::abs(k.kappa2) < kKappaFloor ||
      std::abs(k.kappa2 - 1.0) < kKappaFloor) {
    throw Error(ErrorCode::kDegenerateCurve, "kappa^2 = " + std::to_string(k.kappa2));
  }
  const double ad = q.A * q.D, bc = q.B * q.C, e2 = q.E * q.E;
  const double top = ad * ad + bc * bc + e2 * e2 + 14.0 * ad * bc - 2.0 * ad * e2 - 2.0 * bc * e2;
  return 16.0 * top * top * top / (ad * bc * k.delta * k.delta);
}

double j_invariant_from_kappa2(double kappa2) {
  if (std::abs(kappa2) < kKappaFloor || std::abs(kappa2 - 1.0) < kKappaFloor) {
    throw Error(ErrorCode::kDegenerateCurve, "kappa^2 = " + std::to_string(kappa2));
  }
  const double top = kappa2 * kappa2 + 14.0 * kappa2 + 1.0;
  const double gap = 1.0 - kappa2;
  return 16.0 * top * top * top / (kappa2 * gap * gap * gap * gap);
}

int HomogeneousQuartic::monomial_index(int i, int j) {
  // Rows by total degree of U and V: (0,0), (1,0), (0,1), (2,0), ...
  const int d = i + j;
  return d * (d + 1) / 2 + j;
}

double HomogeneousQuartic::operator()(const Vec3& p) const {
  double sum = 0.0;
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; i + j <= 4; ++j) {
      sum += at(i, j) * std::pow(p.x(), i) * std::pow(p.y(), j) * std::pow(p.z(), 4 - i - j);
    }
  }
  return sum;
}

Vec3 HomogeneousQuartic::gradient(const Vec3& p) const {
  Vec3 g = Vec3::Zero();
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; i + j <= 4; ++j) {
      const int k = 4 - i - j;
      const double c = at(i, j);
      if (i > 0) g.x() += c * i * std::pow(p.x(), i - 1) * std::pow(p.y(), j) * std::pow(p.z(), k);
      if (j > 0) g.y() += c * j * std::pow(p.x(), i) * std::pow(p.y(), j - 1) * std::pow(p.z(), k);
      if (k > 0) g.z() += c * k * std::pow(p.x(), i) * std::pow(p.y(), j) * std::pow(p.z(), k - 1);
    }
  }
  return g;
}

HomogeneousQuartic homogenize(const QForm& q) {
  HomogeneousQuartic h;
  h.at(2, 2) = q.A;
  h.at(2, 0) = q.B;
  h.at(0, 2) = q.C;
  h.at(0, 0) = q.D;
  h.at(1, 1) = 2.0 * q.E;
  return h;
}

bool in_q_family(const HomogeneousQuartic& h, QForm* out, double tol) {
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; i + j <= 4; ++j) {
      const bool allowed = (i == 2 && j == 2) || (i == 2 && j == 0) || (i == 0 && j == 2) ||
                           (i == 0 && j == 0) || (i == 1 && j == 1);
      if (!allowed && std::abs(h.at(i, j)) > tol) return false;
    }
  }
  for (const Vec3& p : {Vec3(1.0, 0.0, 0.0), Vec3(0.0, 1.0, 0.0)}) {
    if (std::abs(h(p)) > tol || h.gradient(p).cwiseAbs().maxCoeff() > tol) return false;
  }
  if (out != nullptr) {
    *out = {h.at(2, 2), h.at(2, 0), h.at(0, 2), h.at(0, 0), 0.5 * h.at(1, 1)};
  }
  return true;
}

}  // namespace ecp3p
