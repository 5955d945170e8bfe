#include "ecp3p/geom3.h"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "ecp3p/error.h"

namespace ecp3p {

namespace {

// Below this the axis (u1 - w1) x (u2 - w2) is considered unreliable.
constexpr double kCrossThreshold = 1e-8;
constexpr int kFallbackCandidates = 16;
constexpr std::uint64_t kFallbackSeed = 0x5eed0f3a11bac4d1ULL;

bool all_finite(const Mat3& m) { return m.allFinite(); }

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Euler–Rodrigues matrix from the four symmetric parameters (a, b, c, d),
// a^2 + b^2 + c^2 + d^2 = 1.
Mat3 euler_rodrigues(double a, double b, double c, double d) {
  Mat3 r;
  r << a * a + b * b - c * c - d * d, 2.0 * (b * c - a * d), 2.0 * (b * d + a * c),
      2.0 * (b * c + a * d), a * a + c * c - b * b - d * d, 2.0 * (c * d - a * b),
      2.0 * (b * d - a * c), 2.0 * (c * d + a * b), a * a + d * d - b * b - c * c;
  return r;
}

const std::array<Mat3, kFallbackCandidates>& fallback_rotations() {
  static const std::array<Mat3, kFallbackCandidates> table = [] {
    std::array<Mat3, kFallbackCandidates> out;
    std::uint64_t state = kFallbackSeed;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (auto& m : out) {
      // Uniform unit quaternion (Shoemake).
      const double s = unit_interval(splitmix64(state));
      const double t1 = two_pi * unit_interval(splitmix64(state));
      const double t2 = two_pi * unit_interval(splitmix64(state));
      const double r1 = std::sqrt(1.0 - s);
      const double r2 = std::sqrt(s);
      m = euler_rodrigues(r2 * std::cos(t2), r1 * std::sin(t1), r1 * std::cos(t1),
                          r2 * std::sin(t2));
    }
    return out;
  }();
  return table;
}

// Rotation about the axis along (w1 - u1) x (w2 - u2). `axis` must be that
// cross product, already checked to be long enough.
Mat3 rotation_about_common_axis(const Vec3& u1, const Vec3& u2, const Vec3& w1,
                                const Vec3& w2, const Vec3& axis) {
  const Vec3 k = axis.normalized();
  const Vec3 p1 = u1 - k.dot(u1) * k;
  const Vec3 q1 = w1 - k.dot(w1) * k;
  const Vec3 p2 = u2 - k.dot(u2) * k;
  const Vec3 q2 = w2 - k.dot(w2) * k;
  const double sin_part = k.dot(p1.cross(q1) + p2.cross(q2));
  const double cos_part = p1.dot(q1) + p2.dot(q2);
  const double half = 0.5 * std::atan2(sin_part, cos_part);
  const double s = std::sin(half);
  return euler_rodrigues(std::cos(half), k.x() * s, k.y() * s, k.z() * s);
}

}  // namespace

UnitVec3 UnitVec3::from_unit(const Vec3& v) {
  const double n = v.norm();
  if (!v.allFinite() || std::abs(n - 1.0) > kTolerance) {
    throw Error(ErrorCode::kNotUnit, "vector norm " + std::to_string(n));
  }
  return UnitVec3(v, Trusted{});
}

UnitVec3 UnitVec3::normalized(const Vec3& v) {
  const double n = v.norm();
  if (!v.allFinite() || !(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::kNotUnit, "cannot normalize a zero or non-finite vector");
  }
  return UnitVec3(v / n, Trusted{});
}

Rot3 Rot3::from_matrix(const Mat3& m) {
  if (!all_finite(m)) throw Error(ErrorCode::kNotRotation, "non-finite entries");
  const double ortho = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
  const double det = m.determinant();
  if (ortho > kTolerance || std::abs(det - 1.0) > kTolerance) {
    throw Error(ErrorCode::kNotRotation,
                "orthogonality defect " + std::to_string(ortho) + ", det " + std::to_string(det));
  }
  return Rot3(m, Trusted{});
}

Rot3 Rot3::axis_angle(const UnitVec3& axis, double angle) {
  const double s = std::sin(0.5 * angle);
  return Rot3(euler_rodrigues(std::cos(0.5 * angle), axis.x() * s, axis.y() * s, axis.z() * s),
              Trusted{});
}

UnitVec3 Rot3::operator*(const UnitVec3& v) const { return UnitVec3::normalized(m_ * v.vec()); }

Rot3 Rot3::operator*(const Rot3& other) const { return Rot3(m_ * other.m_, Trusted{}); }

Rot3 Rot3::inverse() const { return Rot3(m_.transpose(), Trusted{}); }

Rot3 rotation_between_pairs(const UnitVec3& u1, const UnitVec3& u2, const UnitVec3& w1,
                            const UnitVec3& w2) {
  const double mismatch = std::abs(u1.dot(u2) - w1.dot(w2));
  if (!(mismatch <= 1e-9)) {
    throw Error(ErrorCode::kAngleMismatch, "pair angles differ by " + std::to_string(mismatch));
  }

  const Vec3 d1 = w1.vec() - u1.vec();
  const Vec3 d2 = w2.vec() - u2.vec();
  if (d1.squaredNorm() == 0.0 && d2.squaredNorm() == 0.0) return Rot3::identity();

  const Vec3 axis = d1.cross(d2);
  if (axis.norm() >= kCrossThreshold) {
    return Rot3::from_matrix(rotation_about_common_axis(u1, u2, w1, w2, axis));
  }

  // Degenerate axis: pre-rotate the source pair so the difference vectors
  // stop being parallel, then compose. Keep the best conditioned candidate.
  const Mat3* best = nullptr;
  Vec3 best_axis = Vec3::Zero();
  for (const Mat3& q : fallback_rotations()) {
    const Vec3 c = (w1.vec() - q * u1.vec()).cross(w2.vec() - q * u2.vec());
    if (c.norm() > best_axis.norm()) {
      best = &q;
      best_axis = c;
    }
  }
  const Mat3& q = *best;
  const Mat3 r = rotation_about_common_axis(q * u1.vec(), q * u2.vec(), w1, w2, best_axis) * q;
  return Rot3::from_matrix(r);
}

Rot3 random_rotation_xy_axis(double angle, double axis_azimuth) {
  const UnitVec3 axis =
      UnitVec3::normalized(Vec3(std::cos(axis_azimuth), std::sin(axis_azimuth), 0.0));
  return Rot3::axis_angle(axis, angle);
}

}  // namespace ecp3p
