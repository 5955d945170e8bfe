#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace ecp3p {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// A direction in R^3. The norm is checked once at construction.
class UnitVec3 {
 public:
  static constexpr double kTolerance = 1e-12;

  UnitVec3() : v_(0.0, 0.0, 1.0) {}

  // Throws kNotUnit unless |‖v‖ - 1| <= kTolerance.
  static UnitVec3 from_unit(const Vec3& v);
  // Throws kNotUnit for zero or non-finite input.
  static UnitVec3 normalized(const Vec3& v);

  static UnitVec3 unit_x() { return UnitVec3(Vec3::UnitX(), Trusted{}); }
  static UnitVec3 unit_y() { return UnitVec3(Vec3::UnitY(), Trusted{}); }
  static UnitVec3 unit_z() { return UnitVec3(Vec3::UnitZ(), Trusted{}); }

  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }  // NOLINT(google-explicit-constructor)

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  double dot(const Vec3& w) const { return v_.dot(w); }

  UnitVec3 operator-() const { return UnitVec3(-v_, Trusted{}); }

 private:
  struct Trusted {};
  UnitVec3(const Vec3& v, Trusted) : v_(v) {}

  Vec3 v_;
};

// Proper rotation: R^T R = I and det R = +1.
class Rot3 {
 public:
  static constexpr double kTolerance = 1e-10;

  Rot3() : m_(Mat3::Identity()) {}

  // Throws kNotRotation if the matrix is not a proper rotation within kTolerance.
  static Rot3 from_matrix(const Mat3& m);
  static Rot3 identity() { return Rot3(); }
  // Euler–Rodrigues construction: rotation by `angle` radians about `axis`.
  static Rot3 axis_angle(const UnitVec3& axis, double angle);

  const Mat3& matrix() const { return m_; }

  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  UnitVec3 operator*(const UnitVec3& v) const;
  Rot3 operator*(const Rot3& other) const;
  Rot3 inverse() const;

 private:
  struct Trusted {};
  Rot3(const Mat3& m, Trusted) : m_(m) {}

  Mat3 m_;
};

// Rotation R with R*u1 = w1 and R*u2 = w2. The pairs must subtend the same
// angle (|u1·u2 - w1·w2| <= 1e-9), otherwise kAngleMismatch is thrown.
//
// The rotation axis is the normalized cross product of (u1 - w1) and
// (u2 - w2). When that cross product is too short to be trusted (normalized
// norm below 1e-8) the inputs are first moved by a fixed pseudo-random
// rotation Q and the result is composed as R' * Q. The sequence of Q
// candidates comes from a constant seed so the output is reproducible.
Rot3 rotation_between_pairs(const UnitVec3& u1, const UnitVec3& u2, const UnitVec3& w1,
                            const UnitVec3& w2);

// Rotation by `angle` radians about the horizontal axis (cos ψ, sin ψ, 0).
Rot3 random_rotation_xy_axis(double angle, double axis_azimuth);

}  // namespace ecp3p
