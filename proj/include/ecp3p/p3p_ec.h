#pragma once

// Perspective-three-point by intersecting the arc-sliding curve with a line.
//
// Index convention: for a vertex k, (i, j) are the other two indices in
// cyclic order, side(k) = |P_i - P_j| is the side opposite vertex k, and
// containment plane k is the plane through the camera and view lines i, j.

#include <array>
#include <vector>

#include "ecp3p/arc_curve.h"
#include "ecp3p/geom3.h"

namespace ecp3p {

class P3PProblem {
 public:
  // Throws kInvalidProblem unless the sides are positive, satisfy the strict
  // triangle inequality with relative margin 1e-9, and no two views satisfy
  // |v_i·v_j| >= 1 - 1e-10.
  static P3PProblem make(const std::array<UnitVec3, 3>& views, const std::array<double, 3>& sides);
  // Views are the normalized points; sides are measured between them.
  static P3PProblem from_points(const std::array<Vec3, 3>& points);

  const UnitVec3& view(int i) const { return views_[i]; }
  const std::array<UnitVec3, 3>& views() const { return views_; }
  double side(int k) const { return sides_[k]; }
  const std::array<double, 3>& sides() const { return sides_; }
  // |P_i - P_j| for i != j.
  double side_between(int i, int j) const { return sides_[3 - i - j]; }

 private:
  P3PProblem(const std::array<UnitVec3, 3>& views, const std::array<double, 3>& sides)
      : views_(views), sides_(sides) {}

  std::array<UnitVec3, 3> views_;
  std::array<double, 3> sides_;
};

struct DerivedGeometry {
  // view_dot[k] = v_i·v_j
  std::array<double, 3> view_dot{};
  // plane_normal[k] = (v_i x v_j) / |v_i x v_j|
  std::array<UnitVec3, 3> plane_normal;
  // normal_dot[k] = plane_normal[i]·plane_normal[j]
  std::array<double, 3> normal_dot{};
  // Interior angle cosine of the control triangle at vertex k.
  std::array<double, 3> corner_cos{};
};

struct P3PSolution {
  std::array<double, 3> dist{};
  std::array<Vec3, 3> points;
  UnitVec3 plane_normal;
  // Distance from the camera to the control-point plane.
  double lambda = 0.0;
  // max - min of the three per-side estimates of lambda, relative to lambda.
  double lambda_spread = 0.0;
};

struct EcOptions {
  double min_frame_param = 1e-6;
  double min_eta = 1e-12;
  double elimination_switch = 1e-10;
  double dedup_tolerance = 1e-9;
  // Candidates whose per-side lambda estimates disagree by more than this
  // (relative) are dropped.
  double max_lambda_spread = 1e-2;
};

struct VerticalFrame {
  // The view line made vertical, and the views whose containment planes with
  // it carry the first and second sliding circle.
  int k = 0, i = 1, j = 2;
  Rot3 rotation;
  CurveParams params = CurveParams::make(0.6, 0.8, 0.5, 0.5);
  double score = 0.0;
  std::array<double, 3> candidate_score{};
  std::array<bool, 3> viable{};
};

struct PlaneTranslation {
  double lambda = 0.0;
  std::array<double, 3> dist{};
  double spread = 0.0;
};

// Throws kDegenerateViewLines if any |v_i x v_j| < 1e-10.
DerivedGeometry derive_geometry(const P3PProblem& p);

// Throws kNoViableFrame when every candidate is rejected.
VerticalFrame choose_vertical_frame(const P3PProblem& p, const DerivedGeometry& g,
                                    const EcOptions& opts = {});

// lambda from each side constraint, averaged; distances lambda / (v_i·n).
// Throws kBackfacingPlane when some v_i·n < 1e-10.
PlaneTranslation plane_translation(const UnitVec3& n, const P3PProblem& p);

// Up to four solutions, empty when the intersection has no real points.
// Throws kNoViableFrame (and other Error codes from degenerate input).
std::vector<P3PSolution> solve_ec(const P3PProblem& p, const EcOptions& opts = {});

}  // namespace ecp3p
