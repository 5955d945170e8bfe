#include "ecp3p/p3p_ec.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ecp3p/error.h"
#include "ecp3p/roots.h"

namespace ecp3p {

namespace {

constexpr double kTriangleMargin = 1e-9;
constexpr double kParallelMargin = 1e-10;
constexpr double kCrossFloor = 1e-10;
constexpr double kEquatorFloor = 1e-10;
constexpr double kFrontFloor = 1e-10;

// Image line l·(U, V, 1) = 0 of the ignored containment plane, with the
// variable `y` eliminated. x2 and y2 are the coefficients of x^2 W^2 and
// y^2 W^2, lx and ly the line coefficients of x and y.
Quartic eliminate(const ProjQuartic9& q, double x2, double y2, double lx, double ly, double l3) {
  const double a = q.u2v2;
  return {a * lx * lx, 2.0 * a * lx * l3, a * l3 * l3 + x2 * ly * ly + y2 * lx * lx - q.uvw2 * ly * lx,
          2.0 * y2 * lx * l3 - q.uvw2 * ly * l3, y2 * l3 * l3 + q.w4 * ly * ly};
}

bool same_triple(const std::array<double, 3>& a, const std::array<double, 3>& b, double tol) {
  const double scale = std::max({a[0], a[1], a[2], b[0], b[1], b[2]});
  for (int i = 0; i < 3; ++i) {
    if (std::abs(a[i] - b[i]) > tol * scale) return false;
  }
  return true;
}

}  // namespace

P3PProblem P3PProblem::make(const std::array<UnitVec3, 3>& views,
                            const std::array<double, 3>& sides) {
  for (double s : sides) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidProblem, "side lengths must be positive and finite");
    }
  }
  const double perimeter = sides[0] + sides[1] + sides[2];
  for (int k = 0; k < 3; ++k) {
    if (perimeter - 2.0 * sides[k] <= kTriangleMargin * perimeter) {
      throw Error(ErrorCode::kInvalidProblem, "sides violate the triangle inequality");
    }
  }
  for (int k = 0; k < 3; ++k) {
    const double c = views[(k + 1) % 3].dot(views[(k + 2) % 3]);
    if (std::abs(c) >= 1.0 - kParallelMargin) {
      throw Error(ErrorCode::kInvalidProblem, "view vectors are parallel");
    }
  }
  return P3PProblem(views, sides);
}

P3PProblem P3PProblem::from_points(const std::array<Vec3, 3>& points) {
  std::array<UnitVec3, 3> views;
  std::array<double, 3> sides{};
  for (int k = 0; k < 3; ++k) {
    views[k] = UnitVec3::normalized(points[k]);
    sides[k] = (points[(k + 1) % 3] - points[(k + 2) % 3]).norm();
  }
  return make(views, sides);
}

DerivedGeometry derive_geometry(const P3PProblem& p) {
  DerivedGeometry g;
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    g.view_dot[k] = p.view(i).dot(p.view(j));
    const Vec3 c = p.view(i).vec().cross(p.view(j).vec());
    if (c.norm() < kCrossFloor) {
      throw Error(ErrorCode::kDegenerateViewLines, "views " + std::to_string(i) + " and " +
                                                       std::to_string(j) + " are parallel");
    }
    g.plane_normal[k] = UnitVec3::normalized(c);
  }
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    g.normal_dot[k] = g.plane_normal[i].dot(g.plane_normal[j]);
    // Law of cosines at vertex k.
    const double a = p.side(k), b = p.side(i), c = p.side(j);
    g.corner_cos[k] = (b * b + c * c - a * a) / (2.0 * b * c);
  }
  return g;
}

VerticalFrame choose_vertical_frame(const P3PProblem& p, const DerivedGeometry& g,
                                    const EcOptions& opts) {
  VerticalFrame best;
  bool found = false;
  for (int k = 0; k < 3; ++k) {
    int i = (k + 1) % 3, j = (k + 2) % 3;
    const Vec3& vk = p.view(k);
    const Vec3 ca = vk.cross(p.view(i).vec()).normalized();
    const Vec3 cb = vk.cross(p.view(j).vec()).normalized();
    Vec3 ta = ca.cross(vk).normalized();
    Vec3 tb = cb.cross(vk).normalized();
    if (ta.dot(tb) < 0.0) tb = -tb;
    if (ta.cross(tb).dot(vk) < 0.0) {
      std::swap(i, j);
      std::swap(ta, tb);
    }
    double mu0 = 0.5 * (ta + tb).norm();
    double nu0 = 0.5 * (ta - tb).norm();
    const double h = std::hypot(mu0, nu0);
    mu0 /= h;
    nu0 /= h;

    best.candidate_score[k] = std::numeric_limits<double>::infinity();
    best.viable[k] = false;
    Alphas al;
    try {
      al = alphas_from_dots(-g.corner_cos[k], g.corner_cos[i], g.corner_cos[j]);
    } catch (const Error&) {
      continue;
    }
    const double score =
        std::abs((al.alpha2 * al.alpha2 - al.alpha1 * al.alpha1) * mu0 * nu0);
    const double eta = 1.0 - 4.0 * score * score;
    const double floor = opts.min_frame_param;
    if (!(eta > opts.min_eta) || !(mu0 >= floor) || !(nu0 >= floor) ||
        !(std::abs(al.alpha1) >= floor) || !(std::abs(al.alpha2) >= floor) || !(score >= floor)) {
      best.candidate_score[k] = score;
      continue;
    }
    best.candidate_score[k] = score;
    best.viable[k] = true;
    if (found && !(score < best.score)) continue;
    found = true;
    best.k = k;
    best.i = i;
    best.j = j;
    best.score = score;
    best.params = CurveParams::make(mu0, nu0, al.alpha1, al.alpha2);
    best.rotation = rotation_between_pairs(p.view(k), UnitVec3::normalized(ta),
                                           UnitVec3::unit_z(),
                                           UnitVec3::normalized(Vec3(mu0, -nu0, 0.0)));
  }
  if (!found) throw Error(ErrorCode::kNoViableFrame, "all three view lines rejected");
  return best;
}

PlaneTranslation plane_translation(const UnitVec3& n, const P3PProblem& p) {
  std::array<double, 3> depth{};
  for (int i = 0; i < 3; ++i) {
    depth[i] = p.view(i).dot(n);
    if (!(depth[i] >= kFrontFloor)) {
      throw Error(ErrorCode::kBackfacingPlane, "v_" + std::to_string(i) + "·n = " +
                                                   std::to_string(depth[i]));
    }
  }
  std::array<double, 3> lambdas{};
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    const Vec3 gap = p.view(i).vec() / depth[i] - p.view(j).vec() / depth[j];
    lambdas[k] = p.side(k) / gap.norm();
  }
  PlaneTranslation t;
  t.lambda = (lambdas[0] + lambdas[1] + lambdas[2]) / 3.0;
  const auto [lo, hi] = std::minmax_element(lambdas.begin(), lambdas.end());
  t.spread = (*hi - *lo) / t.lambda;
  for (int i = 0; i < 3; ++i) t.dist[i] = t.lambda / depth[i];
  return t;
}

std::vector<P3PSolution> solve_ec(const P3PProblem& p, const EcOptions& opts) {
  // Phase 1: geometry.
  const DerivedGeometry g = derive_geometry(p);
  // Phase 2: vertical view line.
  const VerticalFrame frame = choose_vertical_frame(p, g, opts);
  const CurveParams& params = frame.params;
  const Rot3& rot = frame.rotation;

  // Phase 3: deformation and rotated line of the ignored plane.
  Deformation def;
  try {
    def = deformation(params);
  } catch (const Error& e) {
    throw Error(ErrorCode::kNoViableFrame, e.what());
  }
  const ProjQuartic9 q9 = proj_quartic9(params, def);
  const Vec3 line = (def.m.transpose() * (rot * g.plane_normal[frame.k].vec())).normalized();

  // Phase 4: quartic in one affine coordinate.
  const bool keep_u = std::abs(line.y()) >= opts.elimination_switch;
  const Quartic quartic = keep_u ? eliminate(q9, q9.u2w2, q9.v2w2, line.x(), line.y(), line.z())
                                 : eliminate(q9, q9.v2w2, q9.u2w2, line.y(), line.x(), line.z());
  RealRoots roots;
  try {
    roots = quartic_real_roots(quartic);
  } catch (const Error& e) {
    throw Error(ErrorCode::kNoViableFrame, e.what());
  }

  // Phase 5: back to the sphere, then to the plane of the control points.
  std::vector<P3PSolution> out;
  for (double r : roots) {
    Vec3 uvw;
    if (keep_u) {
      uvw = {r, -(line.x() * r + line.z()) / line.y(), 1.0};
    } else {
      uvw = {-(line.y() * r + line.z()) / line.x(), r, 1.0};
    }
    const Vec3 x = def.m * uvw;
    if (!x.allFinite() || x.norm() == 0.0) continue;
    const UnitVec3 a = UnitVec3::normalized(x);
    if (std::abs(a.z()) < kEquatorFloor) continue;

    SlidingState state;
    try {
      state = mu_recovery(params, a);
    } catch (const Error&) {
      continue;
    }
    const Vec3 normal_rot = state.anchor1(params).cross(state.anchor2(params));
    if (!(normal_rot.norm() > 0.0) || !normal_rot.allFinite()) continue;
    UnitVec3 n = rot.inverse() * UnitVec3::normalized(normal_rot);

    int front = 0;
    for (int i = 0; i < 3; ++i) front += p.view(i).dot(n) > 0.0 ? 1 : 0;
    if (front == 0) {
      n = -n;
    } else if (front != 3) {
      continue;
    }

    PlaneTranslation t;
    try {
      t = plane_translation(n, p);
    } catch (const Error&) {
      continue;
    }
    if (!(t.spread <= opts.max_lambda_spread)) continue;

    bool duplicate = false;
    for (const P3PSolution& s : out) {
      if (same_triple(s.dist, t.dist, opts.dedup_tolerance)) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;

    P3PSolution s;
    s.dist = t.dist;
    for (int i = 0; i < 3; ++i) s.points[i] = t.dist[i] * p.view(i).vec();
    s.plane_normal = n;
    s.lambda = t.lambda;
    s.lambda_spread = t.spread;
    out.push_back(s);
  }
  return out;
}

}  // namespace ecp3p
