#include "ecp3p/roots.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ecp3p/error.h"

namespace ecp3p {

namespace {

constexpr int kMaxCubicIterations = 64;
constexpr int kPolishSteps = 2;
constexpr double kMergeGap = 1e-9;

// Roots of y^2 + b y + c = 0. A slightly negative discriminant (relative to
// the coefficient scale) is read as a double root.
void quadratic_roots(double b, double c, RealRoots& out) {
  const double disc = b * b - 4.0 * c;
  const double scale = b * b + 4.0 * std::abs(c);
  if (disc < 0.0) {
    if (disc >= -1e-14 * scale) {
      out.push_back(-0.5 * b);
      out.push_back(-0.5 * b);
    }
    return;
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    out.push_back(0.0);
    out.push_back(0.0);
    return;
  }
  out.push_back(q);
  out.push_back(c / q);
}

}  // namespace

double cubic_one_real_root(const Cubic& p) {
  if (p.c3 == 0.0) throw Error(ErrorCode::kNonCubic, "leading coefficient is zero");
  const double b = p.c2 / p.c3;
  const double c = p.c1 / p.c3;
  const double d = p.c0 / p.c3;
  auto f = [&](double t) { return ((t + b) * t + c) * t + d; };
  auto df = [&](double t) { return (3.0 * t + 2.0 * b) * t + c; };

  const double bound = 1.0 + std::max({std::abs(b), std::abs(c), std::abs(d)});
  double lo = -bound;
  double hi = bound;
  double t = -b / 3.0;

  const double disc = b * b - 3.0 * c;
  if (disc > 0.0) {
    // Stationary points of the monic cubic, computed without cancellation.
    const double s = std::sqrt(disc);
    const double r1 = -(b + std::copysign(s, b)) / 3.0;
    const double r2 = r1 != 0.0 ? c / (3.0 * r1) : 0.0;
    const double left = std::min(r1, r2);
    const double right = std::max(r1, r2);
    const double f_right = f(right);
    if (f_right == 0.0) return right;
    if (f_right < 0.0) {
      // Largest root lies right of the local minimum.
      lo = right;
      t = right + std::sqrt(-f_right / (3.0 * right + b));
    } else {
      // Local minimum is positive, so the only real root is left of the local maximum.
      hi = left;
      const double f_left = f(left);
      const double curvature = 3.0 * left + b;
      t = curvature < 0.0 ? left - std::sqrt(-f_left / curvature) : left;
    }
  }
  if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);

  for (int it = 0; it < kMaxCubicIterations; ++it) {
    const double fx = f(t);
    if (fx == 0.0) break;
    if (fx > 0.0) {
      hi = std::min(hi, t);
    } else {
      lo = std::max(lo, t);
    }
    const double dfx = df(t);
    double next = dfx != 0.0 ? t - fx / dfx : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - t);
    t = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

RealRoots quartic_real_roots(const Quartic& p) {
  if (p.q4 == 0.0) throw Error(ErrorCode::kDegreeDrop, "leading coefficient is zero");
  const double a = p.q3 / p.q4;
  const double b = p.q2 / p.q4;
  const double c = p.q1 / p.q4;
  const double d = p.q0 / p.q4;

  // Depressed quartic y^4 + pp y^2 + qq y + rr with t = y - a/4.
  const double a2 = a * a;
  const double pp = b - 0.375 * a2;
  const double qq = c - 0.5 * a * b + 0.125 * a2 * a;
  const double rr = d - 0.25 * a * c + 0.0625 * a2 * b - 3.0 / 256.0 * a2 * a2;

  // Resolvent 8 s^3 - 4 pp s^2 - 8 rr s + (4 pp rr - qq^2); its largest root
  // satisfies 2 s - pp >= 0.
  const double s = cubic_one_real_root({8.0, -4.0 * pp, -8.0 * rr, 4.0 * pp * rr - qq * qq});
  const double alpha_sq = std::max(0.0, 2.0 * s - pp);
  const double beta_sq = std::max(0.0, s * s - rr);
  double alpha = std::sqrt(alpha_sq);
  double beta = 0.0;
  if (alpha_sq >= beta_sq) {
    beta = alpha > 0.0 ? qq / (2.0 * alpha) : 0.0;
  } else {
    beta = std::copysign(std::sqrt(beta_sq), qq);
    alpha = qq / (2.0 * beta);
  }

  // (y^2 + s)^2 = (alpha y - beta)^2
  RealRoots roots;
  quadratic_roots(-alpha, s + beta, roots);
  quadratic_roots(alpha, s - beta, roots);

  const Quartic monic{1.0, a, b, c, d};
  for (double& t : roots) {
    t -= 0.25 * a;
    for (int k = 0; k < kPolishSteps; ++k) {
      const double dt = ((4.0 * t + 3.0 * a) * t + 2.0 * b) * t + c;
      if (dt == 0.0) break;
      const double ft = monic(t);
      const double next = t - ft / dt;
      // Near a double root the step can overshoot; keep the better point.
      if (!std::isfinite(next) || std::abs(monic(next)) > std::abs(ft)) break;
      t = next;
    }
  }
  std::sort(roots.begin(), roots.end());
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    if (roots[i + 1] - roots[i] < kMergeGap) {
      const double mid = 0.5 * (roots[i] + roots[i + 1]);
      roots[i] = mid;
      roots[i + 1] = mid;
    }
  }
  return roots;
}

}  // namespace ecp3p
