#pragma once

// The family of affine quartics
//   A u^2 v^2 + B u^2 + C v^2 + D + 2 E uv = 0,
// its birational map onto the Jacobi quartic xi^2 = (1 - omega^2)(1 - kappa^2 omega^2),
// and the j-invariant. Everything is kept in squared quantities so no square
// root of a coefficient is ever taken.

#include <array>

#include "ecp3p/arc_curve.h"

namespace ecp3p {

struct QForm {
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0;

  double operator()(double u, double v) const {
    return A * u * u * v * v + B * u * u + C * v * v + D + 2.0 * E * u * v;
  }
};

struct JacobiConstants {
  double delta = 0.0;
  double rho = 0.0;
  double kappa2 = 0.0;
  // 1 + f rho + g rho^2 = 0
  double f = 0.0;
  double g = 0.0;
};

struct JacobiPoint {
  double omega2 = 0.0;
  double xi2 = 0.0;
};

// Dehomogenize at W = 1.
QForm qform_from_proj9(const ProjQuartic9& p9);

// Throws kZeroCoefficient if any of A, B, C, D is below 1e-12 in magnitude
// and kNegativeDelta when delta < -1e-12. Tiny negative delta is clamped to 0.
JacobiConstants jacobi_constants(const QForm& q);

// omega^2 = u^2 / rho, xi^2 = ((A u^2 + C) v + E u)^2 / (-C D).
// Throws kZeroRho.
JacobiPoint jacobi_map(const QForm& q, const JacobiConstants& k, double u, double v);

// Closed form in A..E. Throws kDegenerateCurve when delta = 0 or
// kappa^2 is 0 or 1 (within 1e-12).
double j_invariant(const QForm& q);

// 16 (kappa^4 + 14 kappa^2 + 1)^3 / (kappa^2 (1 - kappa^2)^4)
double j_invariant_from_kappa2(double kappa2);

// General homogeneous quartic in (U, V, W); coefficient of U^i V^j W^(4-i-j)
// is stored at monomial_index(i, j).
struct HomogeneousQuartic {
  std::array<double, 15> c{};

  static int monomial_index(int i, int j);
  double& at(int i, int j) { return c[monomial_index(i, j)]; }
  double at(int i, int j) const { return c[monomial_index(i, j)]; }
  double operator()(const Vec3& p) const;
  Vec3 gradient(const Vec3& p) const;
};

HomogeneousQuartic homogenize(const QForm& q);

// True when only U^2V^2, U^2W^2, V^2W^2, UVW^2 and W^4 carry nonzero
// coefficients (|c| > tol) and the curve is singular at (1:0:0) and (0:1:0).
// On success fills `out` with the matching QForm.
bool in_q_family(const HomogeneousQuartic& h, QForm* out = nullptr, double tol = 0.0);

}  // namespace ecp3p
