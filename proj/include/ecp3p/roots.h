#pragma once

#include <array>
#include <cstddef>

namespace ecp3p {

// c3 t^3 + c2 t^2 + c1 t + c0
struct Cubic {
  double c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;

  double operator()(double t) const { return ((c3 * t + c2) * t + c1) * t + c0; }
};

// q4 t^4 + q3 t^3 + q2 t^2 + q1 t + q0
struct Quartic {
  double q4 = 0.0, q3 = 0.0, q2 = 0.0, q1 = 0.0, q0 = 0.0;

  double operator()(double t) const { return (((q4 * t + q3) * t + q2) * t + q1) * t + q0; }
};

// Up to four real roots, ascending. Fixed capacity so solvers never allocate.
class RealRoots {
 public:
  void push_back(double r) { values_[size_++] = r; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const double* begin() const { return values_.data(); }
  const double* end() const { return values_.data() + size_; }
  double* begin() { return values_.data(); }
  double* end() { return values_.data() + size_; }

 private:
  std::array<double, 4> values_{};
  std::size_t size_ = 0;
};

// Largest real root of a genuine cubic, by safeguarded Newton–Raphson.
//
// The start point is the root of the quadratic model around the relevant
// stationary point (or the inflection point when the cubic is monotone); a
// Cauchy-bound bracket is kept alongside and a bisection step replaces any
// Newton step that leaves it. Iterates to an exact zero, a step below
// rounding level, or 64 iterations. Throws kNonCubic when c3 == 0.
double cubic_one_real_root(const Cubic& p);

// All real roots of a quartic, ascending.
//
// Ferrari: the depressed quartic is split into two quadratics using the
// largest root of its resolvent cubic (from cubic_one_real_root). Every
// candidate then gets exactly two Newton steps on the original polynomial.
// Roots closer than 1e-9 are merged and reported as a repeated entry.
// Throws kDegreeDrop when q4 == 0.
RealRoots quartic_real_roots(const Quartic& p);

}  // namespace ecp3p
