#pragma once

// Synthetic accuracy benchmark: random poses of a fixed control triangle,
// solved by either solver, scored by the relative error of the best returned
// solution.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ecp3p/geom3.h"
#include "ecp3p/p3p_ec.h"

namespace ecp3p {

enum class Method { kEc, kLt };

const char* to_string(Method m);

struct Triangle {
  std::string name;
  // Vertices in the z = 0 plane.
  std::array<Vec3, 3> vertices;

  // (0, 1), (cos 80°, sin 80°), (cos 230°, sin 230°)
  static Triangle acute();
  // (0, 1), (cos 70°, sin 70°), (cos 300°, sin 300°)
  static Triangle obtuse();
  // Three lines "x y". Throws kInvalidConfig on malformed input.
  static Triangle from_file(const std::string& path);
  static Triangle from_stream(std::istream& in, const std::string& name);
  // "acute", "obtuse" or "file:<path>".
  static Triangle parse(const std::string& text);
};

struct TrialConfig {
  Triangle triangle = Triangle::acute();
  double attack_min = 0.0;
  double attack_max = 30.0;
  double lift_min = 100.0;
  double lift_max = 200.0;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
};

// Throws kInvalidConfig.
void validate(const TrialConfig& cfg);

// Counter-based stream: the n-th draw of trial t depends only on (seed, t, n).
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next_u64();
  // Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Angle in degrees between the origin-to-circumcenter vector and the
// origin-to-nearest-plane-point vector. Throws kPlaneThroughOrigin when the
// plane passes within 1e-12 of the origin.
double attack_angle(const std::array<Vec3, 3>& points);

// Control points of trial `trial`. The triangle is moved so its circumcenter
// is at the origin, rotated about a random horizontal axis until the attack
// angle lands in range, lifted along z, then rotated about another random
// horizontal axis by an angle in [-90°, 90°]. Throws kExhaustedSampling
// after 10^4 rejected draws.
std::array<Vec3, 3> generate_trial(const TrialConfig& cfg, std::uint64_t trial);

// Smallest sqrt(sum_i |p_i - P_i|^2 / |P_i|^2) over the solutions; -1 if
// there are none.
double relative_error(const std::vector<P3PSolution>& solutions, const std::array<Vec3, 3>& truth);

// Solve the problem seen from the origin and score it. Returns -1 when the
// solver fails or returns nothing.
double solve_and_check(Method m, const std::array<Vec3, 3>& truth);

// Decade histogram: bucket b holds errors in [10^-(b+2), 10^-(b+1)).
inline constexpr int kHistBuckets = 14;

struct TrialStats {
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;
  std::array<std::uint64_t, kHistBuckets> hist{};
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
  double time_s = 0.0;
};

struct RunOptions {
  bool serial = false;
  // 0 means one worker per hardware thread.
  unsigned threads = 0;
};

// Every trial with the given method. Serial and parallel runs produce
// bit-identical error statistics.
TrialStats run_experiment(const TrialConfig& cfg, Method m, const RunOptions& opts = {});

std::string csv_header(bool hist);
std::string csv_row(const TrialConfig& cfg, Method m, const TrialStats& s, bool hist);
std::string table_header();
std::string table_row(const TrialConfig& cfg, Method m, const TrialStats& s);
std::string table_hist(const TrialStats& s);

}  // namespace ecp3p
