#include "ecp3p/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "ecp3p/error.h"
#include "ecp3p/p3p_lt.h"

namespace ecp3p {

namespace {

constexpr int kMaxAttempts = 10000;
constexpr std::uint64_t kBlockSize = 1024;
constexpr double kDeg = std::numbers::pi / 180.0;
// Measured attack angles this close outside the range are accepted.
constexpr double kAttackSlackDeg = 1e-9;
constexpr std::array<double, kHistBuckets + 1> kDecades = {
    1e-1, 1e-2, 1e-3, 1e-4,  1e-5,  1e-6,  1e-7, 1e-8,
    1e-9, 1e-10, 1e-11, 1e-12, 1e-13, 1e-14, 1e-15};

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vec3 circumcenter(const std::array<Vec3, 3>& p) {
  const Vec3 a = p[1] - p[0];
  const Vec3 b = p[2] - p[0];
  const Vec3 axb = a.cross(b);
  return p[0] + (a.squaredNorm() * b - b.squaredNorm() * a).cross(axb) / (2.0 * axb.squaredNorm());
}

Vec3 polar(double deg) { return {std::cos(deg * kDeg), std::sin(deg * kDeg), 0.0}; }

// Compensated running sum.
struct NeumaierSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  void add(const NeumaierSum& o) {
    add(o.sum);
    add(o.carry);
  }
  double value() const { return sum + carry; }
};

struct BlockStats {
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;
  std::array<std::uint64_t, kHistBuckets> hist{};
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;
  NeumaierSum sum, sum_sq;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  double seconds = 0.0;
};

void record(BlockStats& b, double err) {
  if (err < 0.0) {
    ++b.failures;
    return;
  }
  ++b.successes;
  b.sum.add(err);
  b.sum_sq.add(err * err);
  b.min = std::min(b.min, err);
  b.max = std::max(b.max, err);
  if (err >= kDecades[0]) {
    ++b.overflow;
    return;
  }
  for (int k = 0; k < kHistBuckets; ++k) {
    if (err >= kDecades[k + 1]) {
      ++b.hist[k];
      return;
    }
  }
  ++b.underflow;
}

BlockStats run_block(const TrialConfig& cfg, Method m, std::uint64_t first, std::uint64_t last) {
  using Clock = std::chrono::steady_clock;
  BlockStats b;
  for (std::uint64_t t = first; t < last; ++t) {
    const auto truth = generate_trial(cfg, t);
    const auto start = Clock::now();
    const double err = solve_and_check(m, truth);
    b.seconds += std::chrono::duration<double>(Clock::now() - start).count();
    record(b, err);
  }
  return b;
}

std::string format_err(double v) {
  if (v < 1e-17) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string format_range(double lo, double hi) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g-%g", lo, hi);
  return buf;
}

}  // namespace

const char* to_string(Method m) { return m == Method::kEc ? "EC" : "LT"; }

Triangle Triangle::acute() { return {"acute", {Vec3(0.0, 1.0, 0.0), polar(80.0), polar(230.0)}}; }

Triangle Triangle::obtuse() {
  return {"obtuse", {Vec3(0.0, 1.0, 0.0), polar(70.0), polar(300.0)}};
}

Triangle Triangle::from_stream(std::istream& in, const std::string& name) {
  Triangle t;
  t.name = name;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double x = 0.0, y = 0.0;
    std::string rest;
    if (n >= 3 || !(ls >> x >> y) || (ls >> rest) || !std::isfinite(x) || !std::isfinite(y)) {
      throw Error(ErrorCode::kInvalidConfig, "triangle file must hold three lines \"x y\"");
    }
    t.vertices[n++] = Vec3(x, y, 0.0);
  }
  if (n != 3) throw Error(ErrorCode::kInvalidConfig, "triangle file must hold three lines \"x y\"");
  return t;
}

Triangle Triangle::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidConfig, "cannot open " + path);
  return from_stream(in, "file:" + path);
}

Triangle Triangle::parse(const std::string& text) {
  if (text == "acute") return acute();
  if (text == "obtuse") return obtuse();
  if (text.rfind("file:", 0) == 0) return from_file(text.substr(5));
  throw Error(ErrorCode::kInvalidConfig, "unknown triangle " + text);
}

void validate(const TrialConfig& cfg) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidConfig, msg); };
  if (!(cfg.attack_min >= 0.0 && cfg.attack_min <= cfg.attack_max && cfg.attack_max < 90.0)) {
    fail("need 0 <= attack_min <= attack_max < 90");
  }
  if (!(cfg.lift_min > 0.0 && cfg.lift_min <= cfg.lift_max && std::isfinite(cfg.lift_max))) {
    fail("need 0 < lift_min <= lift_max");
  }
  if (cfg.trials < 1) fail("need trials >= 1");
  const auto& v = cfg.triangle.vertices;
  const double area = (v[1] - v[0]).cross(v[2] - v[0]).norm();
  const double scale = std::max({(v[1] - v[0]).squaredNorm(), (v[2] - v[1]).squaredNorm(),
                                 (v[0] - v[2]).squaredNorm()});
  if (!(area > 1e-9 * scale)) fail("triangle is degenerate");
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
    : key_(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ mix64(trial * 0xd1b54a32d192ed03ULL + 1)) {}

std::uint64_t TrialRng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
}

double TrialRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double attack_angle(const std::array<Vec3, 3>& points) {
  const Vec3 normal = (points[1] - points[0]).cross(points[2] - points[0]);
  if (!(normal.norm() > 0.0)) {
    throw Error(ErrorCode::kPlaneThroughOrigin, "degenerate triangle");
  }
  const Vec3 n = normal.normalized();
  const double d = n.dot(points[0]);
  if (std::abs(d) < 1e-12) throw Error(ErrorCode::kPlaneThroughOrigin, "plane contains the origin");
  const Vec3 nearest = d * n;
  const Vec3 c = circumcenter(points);
  return std::atan2(c.cross(nearest).norm(), c.dot(nearest)) / kDeg;
}

std::array<Vec3, 3> generate_trial(const TrialConfig& cfg, std::uint64_t trial) {
  TrialRng rng(cfg.seed, trial);
  const Vec3 center = circumcenter(cfg.triangle.vertices);
  std::array<Vec3, 3> base;
  for (int i = 0; i < 3; ++i) base[i] = cfg.triangle.vertices[i] - center;

  const double lift = rng.uniform(cfg.lift_min, cfg.lift_max);
  const Vec3 up(0.0, 0.0, lift);
  const bool fixed = cfg.attack_min == cfg.attack_max;
  std::array<Vec3, 3> pts;
  bool accepted = false;
  for (int attempt = 0; attempt < kMaxAttempts && !accepted; ++attempt) {
    const double azimuth = rng.uniform(0.0, 2.0 * std::numbers::pi);
    double angle = rng.uniform(-90.0, 90.0);
    if (fixed) angle = std::copysign(cfg.attack_min, angle);
    const Rot3 r = random_rotation_xy_axis(angle * kDeg, azimuth);
    for (int i = 0; i < 3; ++i) pts[i] = r * base[i] + up;
    const double attack = attack_angle(pts);
    accepted = attack >= cfg.attack_min - kAttackSlackDeg && attack <= cfg.attack_max + kAttackSlackDeg;
  }
  if (!accepted) {
    throw Error(ErrorCode::kExhaustedSampling,
                "no attack angle in range after " + std::to_string(kMaxAttempts) + " draws");
  }

  const double azimuth = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double angle = rng.uniform(-90.0, 90.0);
  const Rot3 r = random_rotation_xy_axis(angle * kDeg, azimuth);
  for (auto& p : pts) p = r * p;
  return pts;
}

double relative_error(const std::vector<P3PSolution>& solutions, const std::array<Vec3, 3>& truth) {
  double best = -1.0;
  for (const P3PSolution& s : solutions) {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) sum += (s.points[i] - truth[i]).squaredNorm() / truth[i].squaredNorm();
    const double err = std::sqrt(sum);
    if (!std::isfinite(err)) continue;
    if (best < 0.0 || err < best) best = err;
  }
  return best;
}

double solve_and_check(Method m, const std::array<Vec3, 3>& truth) {
  try {
    const P3PProblem problem = P3PProblem::from_points(truth);
    return relative_error(m == Method::kEc ? solve_ec(problem) : solve_lt(problem), truth);
  } catch (const Error&) {
    return -1.0;
  }
}

TrialStats run_experiment(const TrialConfig& cfg, Method m, const RunOptions& opts) {
  validate(cfg);
  const std::uint64_t blocks = (cfg.trials + kBlockSize - 1) / kBlockSize;
  std::vector<BlockStats> results(blocks);
  auto run = [&](std::uint64_t b) {
    results[b] = run_block(cfg, m, b * kBlockSize, std::min(cfg.trials, (b + 1) * kBlockSize));
  };

  unsigned workers = opts.threads != 0 ? opts.threads : std::thread::hardware_concurrency();
  if (opts.serial || workers <= 1 || blocks == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run(b);
  } else {
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) {
          try {
            run(b);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            next = blocks;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  BlockStats total;
  for (const BlockStats& b : results) {
    total.successes += b.successes;
    total.failures += b.failures;
    for (int k = 0; k < kHistBuckets; ++k) total.hist[k] += b.hist[k];
    total.underflow += b.underflow;
    total.overflow += b.overflow;
    total.sum.add(b.sum);
    total.sum_sq.add(b.sum_sq);
    total.min = std::min(total.min, b.min);
    total.max = std::max(total.max, b.max);
    total.seconds += b.seconds;
  }

  TrialStats s;
  s.successes = total.successes;
  s.failures = total.failures;
  s.hist = total.hist;
  s.underflow = total.underflow;
  s.overflow = total.overflow;
  s.time_s = total.seconds;
  if (s.successes > 0) {
    const double n = static_cast<double>(s.successes);
    s.mean = total.sum.value() / n;
    if (s.successes > 1) {
      const double ss = total.sum_sq.value() - total.sum.value() * s.mean;
      s.stddev = std::sqrt(std::max(0.0, ss) / (n - 1.0));
    }
    s.min = total.min;
    s.max = total.max;
  }
  return s;
}

std::string csv_header(bool hist) {
  std::string h =
      "attack_min,attack_max,lift_min,lift_max,triangle,method,trials,successes,failures,"
      "avg_err,std_err,min_err,max_err,time_s";
  if (hist) {
    for (int k = 0; k < kHistBuckets; ++k) h += ",hist_1e-" + std::to_string(k + 2);
  }
  return h;
}

std::string csv_row(const TrialConfig& cfg, Method m, const TrialStats& s, bool hist) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%s,%s,%llu,%llu,%llu,%.17g,%.17g,%.17g,%.17g,%.6f",
                cfg.attack_min, cfg.attack_max, cfg.lift_min, cfg.lift_max, cfg.triangle.name.c_str(),
                to_string(m), static_cast<unsigned long long>(cfg.trials),
                static_cast<unsigned long long>(s.successes),
                static_cast<unsigned long long>(s.failures), s.mean, s.stddev, s.min, s.max, s.time_s);
  std::string row = buf;
  if (hist) {
    for (auto c : s.hist) row += "," + std::to_string(c);
  }
  return row;
}

std::string table_header() {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-8s %-9s %-10s %-6s %10s %10s %10s %10s %9s %8s", "attack",
                "lift", "triangle", "method", "avg", "std", "min", "max", "time(s)", "failures");
  return buf;
}

std::string table_row(const TrialConfig& cfg, Method m, const TrialStats& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-8s %-9s %-10s %-6s %10s %10s %10s %10s %9.2f %8llu",
                format_range(cfg.attack_min, cfg.attack_max).c_str(),
                format_range(cfg.lift_min, cfg.lift_max).c_str(), cfg.triangle.name.c_str(),
                to_string(m), format_err(s.mean).c_str(), format_err(s.stddev).c_str(),
                format_err(s.min).c_str(), format_err(s.max).c_str(), s.time_s,
                static_cast<unsigned long long>(s.failures));
  return buf;
}

std::string table_hist(const TrialStats& s) {
  std::string out;
  char buf[96];
  std::snprintf(buf, sizeof buf, "  %-20s %llu\n", ">= 1e-1", static_cast<unsigned long long>(s.overflow));
  out += buf;
  for (int k = 0; k < kHistBuckets; ++k) {
    char label[32];
    std::snprintf(label, sizeof label, "[1e-%d, 1e-%d)", k + 2, k + 1);
    std::snprintf(buf, sizeof buf, "  %-20s %llu\n", label, static_cast<unsigned long long>(s.hist[k]));
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "  %-20s %llu\n", "< 1e-15", static_cast<unsigned long long>(s.underflow));
  out += buf;
  return out;
}

}  // namespace ecp3p
