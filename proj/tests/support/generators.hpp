#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "zorich/geometry.hpp"
#include "zorich/symbolic.hpp"

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  bool coin() { return integer(0, 1) == 1; }

  zorich::Point2 square_point() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

  zorich::Point3 point(double planar, double lo3, double hi3) {
    return {uniform(-planar, planar), uniform(-planar, planar), uniform(lo3, hi3)};
  }

  /// Point whose folded image is at least `clear` from the fold lines and
  /// the diagonals |w1| = |w2|.
  zorich::Point3 smooth_point(double planar, double lo3, double hi3, double clear) {
    for (;;) {
      const zorich::Point3 p = point(planar, lo3, hi3);
      const auto w = zorich::fold(p.x1, p.x2).folded;
      const double a = std::abs(w.x1), b = std::abs(w.x2);
      if (1.0 - a > clear && 1.0 - b > clear && std::abs(a - b) > clear) return p;
    }
  }

  zorich::Cell even_cell(std::int64_t bound) {
    for (;;) {
      const zorich::Cell c{integer(-bound, bound), integer(-bound, bound)};
      if (c.even()) return c;
    }
  }

  /// Exact rational in (lo, lo + 1) with a random denominator near 10^45,
  /// far too large to be a Farey endpoint at the depths used in tests.
  zorich::Rational rational(std::int64_t lo_int, std::int64_t hi_int) {
    zorich::BigInt den = 7, num = 0;
    for (int k = 0; k < 5; ++k) {
      den = den * 1'000'000'000 + integer(0, 999'999'999);
      num = num * 1'000'000'000 + integer(0, 999'999'999);
    }
    return zorich::Rational(integer(lo_int, hi_int)) + zorich::Rational(num % den, den);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Periodic even addresses with small symbols, deterministic for a seed.
inline std::vector<zorich::Address> periodic_addresses(std::size_t count, std::size_t length, std::uint64_t seed,
                                                       std::int64_t bound = 3, std::size_t max_period = 3) {
  Rng rng(seed);
  std::vector<zorich::Address> out;
  while (out.size() < count) {
    std::vector<zorich::Cell> period(static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(max_period))));
    for (auto& c : period) c = rng.even_cell(bound);
    zorich::Address a = zorich::periodic_address(period, length);
    bool fresh = true;
    for (const auto& b : out) fresh = fresh && !(b == a);
    if (fresh) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace gen
