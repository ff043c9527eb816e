#include "zorich/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "zorich/error.hpp"

namespace zorich {

namespace {

constexpr double kSquareSlack = 1e-12;

double max_norm(const Point2& p) { return std::max(std::abs(p.x1), std::abs(p.x2)); }
double euclid(const Point2& p) { return std::hypot(p.x1, p.x2); }

void require_in_square(const Point2& p, const char* op) {
  if (!std::isfinite(p.x1) || !std::isfinite(p.x2) || max_norm(p) > 1.0 + kSquareSlack) {
    throw DomainError(std::string(op) + ": point (" + std::to_string(p.x1) + ", " +
                      std::to_string(p.x2) + ") is outside the square [-1,1]^2");
  }
}

// Index r with |x - 2r| <= 1, ties to the lower index.
std::int64_t fold_index(double x) {
  return static_cast<std::int64_t>(std::ceil((x - 1.0) / 2.0));
}

}  // namespace

Point2 square_to_disk(const Point2& p) {
  require_in_square(p, "square_to_disk");
  const double e = euclid(p);
  if (e == 0.0) return {0.0, 0.0};
  const double scale = std::min(max_norm(p), 1.0) / e;
  return {p.x1 * scale, p.x2 * scale};
}

Point2 disk_to_square(const Point2& d) {
  const double e = euclid(d);
  if (!(e <= 1.0 + kSquareSlack)) throw DomainError("disk_to_square: point outside the unit disk");
  const double m = max_norm(d);
  if (m == 0.0) return {0.0, 0.0};
  const double scale = std::min(e, 1.0) / m;
  return {std::clamp(d.x1 * scale, -1.0, 1.0), std::clamp(d.x2 * scale, -1.0, 1.0)};
}

Point3 square_to_hemisphere(const Point2& p) {
  const Point2 d = square_to_disk(p);
  const double rho = std::min(euclid(d), 1.0);
  if (rho == 0.0) return {0.0, 0.0, 1.0};
  const double polar = 0.5 * std::numbers::pi * rho;
  const double lateral = std::sin(polar) / euclid(d);
  return {d.x1 * lateral, d.x2 * lateral, std::max(std::cos(polar), 0.0)};
}

Point2 hemisphere_to_square(const Point3& u) {
  const double n = norm(u);
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-9) {
    throw DomainError("hemisphere_to_square: input is not a unit vector");
  }
  if (u.x3 < -1e-12) throw DomainError("hemisphere_to_square: input below the equator");
  const double lateral = std::hypot(u.x1, u.x2);
  if (lateral == 0.0) return {0.0, 0.0};
  // atan2 keeps the polar angle well conditioned near the pole.
  const double polar = std::atan2(lateral, std::max(u.x3, 0.0));
  const double rho = std::min(2.0 * polar / std::numbers::pi, 1.0);
  return disk_to_square({rho * u.x1 / lateral, rho * u.x2 / lateral});
}

FoldResult fold(double x1, double x2) {
  constexpr double kLimit = 4503599627370496.0;  // 2^52
  if (!std::isfinite(x1) || !std::isfinite(x2) || std::abs(x1) > kLimit || std::abs(x2) > kLimit) {
    throw DomainError("fold: coordinates must be finite and below 2^52 in magnitude");
  }
  const Cell cell{fold_index(x1), fold_index(x2)};
  const double t1 = x1 - 2.0 * static_cast<double>(cell.r1);
  const double t2 = x2 - 2.0 * static_cast<double>(cell.r2);
  FoldResult out;
  out.cell = cell;
  out.folded = {(cell.r1 % 2 == 0) ? t1 : -t1, (cell.r2 % 2 == 0) ? t2 : -t2};
  out.parity = cell.sign();
  return out;
}

Point2 unfold(const Point2& w, const Cell& cell) {
  const double a = (cell.r1 % 2 == 0) ? w.x1 : -w.x1;
  const double b = (cell.r2 % 2 == 0) ? w.x2 : -w.x2;
  return {2.0 * static_cast<double>(cell.r1) + a, 2.0 * static_cast<double>(cell.r2) + b};
}

double spherical_ray_length(double x, double y, double z) {
  const double s = std::hypot(1.0, y, z);
  return std::atan2(s, x) / s;
}

double estimate_bilipschitz_constant(std::size_t n_samples, std::uint64_t seed, const SquareMap& map) {
  if (n_samples < 10000) {
    throw DomainError("estimate_bilipschitz_constant: need at least 10^4 samples");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double worst = 1.0;
  auto account = [&worst](double planar, double image) {
    if (planar <= 0.0 || image <= 0.0) return;
    worst = std::max({worst, image / planar, planar / image});
  };
  auto image_distance = [&map](const Point2& p, const Point2& q) {
    const Point3 a = map(p);
    const Point3 b = map(q);
    return distance(a, b);
  };

  // Global pairs, then close pairs at log-uniform separations in [1e-6, 0.3].
  const std::size_t global_pairs = n_samples / 2;
  for (std::size_t i = 0; i < global_pairs; ++i) {
    const Point2 p{coord(rng), coord(rng)};
    const Point2 q{coord(rng), coord(rng)};
    account(std::hypot(p.x1 - q.x1, p.x2 - q.x2), image_distance(p, q));
  }
  const double log_lo = std::log(1e-6);
  const double log_hi = std::log(0.3);
  for (std::size_t i = global_pairs; i < n_samples; ++i) {
    const Point2 p{coord(rng), coord(rng)};
    const double sep = std::exp(log_lo + (log_hi - log_lo) * unit(rng));
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    const Point2 q{p.x1 + sep * std::cos(angle), p.x2 + sep * std::sin(angle)};
    if (max_norm(q) > 1.0) continue;
    account(std::hypot(p.x1 - q.x1, p.x2 - q.x2), image_distance(p, q));
  }

  // Jacobian singular values by central differences away from the diagonals,
  // the origin and the square boundary.
  constexpr double kStep = 1e-7;
  constexpr double kClear = 1e-5;
  const std::size_t jacobian_samples = n_samples / 4;
  for (std::size_t i = 0; i < jacobian_samples; ++i) {
    const Point2 p{coord(rng) * (1.0 - kClear), coord(rng) * (1.0 - kClear)};
    if (std::abs(std::abs(p.x1) - std::abs(p.x2)) < kClear) continue;
    Eigen::Matrix<double, 3, 2> jac;
    const Point3 a1 = map({p.x1 + kStep, p.x2});
    const Point3 b1 = map({p.x1 - kStep, p.x2});
    const Point3 a2 = map({p.x1, p.x2 + kStep});
    const Point3 b2 = map({p.x1, p.x2 - kStep});
    jac << a1.x1 - b1.x1, a2.x1 - b2.x1,
           a1.x2 - b1.x2, a2.x2 - b2.x2,
           a1.x3 - b1.x3, a2.x3 - b2.x3;
    jac /= 2.0 * kStep;
    const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>>(jac).singularValues();
    if (sv(1) <= 0.0) continue;
    worst = std::max({worst, sv(0), 1.0 / sv(1)});
  }
  return kLipschitzSafetyFactor * worst;
}

}  // namespace zorich
