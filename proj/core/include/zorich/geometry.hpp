#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

namespace zorich {

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct Point3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  Point3& operator+=(const Point3& o) { x1 += o.x1; x2 += o.x2; x3 += o.x3; return *this; }
  Point3& operator-=(const Point3& o) { x1 -= o.x1; x2 -= o.x2; x3 -= o.x3; return *this; }
  Point3& operator*=(double s) { x1 *= s; x2 *= s; x3 *= s; return *this; }
  friend Point3 operator+(Point3 a, const Point3& b) { return a += b; }
  friend Point3 operator-(Point3 a, const Point3& b) { return a -= b; }
  friend Point3 operator*(double s, Point3 a) { return a *= s; }
  friend bool operator==(const Point3&, const Point3&) = default;
};

inline double norm(const Point3& p) { return std::hypot(p.x1, p.x2, p.x3); }
inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }

/// Index of the open square P(r1, r2) = (2r1-1, 2r1+1) x (2r2-1, 2r2+1).
/// Also used as the (n1, n2) symbol of an address.
struct Cell {
  std::int64_t r1 = 0;
  std::int64_t r2 = 0;

  bool even() const { return ((r1 + r2) % 2) == 0; }
  /// +1 for even cells, -1 for odd ones.
  int sign() const { return even() ? 1 : -1; }
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct FoldResult {
  Point2 folded;  ///< image in the fundamental square Q = [-1, 1]^2
  Cell cell;
  int parity = 1;  ///< +1 iff cell is even
};

/// Radial max-norm map from Q onto the closed unit disk.
Point2 square_to_disk(const Point2& p);
Point2 disk_to_square(const Point2& d);

/// The bi-Lipschitz map from Q onto the closed upper unit hemisphere: the
/// disk map followed by the polar cap map d -> (sin(pi|d|/2) d/|d|, cos(pi|d|/2)).
/// The boundary of Q lands on the equator.
Point3 square_to_hemisphere(const Point2& p);

/// Analytic inverse of square_to_hemisphere. Accepts unit vectors (to 1e-9)
/// with x3 >= -1e-12.
Point2 hemisphere_to_square(const Point3& u);

/// Reflection folding of the plane into Q. Points on fold lines x = odd go to
/// the lower-index cell.
FoldResult fold(double x1, double x2);

/// Inverse of fold on a given cell: the point of closure(P(cell)) that folds to w.
Point2 unfold(const Point2& w, const Cell& cell);

/// Spherical length (radius-1/2 sphere, density 1/(1 + |p|^2)) of the half line
/// {(t, y, z) : t >= x}.
double spherical_ray_length(double x, double y, double z);

using SquareMap = std::function<Point3(const Point2&)>;

/// Sampled over-estimate of the bi-Lipschitz constant of `map` on Q, with a
/// 1.05 safety factor. Combines global pairs, close pairs and finite-difference
/// Jacobian singular values off the nonsmooth diagonals. Deterministic in seed.
/// Requires n_samples >= 10^4.
double estimate_bilipschitz_constant(std::size_t n_samples, std::uint64_t seed,
                                     const SquareMap& map = square_to_hemisphere);

inline constexpr double kLipschitzSafetyFactor = 1.05;

}  // namespace zorich
