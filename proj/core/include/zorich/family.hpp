#pragma once

#include <Eigen/Core>

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "zorich/geometry.hpp"

namespace zorich {

/// Certified parameter bundle for the family lambda * Z in the small-lambda
/// regime. Immutable once built by certify_params.
struct Params {
  double lipschitz = 0.0;         ///< over-estimate of the bi-Lipschitz constant of the square map
  double lambda = 0.0;            ///< family parameter
  double alpha = 0.0;             ///< inverse-branch contraction factor
  double expansion_height = 0.0;  ///< log(L / (lambda * alpha)); the map expands above it
  double floor_height = 0.0;      ///< lowest admissible box height for the brush
};

/// exp(-(log L + L)) = exp(-L) / L. Throws DomainError for L < 1.
double max_lambda(double lipschitz);

/// Smallest alpha (grid step 1e-3, bisection to 1e-6) with
/// lambda < (L/alpha) exp(-L/alpha). Requires 0 < lambda < max_lambda(L).
double contraction_factor(double lambda, double lipschitz);

/// true iff lambda < (L/alpha) exp(-L/alpha); evaluated in log space.
bool contraction_admissible(double lambda, double lipschitz, double alpha);

double expansion_height(double lambda, double lipschitz, double alpha);

/// Builds and validates the bundle with floor_height = expansion height.
/// Throws RegimeError naming the violated inequality when lambda is outside
/// (0, max_lambda(L)).
Params certify_params(double lipschitz, double lambda);

/// Checks every Params invariant; throws RegimeError on the first failure.
void validate(const Params& params);

/// Decides whether some Julia point is found at height c.
using JuliaHeightProbe = std::function<bool(double height)>;

struct FloorEstimate {
  double floor_height = 0.0;
  std::optional<double> julia_height;  ///< least grid height accepted by the probe
  bool budget_exhausted = false;       ///< warning flag: fell back to the expansion height
};

/// Brush floor: the expansion height, raised to max(J - 1, M) when `probe`
/// accepts a grid height J = M + k * step within `scan_budget` probes.
FloorEstimate brush_floor(const Params& params, const JuliaHeightProbe& probe,
                          int scan_budget, double step = 0.25);

/// lambda * Z(x) on all of R^3 via the reflection fold. Throws RangeError when
/// the norm lambda * e^{x3} overflows.
Point3 zorich_map(const Point3& x, const Params& params);

/// Central finite-difference Jacobian, step 1e-6 * max(1, |x|). Throws
/// NonsmoothPoint near fold lines or the disk-map diagonals.
Eigen::Matrix3d zorich_jacobian(const Point3& x, const Params& params);

/// Distance from the folded point to the nonsmooth locus (fold lines and
/// diagonals |w1| = |w2|), in the original coordinates.
double smooth_clearance(const Point3& x);

/// Descending singular values.
std::array<double, 3> singular_values(const Eigen::Matrix3d& m);

/// Branch of the inverse of lambda*Z onto closure(P(cell)) x R. Even cells
/// accept the closed upper half-space, odd cells the closed lower one.
Point3 inverse_branch(const Point3& y, const Cell& cell, const Params& params);

struct Orbit {
  std::vector<Point3> points;  ///< x, Z(x), ..., as far as representable
  bool overflowed = false;
};

Orbit orbit(const Point3& x, int steps, const Params& params);

enum class PointClass { Escaping, Converging, Undecided };

/// Escaping once an iterate reaches escape_height (default floor + 50),
/// Converging once consecutive iterates agree to 1e-9.
PointClass classify_point(const Point3& x, const Params& params, int max_iter,
                          std::optional<double> escape_height = std::nullopt);

const char* to_string(PointClass c);

}  // namespace zorich
