#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "zorich/family.hpp"
#include "zorich/geometry.hpp"
#include "zorich/symbolic.hpp"

namespace zorich {

/// S(x, cell) = closure(P(cell)) x [x, x + 1]. An infinite x marks a box
/// whose height exceeds double range (see next_box).
struct Box {
  double x = 0.0;
  Cell cell;

  bool saturated() const { return std::isinf(x); }
  Point3 center() const;
  /// Planar slack is absolute; height slack is relative to max(1, |x3|).
  bool contains(const Point3& p, double slack = 0.0) const;
  friend bool operator==(const Box&, const Box&) = default;
};

struct NormRange {
  double min = 0.0;
  double max = 0.0;
};

/// Distance from the origin to closure(P(cell)) and to its farthest corner.
double planar_min_distance(const Cell& cell);
double planar_max_distance(const Cell& cell);

/// Exact min and max of the Euclidean norm over the closed box.
NormRange box_norm_range(const Box& box);

/// R_{k+1} from R_k: the lowest box over `next` inside the image half-shell
/// lambda e^{R.x} <= |u| <= lambda e^{R.x + 1}, or nullopt when that box sits
/// below the floor, does not fit, or R is odd (its image is the lower
/// half-shell). The lowest height has the closed form sqrt(r^2 - d^2) with
/// r the inner radius and d the planar distance of `next`. Once
/// lambda e^{R.x} leaves double range the result is saturated: every later box
/// over cells with symbols below 2^52 exists, and its height is +inf.
std::optional<Box> next_box(const Box& current, const Cell& next, const Params& params);

struct BoxChain {
  std::vector<Box> boxes;  ///< R_0, ..., R_K
  bool complete = false;   ///< K == requested depth
};

/// Iterates next_box from R_0 = S(t, address[0]), stopping at the first empty box.
BoxChain box_chain(double t, const Address& address, int depth, const Params& params);

/// true iff R_1, ..., R_depth are all nonempty. Requires an address with more
/// than `depth` symbols.
bool brush_membership(double t, const Address& address, int depth, const Params& params);

/// Least member height in [p_lambda, p_lambda + span] to within tol, or +inf.
double t_min(const Address& address, int depth, double tol, const Params& params, double span = 100.0);

struct PhiResult {
  Point3 point;                ///< approximation of the brush point
  double error_bound = 0.0;    ///< certified distance to the exact point
  int seed_level = 0;          ///< index K of the deepest finite box
  std::vector<Box> boxes;      ///< R_0, ..., R_depth (saturated tail included)
  std::vector<Point3> chain;   ///< pullback points y_0 = point, ..., y_K = seed
};

/// Pulls a seed in the deepest finite box R_K back through the inverse
/// branches. The seed is the center of R_K, or the center of its bottom face
/// when R_{K+1} is saturated (the pullback of R_{K+1} is then within
/// 1/(lambda e^{x_K}) of that face). The certified bound is
/// 3 prod_i min(alpha, L_hat / (lambda e^{x_{i-1}})) over the levels used,
/// at most 3 alpha^K. Throws DomainError when (t, address) is not a member at
/// `depth`.
PhiResult phi_detailed(double t, const Address& address, int depth, const Params& params);
Point3 phi(double t, const Address& address, int depth, const Params& params);

struct ForwardCheck {
  int levels_checked = 0;       ///< chain points tested against their boxes
  int literal_steps = 0;        ///< steps of plain forward iteration that stay well conditioned
  double worst_violation = 0.0; ///< largest distance outside a box (0 when all contained)
  double worst_residual = 0.0;  ///< largest relative |Z(y_j) - y_{j+1}|
  bool ok = false;
};

/// Checks y_j in R_j and Z(y_j) = y_{j+1} along the pullback chain, then
/// iterates Z literally from the result while rounding amplification stays
/// below `slack`, checking Z^j(y_0) in R_j.
ForwardCheck forward_check(const PhiResult& result, const Params& params, double slack = 1e-6);

struct PsiResult {
  double z = 0.0;                ///< brush height z_K
  Address address;               ///< resolved itinerary symbols
  std::vector<double> heights;   ///< z_0, ..., z_K
  int depth_reached = 0;         ///< K
  bool unresolved_top = false;   ///< tower K uses a height-only top box
};

/// Brush coordinates of w. Symbols are read off the forward orbit while
/// rounding amplification stays below 1e-6 (in double precision this is one
/// or two steps, since heights grow like towers of exponentials). If the next
/// iterate is higher than 2^80, one more tower is built from its height alone:
/// the minimal norm of its box then does not depend on the unknown symbol.
/// Itinerary failures propagate; a broken backward containment throws
/// BoxChainBroken.
PsiResult psi(const Point3& w, int depth, const Params& params);

/// Accepts a height when some period-1 even address with symbols bounded by
/// `max_symbol` is a member at `depth`.
JuliaHeightProbe julia_height_probe(const Params& params, int depth = 20, int max_symbol = 2);

}  // namespace zorich
