#include "zorich/family.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zorich/error.hpp"

namespace zorich {

namespace {

// log(DBL_MAX) ~ 709.78
constexpr double kMaxLogNorm = 709.0;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double max_lambda(double lipschitz) {
  if (!(lipschitz >= 1.0)) throw DomainError("max_lambda: L must be >= 1, got " + fmt(lipschitz));
  return std::exp(-lipschitz) / lipschitz;
}

bool contraction_admissible(double lambda, double lipschitz, double alpha) {
  if (!(alpha > 0.0)) return false;
  const double u = lipschitz / alpha;
  return std::log(lambda) < std::log(u) - u;
}

double contraction_factor(double lambda, double lipschitz) {
  const double cap = max_lambda(lipschitz);
  if (!(lambda > 0.0 && lambda < cap)) {
    throw RegimeError("contraction_factor: need 0 < lambda < exp(-(log L + L)) = " + fmt(cap) +
                      ", got lambda = " + fmt(lambda));
  }
  constexpr double kGrid = 1e-3;
  constexpr double kTol = 1e-6;
  double lo = 0.0;
  double hi = -1.0;
  for (int k = 1; k <= 999; ++k) {
    const double a = k * kGrid;
    if (contraction_admissible(lambda, lipschitz, a)) {
      hi = a;
      break;
    }
    lo = a;
  }
  if (hi < 0.0) {
    // Only reachable for L = 1 with lambda just below the cap.
    hi = std::nextafter(1.0, 0.0);
    if (!contraction_admissible(lambda, lipschitz, hi)) {
      throw InternalError("contraction_factor: no admissible alpha in (0, 1)");
    }
  }
  while (hi - lo > kTol) {
    const double mid = 0.5 * (lo + hi);
    if (contraction_admissible(lambda, lipschitz, mid)) hi = mid; else lo = mid;
  }
  return hi;
}

double expansion_height(double lambda, double lipschitz, double alpha) {
  return std::log(lipschitz / (lambda * alpha));
}

void validate(const Params& p) {
  if (!(p.lipschitz > 1.0)) throw RegimeError("L_hat > 1 violated: L_hat = " + fmt(p.lipschitz));
  const double cap = max_lambda(p.lipschitz);
  if (!(p.lambda > 0.0 && p.lambda < cap)) {
    throw RegimeError("0 < lambda < exp(-(log L_hat + L_hat)) violated: lambda = " + fmt(p.lambda) +
                      ", bound = " + fmt(cap));
  }
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw RegimeError("0 < alpha < 1 violated: alpha = " + fmt(p.alpha));
  if (!contraction_admissible(p.lambda, p.lipschitz, p.alpha)) {
    throw RegimeError("lambda < exp(-L_hat/alpha) * L_hat/alpha violated for alpha = " + fmt(p.alpha));
  }
  const double m = expansion_height(p.lambda, p.lipschitz, p.alpha);
  if (std::abs(p.expansion_height - m) > 1e-12 * std::max(1.0, std::abs(m))) {
    throw RegimeError("M = log(L_hat / (lambda alpha)) violated: M = " + fmt(p.expansion_height));
  }
  if (!(p.floor_height >= p.expansion_height && p.floor_height > 1.0)) {
    throw RegimeError("p_lambda >= M and p_lambda > 1 violated: p_lambda = " + fmt(p.floor_height));
  }
}

Params certify_params(double lipschitz, double lambda) {
  if (!(lipschitz > 1.0)) throw RegimeError("L_hat > 1 violated: L_hat = " + fmt(lipschitz));
  const double cap = max_lambda(lipschitz);
  if (!(lambda > 0.0 && lambda < cap)) {
    throw RegimeError("0 < lambda < exp(-(log L_hat + L_hat)) violated: lambda = " + fmt(lambda) +
                      " but exp(-(log L_hat + L_hat)) = " + fmt(cap));
  }
  Params p;
  p.lipschitz = lipschitz;
  p.lambda = lambda;
  p.alpha = contraction_factor(lambda, lipschitz);
  p.expansion_height = expansion_height(lambda, lipschitz, p.alpha);
  p.floor_height = p.expansion_height;
  validate(p);
  return p;
}

FloorEstimate brush_floor(const Params& params, const JuliaHeightProbe& probe, int scan_budget,
                          double step) {
  FloorEstimate out;
  out.floor_height = params.expansion_height;
  if (!probe || scan_budget <= 0) {
    out.budget_exhausted = static_cast<bool>(probe);
    return out;
  }
  for (int k = 0; k < scan_budget; ++k) {
    const double c = params.expansion_height + k * step;
    if (probe(c)) {
      out.julia_height = c;
      out.floor_height = std::max(c - 1.0, params.expansion_height);
      return out;
    }
  }
  out.budget_exhausted = true;
  return out;
}

Point3 zorich_map(const Point3& x, const Params& params) {
  if (!std::isfinite(x.x3)) throw DomainError("zorich_map: non-finite height");
  const double log_norm = std::log(params.lambda) + x.x3;
  if (log_norm > kMaxLogNorm) {
    throw RangeError("zorich_map: lambda * exp(x3) overflows at x3 = " + fmt(x.x3));
  }
  const FoldResult f = fold(x.x1, x.x2);
  const Point3 u = square_to_hemisphere(f.folded);
  const double scale = std::exp(log_norm);
  return {scale * u.x1, scale * u.x2, scale * f.parity * u.x3};
}

double smooth_clearance(const Point3& x) {
  const Point2 w = fold(x.x1, x.x2).folded;
  const double a = std::abs(w.x1);
  const double b = std::abs(w.x2);
  return std::min({1.0 - a, 1.0 - b, std::abs(a - b) / std::numbers::sqrt2});
}

Eigen::Matrix3d zorich_jacobian(const Point3& x, const Params& params) {
  const double step = 1e-6 * std::max(1.0, norm(x));
  const double needed = std::max(1e-6, 2.0 * step);
  const double clearance = smooth_clearance(x);
  if (clearance < needed) {
    throw NonsmoothPoint("zorich_jacobian: point within " + fmt(clearance) +
                         " of a fold line or diagonal (need " + fmt(needed) + ")");
  }
  Eigen::Matrix3d jac;
  for (int c = 0; c < 3; ++c) {
    Point3 up = x;
    Point3 dn = x;
    double* u = c == 0 ? &up.x1 : c == 1 ? &up.x2 : &up.x3;
    double* d = c == 0 ? &dn.x1 : c == 1 ? &dn.x2 : &dn.x3;
    *u += step;
    *d -= step;
    const Point3 diff = zorich_map(up, params) - zorich_map(dn, params);
    jac(0, c) = diff.x1 / (2.0 * step);
    jac(1, c) = diff.x2 / (2.0 * step);
    jac(2, c) = diff.x3 / (2.0 * step);
  }
  return jac;
}

std::array<double, 3> singular_values(const Eigen::Matrix3d& m) {
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(m).singularValues();
  return {sv(0), sv(1), sv(2)};
}

Point3 inverse_branch(const Point3& y, const Cell& cell, const Params& params) {
  const double n = norm(y);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("inverse_branch: y must be nonzero and finite");
  if (cell.even() && y.x3 < 0.0) {
    throw DomainError("inverse_branch: even cell needs y in the closed upper half-space");
  }
  if (!cell.even() && y.x3 > 0.0) {
    throw DomainError("inverse_branch: odd cell needs y in the closed lower half-space");
  }
  const Point3 u{y.x1 / n, y.x2 / n, std::abs(y.x3) / n};
  const Point2 w = hemisphere_to_square(u);
  const Point2 p = unfold(w, cell);
  return {p.x1, p.x2, std::log(n) - std::log(params.lambda)};
}

Orbit orbit(const Point3& x, int steps, const Params& params) {
  if (steps < 0) throw DomainError("orbit: steps must be >= 0");
  Orbit out;
  out.points.reserve(static_cast<std::size_t>(steps) + 1);
  out.points.push_back(x);
  for (int k = 0; k < steps; ++k) {
    try {
      out.points.push_back(zorich_map(out.points.back(), params));
    } catch (const RangeError&) {
      out.overflowed = true;
      break;
    }
  }
  return out;
}

PointClass classify_point(const Point3& x, const Params& params, int max_iter,
                          std::optional<double> escape_height) {
  const double escape = escape_height.value_or(params.floor_height + 50.0);
  Point3 cur = x;
  for (int k = 0; k < max_iter; ++k) {
    if (cur.x3 >= escape) return PointClass::Escaping;
    Point3 next;
    try {
      next = zorich_map(cur, params);
    } catch (const RangeError&) {
      return PointClass::Escaping;
    }
    if (distance(next, cur) < 1e-9) return PointClass::Converging;
    cur = next;
  }
  if (max_iter > 0 && cur.x3 >= escape) return PointClass::Escaping;
  return PointClass::Undecided;
}

const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::Escaping: return "Escaping";
    case PointClass::Converging: return "Converging";
    case PointClass::Undecided: return "Undecided";
  }
  return "Undecided";
}

}  // namespace zorich
