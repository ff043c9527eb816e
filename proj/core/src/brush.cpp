#include "zorich/brush.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "zorich/error.hpp"

namespace zorich {

namespace {

// Past this log-radius lambda e^x is treated as saturated.
constexpr double kSaturationLog = 700.0;
constexpr double kFloorSlack = 1e-12;

double coord_min(std::int64_t r) {
  const double lo = 2.0 * static_cast<double>(r) - 1.0;
  const double hi = 2.0 * static_cast<double>(r) + 1.0;
  if (lo <= 0.0 && 0.0 <= hi) return 0.0;
  return std::min(std::abs(lo), std::abs(hi));
}

double coord_max(std::int64_t r) {
  return std::abs(2.0 * static_cast<double>(r)) + 1.0;
}

void require_address(const Address& address, int depth, const char* op) {
  if (depth < 0) throw DomainError(std::string(op) + ": depth must be >= 0");
  if (address.size() <= static_cast<std::size_t>(depth)) {
    throw DomainError(std::string(op) + ": address has " + std::to_string(address.size()) +
                      " symbols, need more than depth " + std::to_string(depth));
  }
}

}  // namespace

Point3 Box::center() const {
  return {2.0 * static_cast<double>(cell.r1), 2.0 * static_cast<double>(cell.r2), x + 0.5};
}

bool Box::contains(const Point3& p, double slack) const {
  const double c1 = 2.0 * static_cast<double>(cell.r1);
  const double c2 = 2.0 * static_cast<double>(cell.r2);
  const double h = slack * std::max(1.0, std::abs(p.x3));
  return std::abs(p.x1 - c1) <= 1.0 + slack && std::abs(p.x2 - c2) <= 1.0 + slack && p.x3 >= x - h &&
         p.x3 <= x + 1.0 + h;
}

double planar_min_distance(const Cell& cell) { return std::hypot(coord_min(cell.r1), coord_min(cell.r2)); }

double planar_max_distance(const Cell& cell) { return std::hypot(coord_max(cell.r1), coord_max(cell.r2)); }

NormRange box_norm_range(const Box& box) {
  const double lo = box.x;
  const double hi = box.x + 1.0;
  const double h_min = (lo <= 0.0 && 0.0 <= hi) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
  const double h_max = std::max(std::abs(lo), std::abs(hi));
  return {std::hypot(planar_min_distance(box.cell), h_min), std::hypot(planar_max_distance(box.cell), h_max)};
}

std::optional<Box> next_box(const Box& current, const Cell& next, const Params& params) {
  if (!current.cell.even()) return std::nullopt;
  const double log_r = std::log(params.lambda) + current.x;
  if (current.saturated() || log_r > kSaturationLog) {
    return Box{std::numeric_limits<double>::infinity(), next};
  }
  const double r = std::exp(log_r);
  const double d = planar_min_distance(next);
  const double q = d / r;
  const double xi = q < 1.0 ? r * std::sqrt((1.0 - q) * (1.0 + q)) : 0.0;
  if (xi < params.floor_height - kFloorSlack) return std::nullopt;
  const Box candidate{xi, next};
  if (box_norm_range(candidate).max > std::numbers::e * r) return std::nullopt;
  return candidate;
}

BoxChain box_chain(double t, const Address& address, int depth, const Params& params) {
  require_address(address, depth, "box_chain");
  BoxChain out;
  out.boxes.reserve(static_cast<std::size_t>(depth) + 1);
  out.boxes.push_back({t, address[0]});
  for (int k = 1; k <= depth; ++k) {
    const auto nb = next_box(out.boxes.back(), address[static_cast<std::size_t>(k)], params);
    if (!nb) return out;
    out.boxes.push_back(*nb);
  }
  out.complete = true;
  return out;
}

bool brush_membership(double t, const Address& address, int depth, const Params& params) {
  return box_chain(t, address, depth, params).complete;
}

double t_min(const Address& address, int depth, double tol, const Params& params, double span) {
  if (!(tol > 0.0)) throw DomainError("t_min: tol must be positive");
  double lo = params.floor_height;
  double hi = params.floor_height + span;
  if (brush_membership(lo, address, depth, params)) return lo;
  if (!brush_membership(hi, address, depth, params)) return std::numeric_limits<double>::infinity();
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (brush_membership(mid, address, depth, params)) hi = mid; else lo = mid;
  }
  return hi;
}

PhiResult phi_detailed(double t, const Address& address, int depth, const Params& params) {
  BoxChain chain = box_chain(t, address, depth, params);
  if (!chain.complete) {
    throw DomainError("phi: (t = " + std::to_string(t) + ", address) is not a brush member at depth " +
                      std::to_string(depth) + "; box " + std::to_string(chain.boxes.size()) + " is empty");
  }
  PhiResult out;
  out.boxes = std::move(chain.boxes);
  int seed = 0;
  while (seed + 1 < static_cast<int>(out.boxes.size()) && !out.boxes[static_cast<std::size_t>(seed) + 1].saturated()) {
    ++seed;
  }
  out.seed_level = seed;
  const auto top = static_cast<std::size_t>(seed);
  // Below a saturated box the exact point sits on the bottom face of R_K, at
  // the cell center, up to an error of order 1/(lambda e^{x_K}).
  const bool saturated_tail = top + 1 < out.boxes.size();
  Point3 start = out.boxes[top].center();
  if (saturated_tail) start.x3 = out.boxes[top].x;
  out.chain.assign(top + 1, Point3{});
  out.chain[top] = start;
  for (int j = seed - 1; j >= 0; --j) {
    const auto ju = static_cast<std::size_t>(j);
    out.chain[ju] = inverse_branch(out.chain[ju + 1], out.boxes[ju].cell, params);
  }
  out.point = out.chain.front();

  double log_bound = std::log(3.0);
  const double log_lambda = std::log(params.lambda);
  const double log_l = std::log(params.lipschitz);
  const double log_alpha = std::log(params.alpha);
  const int levels = saturated_tail ? seed + 1 : seed;
  for (int i = 1; i <= levels; ++i) {
    const double x_prev = out.boxes[static_cast<std::size_t>(i) - 1].x;
    log_bound += std::min(log_alpha, log_l - log_lambda - x_prev);
  }
  out.error_bound = std::exp(log_bound);
  return out;
}

Point3 phi(double t, const Address& address, int depth, const Params& params) {
  return phi_detailed(t, address, depth, params).point;
}

ForwardCheck forward_check(const PhiResult& result, const Params& params, double slack) {
  ForwardCheck out;
  out.ok = true;
  auto outside = [](const Box& b, const Point3& p) {
    const double c1 = 2.0 * static_cast<double>(b.cell.r1);
    const double c2 = 2.0 * static_cast<double>(b.cell.r2);
    const double e1 = std::max(0.0, std::abs(p.x1 - c1) - 1.0);
    const double e2 = std::max(0.0, std::abs(p.x2 - c2) - 1.0);
    const double e3 = std::max({0.0, b.x - p.x3, p.x3 - b.x - 1.0}) / std::max(1.0, std::abs(p.x3));
    return std::max({e1, e2, e3});
  };

  for (std::size_t j = 0; j < result.chain.size(); ++j) {
    const Point3& y = result.chain[j];
    out.worst_violation = std::max(out.worst_violation, outside(result.boxes[j], y));
    ++out.levels_checked;
    if (j + 1 < result.chain.size() && std::log(params.lambda) + y.x3 <= 700.0) {
      const Point3& target = result.chain[j + 1];
      const double res = distance(zorich_map(y, params), target) / std::max(1.0, norm(target));
      out.worst_residual = std::max(out.worst_residual, res);
    }
  }
  if (out.worst_violation > slack || out.worst_residual > 1e-9) out.ok = false;

  // Plain iteration: rounding at y_0 is amplified by at most lambda L e^{x3}
  // per step.
  constexpr double kUnitRoundoff = 0x1p-53;
  double amplification = kUnitRoundoff * std::max(1.0, norm(result.point));
  Point3 cur = result.point;
  for (std::size_t j = 0; j < result.boxes.size(); ++j) {
    if (amplification > slack || result.boxes[j].saturated()) break;
    if (!result.boxes[j].contains(cur, slack)) {
      out.ok = false;
      break;
    }
    out.literal_steps = static_cast<int>(j) + 1;
    if (j + 1 == result.boxes.size()) break;
    if (std::log(params.lambda) + cur.x3 > 700.0) break;
    amplification *= params.lambda * params.lipschitz * std::exp(cur.x3);
    cur = zorich_map(cur, params);
  }
  return out;
}

PsiResult psi(const Point3& w, int depth, const Params& params) {
  if (depth < 0) throw DomainError("psi: depth must be >= 0");
  constexpr double kUnitRoundoff = 0x1p-53;
  constexpr double kConditionLimit = 1e-6;
  // Above 2^80 the minimal norm of a box is independent of any symbol below 2^52.
  constexpr double kSymbolFreeLog = 60.0;
  const double log_lambda = std::log(params.lambda);

  std::vector<Point3> iterates;
  PsiResult out;
  Point3 cur = w;
  double amplification = kUnitRoundoff * std::max(1.0, norm(w));
  for (int k = 0; k <= depth; ++k) {
    if (amplification > kConditionLimit) break;
    if (!(std::abs(cur.x1) <= 0x1p52 && std::abs(cur.x2) <= 0x1p52)) break;
    if (wall_clearance(cur) < std::max(1e-9, amplification)) {
      throw BoundaryAmbiguity("psi: iterate " + std::to_string(k) + " lies within 1e-9 of a cell wall");
    }
    const Cell cell = fold(cur.x1, cur.x2).cell;
    if (!cell.even()) throw LeftJuliaShadow("psi: iterate " + std::to_string(k) + " entered an odd cell");
    if (cur.x3 < params.expansion_height) {
      throw LeftJuliaShadow("psi: iterate " + std::to_string(k) + " fell below the expansion height");
    }
    iterates.push_back(cur);
    out.address.symbols.push_back(cell);
    if (k == depth || log_lambda + cur.x3 > 700.0) break;
    amplification *= params.lambda * params.lipschitz * std::exp(cur.x3);
    cur = zorich_map(cur, params);
  }
  if (iterates.empty()) throw RangeError("psi: starting point is not representable");

  const std::size_t known = iterates.size();
  // Log of the inner radius of the unresolved tower top T_{K+1}(K+1), when
  // its height makes the unknown symbol irrelevant.
  std::optional<double> top_log_radius;
  if (known <= static_cast<std::size_t>(depth)) {
    const Point3& y = iterates.back();
    const double u3 = square_to_hemisphere(fold(y.x1, y.x2).folded).x3;
    const double log_height = log_lambda + y.x3 + std::log(u3);
    if (log_height > kSymbolFreeLog) top_log_radius = log_height + std::log1p(-std::exp(-log_height));
  }

  auto descend = [&](Box tower, std::size_t from, std::size_t k) {
    for (std::size_t j = from; j-- > 0;) {
      const NormRange range = box_norm_range(tower);
      if (std::numbers::e * range.min < range.max * (1.0 - 1e-12)) {
        throw BoxChainBroken("psi: box at level " + std::to_string(j + 1) + " of tower " + std::to_string(k) +
                             " is not inside the image of any box below it");
      }
      tower = Box{std::log(range.min) - log_lambda, out.address[j]};
    }
    return tower.x;
  };

  for (std::size_t k = 0; k < known; ++k) {
    const Box top{std::max(params.floor_height, iterates[k].x3 - 1.0), out.address[k]};
    if (!top.contains(iterates[k], 1e-12)) {
      throw BoxChainBroken("psi: iterate " + std::to_string(k) + " lies below the brush floor");
    }
    out.heights.push_back(descend(top, k, k));
  }
  if (top_log_radius) {
    const Box below{*top_log_radius - log_lambda, out.address[known - 1]};
    out.heights.push_back(descend(below, known - 1, known));
    out.unresolved_top = true;
  }
  out.depth_reached = static_cast<int>(out.heights.size()) - 1;
  out.z = out.heights.back();
  return out;
}

JuliaHeightProbe julia_height_probe(const Params& params, int depth, int max_symbol) {
  std::vector<Address> candidates;
  for (int a = -max_symbol; a <= max_symbol; ++a) {
    for (int b = -max_symbol; b <= max_symbol; ++b) {
      const Cell c{a, b};
      if (c.even()) candidates.push_back(periodic_address({c}, static_cast<std::size_t>(depth) + 1));
    }
  }
  return [params, depth, candidates](double height) {
    return std::any_of(candidates.begin(), candidates.end(), [&](const Address& a) {
      return brush_membership(height, a, depth, params);
    });
  };
}

}  // namespace zorich
