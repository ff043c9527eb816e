#include "zorich/hairs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "zorich/error.hpp"

namespace zorich {

std::vector<double> default_t_grid(double t_min, std::size_t n, double span) {
  if (n < 2) throw DomainError("default_t_grid: need at least 2 samples");
  if (!(span > 0.0) || !std::isfinite(t_min)) throw DomainError("default_t_grid: need finite t_min and span > 0");
  std::vector<double> grid;
  grid.reserve(n);
  grid.push_back(t_min);
  if (n == 2) {
    grid.push_back(t_min + span);
    return grid;
  }
  const double last = static_cast<double>(n - 2);
  for (std::size_t i = 1; i < n; ++i) {
    const double exponent = -3.0 * (last - static_cast<double>(i - 1)) / last;
    grid.push_back(t_min + span * std::pow(10.0, exponent));
  }
  grid.back() = t_min + span;
  return grid;
}

double spherical_polyline_length(const std::vector<Point3>& points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const Point3 mid = 0.5 * (points[i - 1] + points[i]);
    const double m = norm(mid);
    total += distance(points[i - 1], points[i]) / (1.0 + m * m);
  }
  return total;
}

double hair_length(const Hair& hair) {
  if (hair.samples.size() < 2) throw DomainError("hair_length: need at least 2 samples");
  std::vector<Point3> pts;
  pts.reserve(hair.samples.size());
  for (const auto& s : hair.samples) pts.push_back(s.point);
  return spherical_polyline_length(pts);
}

Hair trace_hair(const Address& address, const std::vector<double>& t_grid, int depth, const Params& params,
                double tol) {
  if (t_grid.empty()) throw DomainError("trace_hair: empty t grid");
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw DomainError("trace_hair: t grid must be sorted");
  Hair hair;
  hair.address = address;
  hair.t_min = t_min(address, depth, tol, params);
  if (std::isinf(hair.t_min)) throw NoHair("trace_hair: address has no hair below the search cap");

  std::vector<double> heights;
  heights.reserve(t_grid.size() + 1);
  if (t_grid.front() > hair.t_min) heights.push_back(hair.t_min);
  for (double t : t_grid) {
    if (!heights.empty() && t <= heights.back()) continue;
    heights.push_back(t);
  }
  hair.samples.reserve(heights.size());
  for (double t : heights) {
    if (!brush_membership(t, address, depth, params)) {
      throw DomainError("trace_hair: t = " + std::to_string(t) + " is below the hair (t_min = " +
                        std::to_string(hair.t_min) + ")");
    }
    hair.samples.push_back({t, phi(t, address, depth, params)});
  }
  if (hair.samples.size() >= 2) hair.polyline_length = hair_length(hair);
  const Point3& top = hair.samples.back().point;
  hair.tail_length = spherical_ray_length(top.x3, top.x1, top.x2);
  hair.length_spherical = std::min(hair.polyline_length + hair.tail_length, std::numbers::pi);
  return hair;
}

Hair trace_hair(const Address& address, int depth, const Params& params, double tol) {
  const double start = t_min(address, depth, tol, params);
  if (std::isinf(start)) throw NoHair("trace_hair: address has no hair below the search cap");
  return trace_hair(address, default_t_grid(start), depth, params, tol);
}

Point3 endpoint(const Address& address, int depth, double tol, const Params& params) {
  const double start = t_min(address, depth, tol, params);
  if (std::isinf(start)) throw NoHair("endpoint: address has no hair below the search cap");
  return phi(start, address, depth, params);
}

Point3 embed_H(double x, double y, double z) {
  constexpr double pi = std::numbers::pi;
  return {std::atan(y) / pi + 0.5, std::atan(z) / pi + 0.5, spherical_ray_length(x, y, z) / pi};
}

DensityProbe density_probe(const Address& address, double c, int depth, const Params& params,
                           const DensityOptions& options) {
  const Hair base = trace_hair(address, depth, params, options.tol);
  const double full = hair_length(base);
  if (!(c > 0.0 && c < full)) {
    throw DomainError("density_probe: need 0 < c < hair length " + std::to_string(full));
  }
  DensityProbe out;
  out.c = c;
  out.epsilon = options.epsilon < 0.0 ? 0.25 * c : options.epsilon;
  out.top_height = base.samples.back().t;

  // Walk down from the top until the length above reaches c.
  double above = 0.0;
  out.truncation_t = base.samples.front().t;
  for (std::size_t j = base.samples.size() - 1; j > 0; --j) {
    const double seg = spherical_polyline_length({base.samples[j - 1].point, base.samples[j].point});
    if (above + seg >= c) {
      const double fraction = seg > 0.0 ? (c - above) / seg : 0.0;
      out.truncation_t = base.samples[j].t - fraction * (base.samples[j].t - base.samples[j - 1].t);
      break;
    }
    above += seg;
  }
  out.truncation_point = phi(out.truncation_t, address, depth, params);

  const std::array<Cell, 4> directions{Cell{1, 1}, Cell{1, -1}, Cell{-1, 1}, Cell{-1, -1}};
  const int last_index = std::min<int>(options.max_index, depth);
  for (int i = 1; i <= last_index && static_cast<std::size_t>(i) < address.size(); ++i) {
    std::optional<DensityWitness> best;
    bool feasible = false;
    for (const Cell& dir : directions) {
      auto neighbor = [&](std::int64_t m) {
        Address a = address;
        a.symbols[static_cast<std::size_t>(i)].r1 += m * dir.r1;
        a.symbols[static_cast<std::size_t>(i)].r2 += m * dir.r2;
        return a;
      };
      auto height = [&](std::int64_t m) { return t_min(neighbor(m), depth, options.tol, params); };

      // Smallest m with t_min >= truncation height: doubling, then bisection.
      std::int64_t hi = 1;
      while (hi <= options.max_multiplier && height(hi) < out.truncation_t) hi *= 2;
      if (hi > options.max_multiplier) continue;
      std::int64_t lo = hi / 2;
      while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (height(mid) >= out.truncation_t) hi = mid; else lo = mid;
      }
      feasible = true;

      for (std::int64_t m : {lo, hi}) {
        if (m < 1) continue;
        DensityWitness w;
        w.index = static_cast<std::size_t>(i);
        w.direction = dir;
        w.multiplier = m;
        w.address = neighbor(m);
        w.t_min = height(m);
        if (!std::isfinite(w.t_min) || w.t_min >= out.top_height) continue;
        const Hair h = trace_hair(w.address, default_t_grid(w.t_min, options.samples, out.top_height - w.t_min),
                                  depth, params, options.tol);
        w.length = hair_length(h);
        if (std::abs(w.length - c) > out.epsilon) continue;
        w.endpoint = h.samples.front().point;
        w.distance = distance(w.endpoint, out.truncation_point);
        if (!best || w.distance < best->distance) best = std::move(w);
      }
    }
    if (feasible) out.last_feasible_index = i;
    if (best) out.witnesses.push_back(std::move(*best));
  }
  return out;
}

}  // namespace zorich
