#pragma once

#include <cstdint>
#include <vector>

#include "zorich/brush.hpp"

namespace zorich {

struct HairSample {
  double t = 0.0;
  Point3 point;
};

/// A traced hair: phi along a grid of brush heights starting at t_min.
struct Hair {
  Address address;
  double t_min = 0.0;
  std::vector<HairSample> samples;  ///< strictly increasing in t
  double polyline_length = 0.0;     ///< spherical length of the sampled polyline
  double tail_length = 0.0;         ///< estimate for the part above the last sample
  double length_spherical = 0.0;    ///< polyline + tail, capped at pi
};

/// t_min followed by 63 (n - 1) heights whose offsets from t_min are spaced
/// geometrically between span/1000 and span.
std::vector<double> default_t_grid(double t_min, std::size_t n = 64, double span = 5.0);

/// Samples phi on `t_grid`, prepending t_min when the grid starts above it.
/// Throws DomainError naming the first height that is not a member.
Hair trace_hair(const Address& address, const std::vector<double>& t_grid, int depth, const Params& params,
                double tol = 1e-9);

/// trace_hair on default_t_grid(t_min).
Hair trace_hair(const Address& address, int depth, const Params& params, double tol = 1e-9);

/// phi(t_min). Throws NoHair when t_min is infinite.
Point3 endpoint(const Address& address, int depth, double tol, const Params& params);

/// Length of a polyline under the density 1/(1 + |p|^2), midpoint rule per segment.
double spherical_polyline_length(const std::vector<Point3>& points);

/// Polyline length of the samples. Throws DomainError for fewer than 2 samples.
double hair_length(const Hair& hair);

/// (arctan(y)/pi + 1/2, arctan(z)/pi + 1/2, spherical_ray_length(x, y, z)/pi).
Point3 embed_H(double x, double y, double z);

struct DensityOptions {
  int max_index = 10;            ///< highest symbol index to modify
  double epsilon = -1.0;         ///< length tolerance; negative means c / 4
  double tol = 1e-9;             ///< t_min bisection tolerance
  std::size_t samples = 64;      ///< grid size for neighbor hairs
  std::int64_t max_multiplier = std::int64_t{1} << 48;
};

struct DensityWitness {
  std::size_t index = 0;         ///< modified symbol position
  Cell direction;                ///< one of (+-1, +-1)
  std::int64_t multiplier = 0;   ///< symbol index moved by multiplier * direction
  Address address;
  double t_min = 0.0;
  Point3 endpoint;
  double length = 0.0;           ///< spherical length up to the common top height
  double distance = 0.0;         ///< |endpoint - truncation point|
};

struct DensityProbe {
  double c = 0.0;
  double epsilon = 0.0;
  double top_height = 0.0;       ///< common truncation height of all hairs
  double truncation_t = 0.0;     ///< brush height of the truncation point
  Point3 truncation_point;       ///< point of the base hair with length c above it
  std::vector<DensityWitness> witnesses;  ///< best witness per index, increasing index
  int last_feasible_index = 0;   ///< deepest index where a search was possible
};

/// Finite-scale endpoint-density experiment. All hairs are cut at the top of
/// the base hair's default grid. For each index i the probe moves symbol i of
/// the base address by m * (+-1, +-1) (an even-lattice move, i.e. +-1 on one
/// Farey coordinate), choosing m so that the neighbor's t_min is as close as
/// possible to the truncation height, and keeps the closest neighbor whose
/// truncated length is within epsilon of c. Throws DomainError unless
/// 0 < c < hair_length of the base hair.
DensityProbe density_probe(const Address& address, double c, int depth, const Params& params,
                           const DensityOptions& options = {});

}  // namespace zorich
