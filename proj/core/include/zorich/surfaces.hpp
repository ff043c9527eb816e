#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "zorich/geometry.hpp"

namespace zorich {

/// Exact rationals for the hairy-square tree. Depth is capped at 8, where
/// every denominator stays below 2^31.
using Q64 = boost::rational<std::int64_t>;

/// Axis-aligned square [x0, x0 + side] x [y0, y0 + side].
struct Square {
  Q64 x0;
  Q64 y0;
  Q64 side;
};

/// Cuboid R(n, i, j) over the square Q(n, i, j). Indices are global and
/// 0-based within the level-n grid of I^2.
struct CuboidNode {
  int level = 1;
  std::int64_t i = 0;
  std::int64_t j = 0;
  Square base;
  Q64 height;
};

/// Side of a level-n square: 1 / (3 * 5 * ... * (2n - 1)).
Q64 soshs_side(int level);

/// The level-1 cuboid I^2 x [0, 3/2].
CuboidNode soshs_root();

/// Children of a level-n cuboid, (2n+1)^2 of them in row-major order
/// (x index fastest). For n >= 2 the boundary ring gets h/(n+1), the central
/// child keeps h and the rest get n h/(n+1). The level-1 root splits into 9
/// with the central child at 3/2 and the others at 1/2.
std::vector<CuboidNode> soshs_children(const CuboidNode& node);

/// Lazy view of the levels 2..depth of the hairy-square tree.
class SoshsTree {
 public:
  explicit SoshsTree(int depth);

  int depth() const { return depth_; }
  /// 9 * prod_{n=2}^{depth-1} (2n+1)^2.
  std::uint64_t leaf_count() const;
  /// Visits every node of levels 2..depth depth-first, parents first.
  void for_each_node(const std::function<void(const CuboidNode&)>& visit) const;
  /// Visits the level-depth cuboids in depth-first order.
  void for_each_leaf(const std::function<void(const CuboidNode&)>& visit) const;

 private:
  int depth_;
};

/// Throws DomainError unless 2 <= depth <= 8.
SoshsTree soshs_build(int depth);

/// Height of the level-depth cuboid containing (x, y); points on shared
/// edges go to the lower-index child. Throws DomainError outside I^2.
Q64 soshs_length(const Q64& x, const Q64& y, int depth);

/// 1-based (k, l) child positions, one per level starting at level 2.
using LeafPath = std::vector<std::pair<int, int>>;

/// Base square of the leaf reached by `path`.
Square leaf_square(const LeafPath& path);

struct Approach {
  Q64 x;              ///< base point of the hair (leaf center)
  Q64 y;
  Q64 x_k;            ///< base point of the translated neighbor hair
  Q64 ratio;          ///< n_k / (n_k + 1)
  int parent_level = 0;  ///< n_k: level whose central child the path enters
};

/// k-th (1-based) member of the approach sequence: the path translated left
/// by one square side at the k-th level n_k >= 2 where it enters a central
/// child. Throws DomainError when the path has fewer than k such levels.
Approach approach_sequence(const LeafPath& path, int k);

// ---------------------------------------------------------------------------
// Knotted chain

using BigRational = boost::multiprecision::cpp_rational;

struct ExactPoint3 {
  BigRational x;
  BigRational y;
  BigRational z;
  friend bool operator==(const ExactPoint3&, const ExactPoint3&) = default;
};

Point3 to_double(const ExactPoint3& p);

/// [x0, x0 + side]^2 x [z0, z0 + height] (the square shares x0 and y0).
struct ExactCuboid {
  BigRational x0;
  BigRational y0;
  BigRational z0;
  BigRational side;
  BigRational height;
  BigRational top() const { return z0 + height; }
};

struct WildLevel {
  int level = 1;
  ExactCuboid box;
  std::vector<ExactPoint3> arc;  ///< knotted polyline, bottom center to top center
};

/// The 32-vertex knot template in the unit cube, coordinates in units of
/// 1/1024. A sampled trefoil cut at its highest point: one end rises to the
/// top center, the other rises, goes around the outside and enters the bottom
/// center from below.
const std::array<std::array<int, 3>, 32>& knot_template();

/// Cuboids B_1..B_levels stacked on the nested central squares, B_n at height
/// 1 - 2^{1-n} with thickness 2^{-n}, each carrying the scaled template.
/// Throws DomainError unless 1 <= levels <= 20.
std::vector<WildLevel> wild_hair_chain(int levels);

/// Exact squared distance between segments [a0, a1] and [b0, b1].
BigRational segment_distance_squared(const ExactPoint3& a0, const ExactPoint3& a1, const ExactPoint3& b0,
                                     const ExactPoint3& b1);

struct ChainCheck {
  bool chained = false;     ///< top endpoint of A_n equals bottom endpoint of A_{n+1}
  bool contained = false;   ///< interior vertices at least 1% of each extent from the faces
  bool disjoint = false;    ///< no contacts besides shared endpoints
  double template_min_distance = 0.0;  ///< least distance between non-adjacent template segments
  double min_margin = 0.0;  ///< least relative face clearance of an interior vertex
};

/// Exact checks of the chaining, containment and disjointness contracts.
ChainCheck check_wild_chain(const std::vector<WildLevel>& chain);

}  // namespace zorich
