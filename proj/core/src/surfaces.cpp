#include "zorich/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <initializer_list>
#include <string>

#include "zorich/error.hpp"

namespace zorich {

namespace {

constexpr int kMaxSoshsDepth = 8;
constexpr int kMaxWildLevels = 20;

// floor(q) for a normalized rational with positive denominator.
std::int64_t floor_q(const Q64& q) {
  const std::int64_t n = q.numerator();
  const std::int64_t d = q.denominator();
  std::int64_t f = n / d;
  if (n % d != 0 && n < 0) --f;
  return f;
}

std::int64_t ceil_q(const Q64& q) { return -floor_q(-q); }

void require_level(int level) {
  if (level < 1 || level > kMaxSoshsDepth + 1) {
    throw DomainError("soshs: level " + std::to_string(level) + " outside [1, " +
                      std::to_string(kMaxSoshsDepth + 1) + "]");
  }
}

void visit_subtree(const CuboidNode& node, int depth, const std::function<void(const CuboidNode&)>& visit,
                   bool leaves_only) {
  if (node.level >= 2 && (!leaves_only || node.level == depth)) visit(node);
  if (node.level == depth) return;
  for (const CuboidNode& child : soshs_children(node)) visit_subtree(child, depth, visit, leaves_only);
}

// Local child index along one axis; shared edges go to the lower child.
std::int64_t child_index(const Q64& coordinate, const Q64& origin, const Q64& side, std::int64_t count) {
  const std::int64_t k = ceil_q((coordinate - origin) / side) - 1;
  return std::clamp<std::int64_t>(k, 0, count - 1);
}

}  // namespace

Q64 soshs_side(int level) {
  require_level(level);
  std::int64_t denominator = 1;
  for (int m = 1; m < level; ++m) denominator *= 2 * m + 1;
  return Q64(1, denominator);
}

CuboidNode soshs_root() {
  CuboidNode root;
  root.level = 1;
  root.base = {Q64(0), Q64(0), Q64(1)};
  root.height = Q64(3, 2);
  return root;
}

std::vector<CuboidNode> soshs_children(const CuboidNode& node) {
  const int n = node.level;
  if (n < 1 || n > kMaxSoshsDepth) {
    throw DomainError("soshs_children: level " + std::to_string(n) + " outside [1, " +
                      std::to_string(kMaxSoshsDepth) + "]");
  }
  const std::int64_t per_side = 2 * n + 1;
  const Q64 side = node.base.side / per_side;
  std::vector<CuboidNode> out;
  out.reserve(static_cast<std::size_t>(per_side * per_side));
  for (std::int64_t b = 0; b < per_side; ++b) {
    for (std::int64_t a = 0; a < per_side; ++a) {
      CuboidNode child;
      child.level = n + 1;
      child.i = node.i * per_side + a;
      child.j = node.j * per_side + b;
      child.base = {node.base.x0 + side * a, node.base.y0 + side * b, side};
      const bool central = a == n && b == n;
      const bool ring = a == 0 || b == 0 || a == per_side - 1 || b == per_side - 1;
      if (n == 1) {
        child.height = central ? Q64(3, 2) : Q64(1, 2);
      } else if (central) {
        child.height = node.height;
      } else if (ring) {
        child.height = node.height / (n + 1);
      } else {
        child.height = node.height * n / (n + 1);
      }
      out.push_back(child);
    }
  }
  return out;
}

SoshsTree::SoshsTree(int depth) : depth_(depth) {
  if (depth < 2 || depth > kMaxSoshsDepth) {
    throw DomainError("soshs: depth " + std::to_string(depth) + " outside [2, " + std::to_string(kMaxSoshsDepth) +
                      "]");
  }
}

std::uint64_t SoshsTree::leaf_count() const {
  std::uint64_t count = 9;
  for (int n = 2; n < depth_; ++n) count *= static_cast<std::uint64_t>((2 * n + 1) * (2 * n + 1));
  return count;
}

void SoshsTree::for_each_node(const std::function<void(const CuboidNode&)>& visit) const {
  visit_subtree(soshs_root(), depth_, visit, false);
}

void SoshsTree::for_each_leaf(const std::function<void(const CuboidNode&)>& visit) const {
  visit_subtree(soshs_root(), depth_, visit, true);
}

SoshsTree soshs_build(int depth) { return SoshsTree(depth); }

Q64 soshs_length(const Q64& x, const Q64& y, int depth) {
  const SoshsTree tree(depth);
  if (x < 0 || x > 1 || y < 0 || y > 1) throw DomainError("soshs_length: point outside the unit square");
  CuboidNode node = soshs_root();
  while (node.level < tree.depth()) {
    const std::int64_t per_side = 2 * node.level + 1;
    const Q64 side = node.base.side / per_side;
    const std::int64_t a = child_index(x, node.base.x0, side, per_side);
    const std::int64_t b = child_index(y, node.base.y0, side, per_side);
    node = soshs_children(node)[static_cast<std::size_t>(b * per_side + a)];
  }
  return node.height;
}

Square leaf_square(const LeafPath& path) {
  if (path.empty() || path.size() + 1 > static_cast<std::size_t>(kMaxSoshsDepth)) {
    throw DomainError("leaf_square: path length must be in [1, " + std::to_string(kMaxSoshsDepth - 1) + "]");
  }
  Square square{Q64(0), Q64(0), Q64(1)};
  for (std::size_t m = 0; m < path.size(); ++m) {
    const int per_side = 2 * static_cast<int>(m + 1) + 1;
    const auto [k, l] = path[m];
    if (k < 1 || k > per_side || l < 1 || l > per_side) {
      throw DomainError("leaf_square: position " + std::to_string(m) + " outside [1, " + std::to_string(per_side) +
                        "]");
    }
    square.side /= per_side;
    square.x0 += square.side * (k - 1);
    square.y0 += square.side * (l - 1);
  }
  return square;
}

Approach approach_sequence(const LeafPath& path, int k) {
  if (k < 1) throw DomainError("approach_sequence: k must be >= 1");
  const Square leaf = leaf_square(path);
  int seen = 0;
  for (std::size_t m = 1; m < path.size(); ++m) {
    const int n = static_cast<int>(m + 1);
    if (path[m].first != n + 1 || path[m].second != n + 1) continue;
    if (++seen < k) continue;
    Approach out;
    out.x = leaf.x0 + leaf.side / 2;
    out.y = leaf.y0 + leaf.side / 2;
    out.x_k = out.x - soshs_side(n + 1);
    out.ratio = Q64(n, n + 1);
    out.parent_level = n;
    return out;
  }
  throw DomainError("approach_sequence: path enters fewer than " + std::to_string(k) + " central children");
}

// ---------------------------------------------------------------------------

Point3 to_double(const ExactPoint3& p) {
  return {static_cast<double>(p.x), static_cast<double>(p.y), static_cast<double>(p.z)};
}

const std::array<std::array<int, 3>, 32>& knot_template() {
  static const std::array<std::array<int, 3>, 32> vertices{{
      {512, 512, 0},   {512, 512, 154}, {911, 742, 154}, {911, 742, 717}, {752, 651, 717}, {752, 651, 569},
      {819, 512, 461}, {752, 373, 352}, {614, 335, 307}, {512, 380, 352}, {461, 423, 461}, {397, 446, 569},
      {307, 512, 614}, {272, 651, 569}, {358, 778, 461}, {512, 789, 352}, {614, 689, 307}, {627, 578, 352},
      {614, 512, 461}, {627, 446, 569}, {614, 335, 614}, {512, 235, 569}, {358, 246, 461}, {272, 373, 352},
      {307, 512, 307}, {397, 578, 352}, {461, 601, 461}, {512, 644, 569}, {614, 689, 614}, {614, 689, 870},
      {512, 512, 870}, {512, 512, 1024},
  }};
  return vertices;
}

std::vector<WildLevel> wild_hair_chain(int levels) {
  if (levels < 1 || levels > kMaxWildLevels) {
    throw DomainError("wild_hair_chain: levels " + std::to_string(levels) + " outside [1, " +
                      std::to_string(kMaxWildLevels) + "]");
  }
  std::vector<WildLevel> chain;
  chain.reserve(static_cast<std::size_t>(levels));
  BigRational side = 1;
  BigRational z0 = 0;
  BigRational height = BigRational(1, 2);
  for (int n = 1; n <= levels; ++n) {
    if (n > 1) side /= 2 * (n - 1) + 1;
    WildLevel level;
    level.level = n;
    level.box = {(1 - side) / 2, (1 - side) / 2, z0, side, height};
    level.arc.reserve(knot_template().size());
    for (const auto& v : knot_template()) {
      level.arc.push_back({level.box.x0 + side * BigRational(v[0], 1024),
                           level.box.y0 + side * BigRational(v[1], 1024),
                           z0 + height * BigRational(v[2], 1024)});
    }
    chain.push_back(std::move(level));
    z0 += height;
    height /= 2;
  }
  return chain;
}

namespace {

struct Vec {
  BigRational x, y, z;
};

Vec sub(const ExactPoint3& a, const ExactPoint3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
BigRational dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

BigRational point_segment_distance_squared(const ExactPoint3& p, const ExactPoint3& a, const ExactPoint3& b) {
  const Vec v = sub(b, a);
  const Vec w = sub(p, a);
  const BigRational vv = dot(v, v);
  BigRational t = vv == 0 ? BigRational(0) : dot(w, v) / vv;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  const Vec r{w.x - t * v.x, w.y - t * v.y, w.z - t * v.z};
  return dot(r, r);
}

// Consecutive segments [a, b], [b, c] meet only at b unless c folds back along [a, b].
bool folds_back(const ExactPoint3& a, const ExactPoint3& b, const ExactPoint3& c) {
  const Vec u = sub(b, a);
  const Vec v = sub(c, b);
  const Vec cross{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
  return dot(cross, cross) == 0 && dot(u, v) < 0;
}

BigRational min_z(const ExactPoint3& a, const ExactPoint3& b) { return a.z < b.z ? a.z : b.z; }
BigRational max_z(const ExactPoint3& a, const ExactPoint3& b) { return a.z < b.z ? b.z : a.z; }

// Least squared distance over non-adjacent segment pairs of one polyline; 0 on contact.
BigRational self_distance_squared(const std::vector<ExactPoint3>& arc, bool& folded) {
  folded = false;
  BigRational best = -1;
  for (std::size_t i = 0; i + 1 < arc.size(); ++i) {
    if (i + 2 < arc.size() && folds_back(arc[i], arc[i + 1], arc[i + 2])) folded = true;
    for (std::size_t j = i + 2; j + 1 < arc.size(); ++j) {
      const BigRational d = segment_distance_squared(arc[i], arc[i + 1], arc[j], arc[j + 1]);
      if (best < 0 || d < best) best = d;
    }
  }
  return best;
}

}  // namespace

BigRational segment_distance_squared(const ExactPoint3& a0, const ExactPoint3& a1, const ExactPoint3& b0,
                                     const ExactPoint3& b1) {
  BigRational best = point_segment_distance_squared(a0, b0, b1);
  for (const BigRational& d : std::initializer_list<BigRational>{point_segment_distance_squared(a1, b0, b1), point_segment_distance_squared(b0, a0, a1),
                               point_segment_distance_squared(b1, a0, a1)}) {
    if (d < best) best = d;
  }
  // Interior critical point of |w0 + s u - t v|^2 when the segments are not parallel.
  const Vec u = sub(a1, a0);
  const Vec v = sub(b1, b0);
  const Vec w0 = sub(a0, b0);
  const BigRational a = dot(u, u), b = dot(u, v), c = dot(v, v), d = dot(u, w0), e = dot(v, w0);
  const BigRational det = b * b - a * c;
  if (det != 0) {
    const BigRational s = (d * c - b * e) / det;
    const BigRational t = (b * d - a * e) / det;
    if (s >= 0 && s <= 1 && t >= 0 && t <= 1) {
      const Vec r{w0.x + s * u.x - t * v.x, w0.y + s * u.y - t * v.y, w0.z + s * u.z - t * v.z};
      const BigRational dd = dot(r, r);
      if (dd < best) best = dd;
    }
  }
  return best;
}

ChainCheck check_wild_chain(const std::vector<WildLevel>& chain) {
  ChainCheck out;
  if (chain.empty()) throw DomainError("check_wild_chain: empty chain");

  std::vector<ExactPoint3> unit;
  for (const auto& v : knot_template()) {
    unit.push_back({BigRational(v[0], 1024), BigRational(v[1], 1024), BigRational(v[2], 1024)});
  }
  bool folded = false;
  const BigRational template_min = self_distance_squared(unit, folded);
  out.template_min_distance = std::sqrt(static_cast<double>(template_min));

  out.chained = true;
  out.contained = true;
  out.disjoint = template_min > 0 && !folded;
  BigRational margin = 1;
  const BigRational required(1, 100);
  for (std::size_t n = 0; n < chain.size(); ++n) {
    const WildLevel& level = chain[n];
    const ExactCuboid& box = level.box;
    if (level.arc.size() < 2) throw DomainError("check_wild_chain: arc needs at least 2 vertices");

    const BigRational cx = box.x0 + box.side / 2;
    const BigRational cy = box.y0 + box.side / 2;
    if (level.arc.front() != ExactPoint3{cx, cy, box.z0} || level.arc.back() != ExactPoint3{cx, cy, box.top()}) {
      out.chained = false;
    }
    if (n + 1 < chain.size() && level.arc.back() != chain[n + 1].arc.front()) out.chained = false;

    for (std::size_t k = 1; k + 1 < level.arc.size(); ++k) {
      const ExactPoint3& p = level.arc[k];
      for (const BigRational& r : std::initializer_list<BigRational>{(p.x - box.x0) / box.side, (box.x0 + box.side - p.x) / box.side,
                                   (p.y - box.y0) / box.side, (box.y0 + box.side - p.y) / box.side,
                                   (p.z - box.z0) / box.height, (box.top() - p.z) / box.height}) {
        if (r < margin) margin = r;
      }
    }

    bool level_folded = false;
    if (self_distance_squared(level.arc, level_folded) <= 0 || level_folded) out.disjoint = false;

    // Later arcs: boxes only touch on a shared face, so only segment pairs whose
    // z-ranges overlap can meet. A pair meeting exactly at the shared endpoint
    // is separated by the face plane when each segment lies strictly on its side
    // away from that endpoint.
    for (std::size_t m = n + 1; m < chain.size(); ++m) {
      const auto& other = chain[m].arc;
      for (std::size_t i = 0; i + 1 < level.arc.size(); ++i) {
        const BigRational hi_a = max_z(level.arc[i], level.arc[i + 1]);
        for (std::size_t j = 0; j + 1 < other.size(); ++j) {
          const BigRational lo_b = min_z(other[j], other[j + 1]);
          if (hi_a < lo_b) continue;
          const bool touch_at_plane = hi_a == lo_b && m == n + 1 && i + 2 == level.arc.size() && j == 0 &&
                                      level.arc[i + 1] == other[0] && level.arc[i].z < hi_a && other[1].z > lo_b;
          if (touch_at_plane) continue;
          if (segment_distance_squared(level.arc[i], level.arc[i + 1], other[j], other[j + 1]) <= 0) {
            out.disjoint = false;
          }
        }
      }
    }
  }
  out.contained = margin >= required;
  out.min_margin = static_cast<double>(margin);
  return out;
}

}  // namespace zorich
