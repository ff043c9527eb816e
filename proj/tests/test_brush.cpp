#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "zorich/brush.hpp"
#include "zorich/error.hpp"

using namespace zorich;

namespace {

const double kL = estimate_bilipschitz_constant(100000, 7);
const Params kParams = certify_params(kL, 0.01);

}  // namespace

TEST_CASE("box_norm_range matches a brute-force grid") {
  gen::Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const Box box{rng.uniform(-3.0, 3.0), Cell{rng.integer(-3, 3), rng.integer(-3, 3)}};
    const NormRange range = box_norm_range(box);
    const auto [mn, mx] = oracle::norm_range_grid(2.0 * box.cell.r1, 2.0 * box.cell.r2, box.x, 40);
    // The grid cannot beat the exact extremes and comes within its spacing.
    CHECK(range.min <= mn + 1e-12);
    CHECK(range.min >= mn - 0.06);
    CHECK(range.max == doctest::Approx(mx).epsilon(1e-12));
  }
  CHECK(planar_min_distance(Cell{0, 0}) == 0.0);
  CHECK(planar_min_distance(Cell{2, 0}) == 3.0);
  CHECK(planar_max_distance(Cell{-1, 1}) == doctest::Approx(std::sqrt(18.0)));
}

TEST_CASE("next_box is the lowest box in the image shell") {
  gen::Rng rng(42);
  for (int i = 0; i < 2000; ++i) {
    const Box current{rng.uniform(kParams.floor_height, kParams.floor_height + 6.0), rng.even_cell(3)};
    const Cell next = rng.even_cell(30);
    const auto got = next_box(current, next, kParams);
    const double r = kParams.lambda * std::exp(current.x);
    const double lowest = oracle::lowest_height_by_bisection(planar_min_distance(next), r, 0.0);
    const bool fits_floor = lowest >= kParams.floor_height - 1e-12;
    const bool fits_shell = std::hypot(planar_max_distance(next), lowest + 1.0) <= std::numbers::e * r;
    REQUIRE(got.has_value() == (fits_floor && fits_shell));
    if (got) {
      CHECK(got->cell == next);
      CHECK(got->x == doctest::Approx(lowest).epsilon(1e-9));
      const NormRange range = box_norm_range(*got);
      CHECK(range.min >= r * (1.0 - 1e-12));
      CHECK(range.max <= std::numbers::e * r);
    }
  }
}

TEST_CASE("next_box: odd cells are empty and huge heights saturate") {
  CHECK_FALSE(next_box(Box{20.0, Cell{1, 0}}, Cell{0, 0}, kParams).has_value());
  const auto sat = next_box(Box{800.0, Cell{0, 0}}, Cell{4, 2}, kParams);
  REQUIRE(sat.has_value());
  CHECK(sat->saturated());
  const auto after = next_box(*sat, Cell{0, 0}, kParams);
  REQUIRE(after.has_value());
  CHECK(after->saturated());
}

TEST_CASE("brush membership is an up-set in t") {
  for (const Address& a : gen::periodic_addresses(15, 21, 43, 4)) {
    const double tm = t_min(a, 20, 1e-9, kParams);
    REQUIRE(std::isfinite(tm));
    for (double dt : {0.0, 1e-6, 0.01, 0.3, 2.0, 40.0}) CHECK(brush_membership(tm + dt, a, 20, kParams));
    if (tm > kParams.floor_height) CHECK_FALSE(brush_membership(tm - 2e-9, a, 20, kParams));
  }
}

TEST_CASE("t_min stabilizes with depth") {
  for (const Address& a : gen::periodic_addresses(5, 26, 44)) {
    const double t15 = t_min(a, 15, 1e-9, kParams);
    const double t25 = t_min(a, 25, 1e-9, kParams);
    CHECK(std::abs(t25 - t15) <= 1e-9);
  }
}

TEST_CASE("t_min edge cases") {
  const Address odd = periodic_address({Cell{1, 0}}, 6);
  CHECK(std::isinf(t_min(odd, 5, 1e-9, kParams)));
  CHECK_THROWS_AS(t_min(odd, 5, 0.0, kParams), DomainError);
  CHECK_THROWS_AS(brush_membership(10.0, odd, 6, kParams), DomainError);
  const Address origin = periodic_address({Cell{0, 0}}, 6);
  CHECK(t_min(origin, 5, 1e-9, kParams) <= kParams.floor_height + 1e-6);
}

TEST_CASE("phi: certified bound, forward consistency and decay in depth") {
  for (const Address& a : gen::periodic_addresses(10, 26, 45)) {
    const double t = t_min(a, 25, 1e-9, kParams) + 0.7;
    const PhiResult r = phi_detailed(t, a, 25, kParams);
    CHECK(r.boxes.front().contains(r.point, 1e-12));
    CHECK(r.error_bound <= 3.0 * std::pow(kParams.alpha, r.seed_level) * (1.0 + 1e-12));
    const ForwardCheck fc = forward_check(r, kParams);
    CHECK(fc.ok);
    CHECK(fc.worst_residual <= 1e-9);

    const PhiResult deep = phi_detailed(t, a, 25, kParams);
    for (int d = 15; d < 25; ++d) {
      const PhiResult shallow = phi_detailed(t, a, d, kParams);
      CHECK(distance(shallow.point, deep.point) <= shallow.error_bound + deep.error_bound);
      CHECK(shallow.error_bound <= 3.0 * std::pow(kParams.alpha, std::min(d, shallow.seed_level)) * (1.0 + 1e-12));
    }
  }
  const Address a = periodic_address({Cell{2, 0}}, 26);
  CHECK_THROWS_AS(phi(kParams.floor_height, a, 25, kParams), DomainError);
}

TEST_CASE("distinct addresses give distinct points") {
  const auto addresses = gen::periodic_addresses(25, 21, 46, 5);
  std::vector<Point3> points;
  for (const Address& a : addresses) points.push_back(phi(t_min(a, 20, 1e-9, kParams) + 1.0, a, 20, kParams));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) CHECK(distance(points[i], points[j]) > 1e-6);
  }
}

TEST_CASE("psi inverts phi") {
  for (const Address& a : gen::periodic_addresses(10, 26, 47)) {
    const double t = t_min(a, 25, 1e-9, kParams) + 0.5;
    const Point3 w = phi(t, a, 25, kParams);
    const PsiResult s = psi(w, 25, kParams);
    CHECK(s.z == doctest::Approx(t).epsilon(1e-9));
    for (std::size_t k = 0; k < s.address.size(); ++k) CHECK(s.address[k] == a[k]);
    for (std::size_t k = 0; k + 1 < s.heights.size(); ++k) CHECK(s.heights[k] <= s.heights[k + 1] + 1e-12);
    for (double z : s.heights) {
      CHECK(z <= w.x3 + 1e-12);
      CHECK(z >= w.x3 - 1.0 - 1e-12);
    }
    CHECK(distance(phi(s.z, a, 25, kParams), w) <= 3.0 * std::pow(kParams.alpha, 15) + 1e-6);
  }
}

TEST_CASE("psi failure modes") {
  CHECK_THROWS_AS(psi({2.0, 0.0, 10.0}, 5, kParams), LeftJuliaShadow);
  CHECK_THROWS_AS(psi({1.0, 0.0, 10.0}, 5, kParams), BoundaryAmbiguity);
  CHECK_THROWS_AS(psi({0.0, 0.0, 1.0}, 5, kParams), LeftJuliaShadow);
  CHECK_THROWS_AS(psi({0.0, 0.0, 10.0}, -1, kParams), DomainError);
}

TEST_CASE("neighbor addresses one Farey step away are members slightly higher") {
  // A unit step on the second Farey coordinate is (-1, +1) on the even lattice.
  for (const Address& base : gen::periodic_addresses(5, 21, 48)) {
    const double tm = t_min(base, 20, 1e-9, kParams);
    for (std::size_t i = 1; i <= 10; ++i) {
      Address neighbor = base;
      neighbor.symbols[i].r1 -= 1;
      neighbor.symbols[i].r2 += 1;
      CHECK(neighbor.all_even());
      CHECK(brush_membership(tm + 0.5, neighbor, 20, kParams));
    }
  }
}

TEST_CASE("Julia height probe accepts the floor for small symbols") {
  const JuliaHeightProbe probe = julia_height_probe(kParams, 10, 1);
  CHECK(probe(kParams.floor_height + 1.0));
  const FloorEstimate f = brush_floor(kParams, probe, 8);
  CHECK(f.floor_height >= kParams.expansion_height);
  CHECK(f.julia_height.has_value());
}
