#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "zorich/error.hpp"
#include "zorich/geometry.hpp"

using namespace zorich;

TEST_CASE("square_to_disk keeps direction and sends the max-norm to the radius") {
  gen::Rng rng(11);
  for (int i = 0; i < 5000; ++i) {
    const Point2 p = rng.square_point();
    const Point2 d = square_to_disk(p);
    const double inf_norm = std::max(std::abs(p.x1), std::abs(p.x2));
    CHECK(std::hypot(d.x1, d.x2) == doctest::Approx(inf_norm).epsilon(1e-14));
    CHECK(d.x1 * p.x2 - d.x2 * p.x1 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(d.x1 * p.x1 + d.x2 * p.x2 >= 0.0);
  }
  CHECK(square_to_disk({0.0, 0.0}).x1 == 0.0);
  CHECK_THROWS_AS(square_to_disk({1.5, 0.0}), DomainError);
}

TEST_CASE("disk_to_square inverts square_to_disk") {
  gen::Rng rng(12);
  for (int i = 0; i < 5000; ++i) {
    const Point2 p = rng.square_point();
    const Point2 back = disk_to_square(square_to_disk(p));
    CHECK(back.x1 == doctest::Approx(p.x1).epsilon(1e-13));
    CHECK(back.x2 == doctest::Approx(p.x2).epsilon(1e-13));
  }
  CHECK_THROWS_AS(disk_to_square({1.0, 1.0}), DomainError);
}

TEST_CASE("square_to_hemisphere: unit vectors, pole at the center, equator on the boundary") {
  const Point3 pole = square_to_hemisphere({0.0, 0.0});
  CHECK(pole.x3 == 1.0);
  for (const Point2 edge : {Point2{1.0, 0.3}, Point2{-0.2, 1.0}, Point2{1.0, 1.0}, Point2{-1.0, -0.7}}) {
    CHECK(square_to_hemisphere(edge).x3 == doctest::Approx(0.0).epsilon(1e-15));
  }
  gen::Rng rng(13);
  for (int i = 0; i < 5000; ++i) {
    const Point2 p = rng.square_point();
    const Point3 u = square_to_hemisphere(p);
    CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(u.x3 >= 0.0);
    // Polar angle is pi/2 times the max-norm.
    const double polar = std::atan2(std::hypot(u.x1, u.x2), u.x3);
    CHECK(polar == doctest::Approx(0.5 * std::numbers::pi * std::max(std::abs(p.x1), std::abs(p.x2))).epsilon(1e-13));
    const Point2 back = hemisphere_to_square(u);
    CHECK(back.x1 == doctest::Approx(p.x1).epsilon(1e-12));
    CHECK(back.x2 == doctest::Approx(p.x2).epsilon(1e-12));
  }
  CHECK_THROWS_AS(hemisphere_to_square({0.0, 0.0, 2.0}), DomainError);
  CHECK_THROWS_AS(hemisphere_to_square({0.6, 0.0, -0.8}), DomainError);
}

TEST_CASE("fold lands in the square and unfold inverts it") {
  gen::Rng rng(14);
  for (int i = 0; i < 20000; ++i) {
    const double x1 = rng.uniform(-1e4, 1e4), x2 = rng.uniform(-1e4, 1e4);
    const FoldResult f = fold(x1, x2);
    CHECK(std::abs(f.folded.x1) <= 1.0);
    CHECK(std::abs(f.folded.x2) <= 1.0);
    CHECK(std::abs(x1 - 2.0 * static_cast<double>(f.cell.r1)) <= 1.0);
    CHECK(f.parity == f.cell.sign());
    const Point2 back = unfold(f.folded, f.cell);
    CHECK(back.x1 == doctest::Approx(x1).epsilon(1e-15));
    CHECK(back.x2 == doctest::Approx(x2).epsilon(1e-15));
  }
}

TEST_CASE("fold ties go to the lower cell index") {
  CHECK(fold(1.0, 0.0).cell == Cell{0, 0});
  CHECK(fold(-1.0, 3.0).cell == Cell{-1, 1});
  CHECK(fold(1.0, 0.0).folded.x1 == 1.0);
  // Both neighbors fold a shared edge to the same point.
  CHECK(fold(-1.0, 0.0).folded.x1 == -1.0);
  CHECK(fold(-1.0 - 1e-15, 0.0).folded.x1 == doctest::Approx(-1.0));
}

TEST_CASE("fold rejects coordinates beyond 2^52") {
  CHECK_THROWS_AS(fold(0x1p53, 0.0), DomainError);
  CHECK_THROWS_AS(fold(0.0, INFINITY), DomainError);
  CHECK_NOTHROW(fold(0x1p51, -0x1p51));
}

TEST_CASE("spherical_ray_length matches quadrature") {
  gen::Rng rng(15);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform(-20.0, 20.0), y = rng.uniform(-5.0, 5.0), z = rng.uniform(-5.0, 5.0);
    CHECK(spherical_ray_length(x, y, z) == doctest::Approx(oracle::ray_length_quadrature(x, y, z)).epsilon(1e-10));
  }
  CHECK(spherical_ray_length(0.0, 0.0, 0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
}

TEST_CASE("spherical_ray_length decreases in x") {
  gen::Rng rng(16);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-50.0, 50.0), y = rng.uniform(-3.0, 3.0), z = rng.uniform(-3.0, 3.0);
    CHECK(spherical_ray_length(x + 0.01, y, z) < spherical_ray_length(x, y, z));
  }
}

TEST_CASE("bi-Lipschitz estimate is deterministic and within (1, 4)") {
  const double a = estimate_bilipschitz_constant(100000, 7);
  const double b = estimate_bilipschitz_constant(100000, 7);
  CHECK(a == b);
  CHECK(a > 1.0);
  CHECK(a < 4.0);
  CHECK_THROWS_AS(estimate_bilipschitz_constant(10, 7), DomainError);
  // The identity embedding is an isometry up to the safety factor.
  const double flat = estimate_bilipschitz_constant(20000, 3, [](const Point2& p) { return Point3{p.x1, p.x2, 0.0}; });
  CHECK(flat == doctest::Approx(kLipschitzSafetyFactor).epsilon(1e-6));
}
