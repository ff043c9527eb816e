#include <doctest.h>

#include <boost/math/special_functions/lambert_w.hpp>

#include <cmath>
#include <numbers>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "zorich/error.hpp"
#include "zorich/family.hpp"

using namespace zorich;

namespace {

const double kL = estimate_bilipschitz_constant(100000, 7);

Params params_at(double lambda) { return certify_params(kL, lambda); }

}  // namespace

TEST_CASE("max_lambda(1) is 1/e") {
  CHECK(std::abs(max_lambda(1.0) - std::exp(-1.0)) <= 1e-15);
  CHECK(max_lambda(2.0) == doctest::Approx(std::exp(-2.0) / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(max_lambda(0.5), DomainError);
}

TEST_CASE("contraction_factor agrees with the Lambert-W threshold") {
  // lambda = u e^{-u} with u = L / alpha on the branch u > 1.
  for (double fraction : {0.05, 0.2, 0.5, 0.9, 0.99}) {
    const double lambda = fraction * max_lambda(kL);
    const double u = -boost::math::lambert_wm1(-lambda);
    const double alpha_star = kL / u;
    const double alpha = contraction_factor(lambda, kL);
    CHECK(alpha >= alpha_star * (1.0 - 1e-12));
    CHECK(alpha <= alpha_star + 1.1e-6);
    CHECK(contraction_admissible(lambda, kL, alpha));
    CHECK_FALSE(contraction_admissible(lambda, kL, alpha - 1e-6));
  }
}

TEST_CASE("certified bundle at lambda = 0.01") {
  const Params p = params_at(0.01);
  CHECK(p.alpha == doctest::Approx(0.341869).epsilon(1e-5));
  CHECK(p.expansion_height == doctest::Approx(std::log(kL / (0.01 * p.alpha))).epsilon(1e-15));
  CHECK(p.floor_height == p.expansion_height);
  CHECK_NOTHROW(validate(p));
}

TEST_CASE("out-of-regime lambda names the violated inequality") {
  const double cap = max_lambda(kL);
  try {
    certify_params(kL, 1.1 * cap);
    FAIL("expected RegimeError");
  } catch (const RegimeError& e) {
    CHECK(std::string(e.what()).find("lambda < exp(-(log L_hat + L_hat))") != std::string::npos);
  }
  CHECK_THROWS_AS(certify_params(kL, -0.1), RegimeError);
  CHECK_THROWS_AS(certify_params(0.9, 0.01), RegimeError);
  Params broken = params_at(0.01);
  broken.floor_height = broken.expansion_height - 1.0;
  CHECK_THROWS_AS(validate(broken), RegimeError);
}

TEST_CASE("zorich_map agrees with the reflection oracle") {
  const Params p = params_at(0.01);
  gen::Rng rng(21);
  for (int i = 0; i < 20000; ++i) {
    const Point3 x = rng.point(50.0, -5.0, 5.0);
    const Point3 y = zorich_map(x, p);
    const Point3 z = oracle::zorich_by_reflection(x, p.lambda);
    CHECK(distance(y, z) <= 1e-12 * p.lambda * std::exp(x.x3) + 1e-300);
  }
}

TEST_CASE("norm law |Z(x)| = lambda e^{x3}") {
  const Params p = params_at(0.03);
  gen::Rng rng(22);
  for (int i = 0; i < 20000; ++i) {
    const Point3 x = rng.point(1000.0, -5.0, 5.0);
    const double expect = p.lambda * std::exp(x.x3);
    CHECK(std::abs(norm(zorich_map(x, p)) - expect) <= 1e-12 * expect);
  }
  CHECK_THROWS_AS(zorich_map({0.0, 0.0, 720.0}, p), RangeError);
}

TEST_CASE("periodicity and half-turn symmetry") {
  const Params p = params_at(0.01);
  gen::Rng rng(23);
  for (int i = 0; i < 5000; ++i) {
    const Point3 x = rng.point(10.0, -3.0, 3.0);
    const Point3 z = zorich_map(x, p);
    const double tol = 1e-12 * norm(z);
    CHECK(distance(zorich_map({x.x1 + 4.0, x.x2, x.x3}, p), z) <= tol);
    CHECK(distance(zorich_map({x.x1, x.x2 - 4.0, x.x3}, p), z) <= tol);
    CHECK(distance(zorich_map({2.0 - x.x1, 2.0 - x.x2, x.x3}, p), z) <= tol);
  }
}

TEST_CASE("continuity across fold lines") {
  const Params p = params_at(0.01);
  gen::Rng rng(24);
  for (int i = 0; i < 2000; ++i) {
    const double wall = 2.0 * static_cast<double>(rng.integer(-5, 5)) + 1.0;
    const double other = rng.uniform(-9.0, 9.0), x3 = rng.uniform(-2.0, 2.0);
    const Point3 a{wall - 1e-12, other, x3}, b{wall + 1e-12, other, x3};
    CHECK(distance(zorich_map(a, p), zorich_map(b, p)) <= 1e-8);
    const Point3 c{other, wall - 1e-12, x3}, d{other, wall + 1e-12, x3};
    CHECK(distance(zorich_map(c, p), zorich_map(d, p)) <= 1e-8);
  }
}

TEST_CASE("Jacobian singular values stay within the bi-Lipschitz bounds") {
  const Params p = params_at(0.01);
  gen::Rng rng(25);
  for (int i = 0; i < 3000; ++i) {
    const Point3 x = rng.smooth_point(20.0, -3.0, 3.0, 1e-3);
    const auto sv = singular_values(zorich_jacobian(x, p));
    const double scale = p.lambda * std::exp(x.x3);
    CHECK(sv[0] <= kL * scale);
    CHECK(sv[2] >= scale / kL);
  }
  CHECK_THROWS_AS(zorich_jacobian({1.0, 0.3, 0.0}, p), NonsmoothPoint);
  CHECK_THROWS_AS(zorich_jacobian({0.4, 0.4, 0.0}, p), NonsmoothPoint);
}

TEST_CASE("inverse branches invert the map and contract above M") {
  const Params p = params_at(0.01);
  gen::Rng rng(26);
  for (int i = 0; i < 5000; ++i) {
    const Cell cell = rng.even_cell(6);
    const Point3 y = rng.point(30.0, p.expansion_height, p.expansion_height + 10.0);
    const Point3 x = inverse_branch(y, cell, p);
    CHECK(fold(x.x1, x.x2).cell == cell);
    CHECK(distance(zorich_map(x, p), y) <= 1e-10 * norm(y));

    const Point3 y2 = rng.point(30.0, p.expansion_height, p.expansion_height + 10.0);
    CHECK(distance(x, inverse_branch(y2, cell, p)) <= p.alpha * distance(y, y2) + 1e-9);
  }
  CHECK_THROWS_AS(inverse_branch({1.0, 0.0, -1.0}, Cell{0, 0}, p), DomainError);
  CHECK_THROWS_AS(inverse_branch({1.0, 0.0, 1.0}, Cell{1, 0}, p), DomainError);
  CHECK_THROWS_AS(inverse_branch({0.0, 0.0, 0.0}, Cell{0, 0}, p), DomainError);
}

TEST_CASE("the half-space below M maps below M") {
  const Params p = params_at(0.01);
  gen::Rng rng(27);
  for (int i = 0; i < 5000; ++i) {
    const Point3 x = rng.point(100.0, -10.0, p.expansion_height);
    CHECK(zorich_map(x, p).x3 < p.expansion_height);
  }
}

TEST_CASE("brush_floor") {
  const Params p = params_at(0.01);
  SUBCASE("probe never accepts") {
    const FloorEstimate f = brush_floor(p, [](double) { return false; }, 10);
    CHECK(f.budget_exhausted);
    CHECK_FALSE(f.julia_height.has_value());
    CHECK(f.floor_height == p.expansion_height);
  }
  SUBCASE("probe accepts from M + 2") {
    const double m = p.expansion_height;
    const FloorEstimate f = brush_floor(p, [m](double c) { return c >= m + 2.0; }, 20);
    CHECK_FALSE(f.budget_exhausted);
    REQUIRE(f.julia_height.has_value());
    CHECK(*f.julia_height == doctest::Approx(m + 2.0));
    CHECK(f.floor_height == doctest::Approx(m + 1.0));
  }
  SUBCASE("probe accepts at M") {
    const FloorEstimate f = brush_floor(p, [](double) { return true; }, 5);
    CHECK(f.floor_height == p.expansion_height);
  }
}

TEST_CASE("orbit and classification") {
  const Params p = params_at(0.01);
  const Orbit o = orbit({0.0, 0.0, 3.0}, 5, p);
  CHECK(o.points.size() == 6);
  CHECK_FALSE(o.overflowed);
  CHECK(classify_point({0.3, -0.2, -4.0}, p, 100) == PointClass::Converging);
  CHECK(classify_point({0.0, 0.0, 20.0}, p, 100) == PointClass::Escaping);
  CHECK(classify_point({0.0, 0.0, 20.0}, p, 0) == PointClass::Undecided);
  const Orbit big = orbit({0.0, 0.0, 20.0}, 5, p);
  CHECK(big.overflowed);
  CHECK(std::string(to_string(PointClass::Escaping)) == "Escaping");
}
