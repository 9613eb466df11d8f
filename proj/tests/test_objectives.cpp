#include <doctest.h>

#include <cmath>
#include <random>

#include "cones/instances.hpp"
#include "cones/objectives.hpp"

using namespace cones;

namespace {

std::vector<Objective> all_kinds_2d() {
  return {Objective::quadratic(pt({0.3, -0.7})), Objective::squared_norm(2), Objective::scaled_norm(2.5, pt({1, 1})),
          Objective::max_abs(), Objective::linear_plus_quad(0.0625), Objective::constant(2, 3.0)};
}

Point random_point(std::mt19937_64& rng, int d, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Point x(d);
  for (int i = 0; i < d; ++i) x(i) = u(rng);
  return x;
}

}  // namespace

TEST_CASE("eval examples") {
  CHECK(eval(Objective::squared_norm(2), pt({0, -1})) == 1.0);
  CHECK(eval(Objective::linear_plus_quad(0.0625), pt({0.5, 1.5})) == doctest::Approx(2.015625));
  CHECK(eval(Objective::max_abs(), pt({-1, -2.5})) == 2.5);
  CHECK(eval(Objective::quadratic(pt({1, 1})), pt({2, 3})) == doctest::Approx(2.5));
  CHECK(eval(Objective::scaled_norm(2, pt({1, 0})), pt({4, 4})) == doctest::Approx(10.0));
  CHECK(eval(Objective::abs_shift(5), pt({2})) == 3.0);
}

TEST_CASE("eval adds value_shift") {
  Objective f = Objective::squared_norm(2);
  f.value_shift = 1.5;
  CHECK(eval(f, pt({1, 0})) == doctest::Approx(2.5));
}

TEST_CASE("eval rejects a dimension mismatch") {
  CHECK_THROWS_AS(eval(Objective::squared_norm(2), pt({1, 2, 3})), DimensionMismatch);
  CHECK_THROWS_AS(subgradient(Objective::abs_shift(1), pt({1, 2})), DimensionMismatch);
}

TEST_CASE("subgradient examples") {
  const Point g1 = subgradient(Objective::squared_norm(2), pt({1, 2}));
  CHECK(g1(0) == 2.0);
  CHECK(g1(1) == 4.0);
  CHECK(subgradient(Objective::abs_shift(5), pt({7}))(0) == 1.0);
  const Point g3 = subgradient(Objective::max_abs(), pt({2, 2}));
  CHECK(g3(0) == 1.0);
  CHECK(g3(1) == 0.0);
}

TEST_CASE("kink tie-breaking") {
  CHECK(subgradient(Objective::abs_shift(5), pt({5}))(0) == 0.0);
  CHECK(subgradient(Objective::scaled_norm(3, pt({1, 2})), pt({1, 2})).norm() == 0.0);
  const Point g = subgradient(Objective::max_abs(), pt({-3, 3}));
  CHECK(g(0) == -1.0);
  CHECK(g(1) == 0.0);
}

TEST_CASE("property: subgradient inequality for every kind") {
  std::mt19937_64 rng(7);
  for (const Objective& f : all_kinds_2d()) {
    for (int i = 0; i < 1000; ++i) {
      const Point x = random_point(rng, 2, 5.0);
      const Point y = random_point(rng, 2, 5.0);
      const double fy = eval(f, y);
      CHECK(fy >= eval(f, x) + subgradient(f, x).dot(y - x) - 1e-9 * (1 + std::abs(fy)));
    }
  }
  const Objective a = Objective::abs_shift(2.5);
  for (int i = 0; i < 1000; ++i) {
    const Point x = random_point(rng, 1, 5.0);
    const Point y = random_point(rng, 1, 5.0);
    const double fy = eval(a, y);
    CHECK(fy >= eval(a, x) + subgradient(a, x).dot(y - x) - 1e-9 * (1 + std::abs(fy)));
  }
}

TEST_CASE("property: gradients match central differences for smooth kinds") {
  std::mt19937_64 rng(8);
  const std::vector<Objective> smooth = {Objective::quadratic(pt({0.3, -0.7})), Objective::squared_norm(2),
                                         Objective::linear_plus_quad(0.0625)};
  const double h = 1e-6;
  for (const Objective& f : smooth) {
    for (int i = 0; i < 100; ++i) {
      const Point x = random_point(rng, 2, 5.0);
      const Point g = subgradient(f, x);
      for (int j = 0; j < 2; ++j) {
        Point e = Point::Zero(2);
        e(j) = h;
        const double fd = (eval(f, x + e) - eval(f, x - e)) / (2 * h);
        CHECK(std::abs(fd - g(j)) <= 1e-5 * (1 + std::abs(g(j))));
      }
    }
  }
}

TEST_CASE("prox of closed forms") {
  const Point p = prox(Objective::squared_norm(2), pt({3, 0}), 1.0);
  CHECK(p(0) == doctest::Approx(1.0));
  const Point q = prox(Objective::abs_shift(5), pt({1}), 1.0);
  CHECK(q(0) == doctest::Approx(2.0));
  const Point r = prox(Objective::abs_shift(5), pt({4.5}), 1.0);
  CHECK(r(0) == doctest::Approx(5.0));
}

TEST_CASE("regularity metadata") {
  Objective f = Objective::squared_norm(2);
  set_regularity(f, ConvexSet::box(pt({-3, -4}), pt({3, 4})));
  REQUIRE(f.reg.G);
  CHECK(*f.reg.G == doctest::Approx(10.0));
  CHECK(*f.reg.mu == doctest::Approx(2.0));
  CHECK(*f.reg.L == doctest::Approx(2.0));
  Objective m = Objective::max_abs();
  set_regularity(m, ConvexSet::box(pt({-3, -4}), pt({3, 4})));
  CHECK(*m.reg.G == doctest::Approx(1.0));
}

TEST_CASE("check_alpha_sharp examples") {
  const ConvexSet B = ConvexSet::box(pt({1, 1}), pt({2, 2}));
  // The norm is 1-sharp around its own center only; along the box edge the
  // ratio is 1/sqrt2.
  CHECK_FALSE(check_alpha_sharp(Objective::scaled_norm(1, pt({0, 0})), B, 1.0, 400, 1).ok());
  CHECK(check_alpha_sharp(Objective::scaled_norm(1, pt({0, 0})), B, 0.7, 400, 1).ok());
  // grad (2,2) at the corner gives f - v >= 2 (dx + dy) >= 2 |d|, so 2 is sharp and 2.5 is not.
  CHECK(check_alpha_sharp(Objective::squared_norm(2), B, 2.0, 400, 1).ok());
  CHECK_FALSE(check_alpha_sharp(Objective::squared_norm(2), B, 2.5, 400, 1).ok());
  CHECK(check_alpha_sharp(Objective::scaled_norm(1, pt({1.5, 1.5})), B, 1.0, 400, 1).ok());
}

TEST_CASE("property: instance losses are nonnegative on the admissible set") {
  const std::vector<Instance> insts = {gen_sc_lower_bound(16, 1, 4), gen_convex_lower_bound(16, 4, 2, 4 / (4 * std::sqrt(2.0))),
                                       gen_directional(20, 16)};
  for (const Instance& inst : insts) {
    const ConvexSet& X = inst.sets.front();
    const BoundingBox bb = bounding_box(X);
    double lo = 1e300;
    for (int a = 0; a < 200; ++a)
      for (int b = 0; b < 200; ++b) {
        const Point g = pt({bb.lo(0) + (bb.hi(0) - bb.lo(0)) * a / 199.0, bb.lo(1) + (bb.hi(1) - bb.lo(1)) * b / 199.0});
        if (contains(X, g, 0)) lo = std::min(lo, eval(inst.objective(1), g));
      }
    CHECK(lo >= -1e-9);
  }
}
