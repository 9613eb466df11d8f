#include <doctest.h>

#include <cmath>
#include <functional>

#include "cones/algorithms.hpp"
#include "cones/instances.hpp"
#include "cones/oracle.hpp"
#include "cones/solvers.hpp"

using namespace cones;

namespace {

Instance line_instance(const std::vector<ConvexSet>& sets, const std::vector<Objective>& fs, double x0) {
  Instance inst;
  inst.family = "test";
  inst.sets = sets;
  inst.objectives = fs;
  inst.x0 = pt({x0});
  inst.T = static_cast<int>(sets.size());
  return inst;
}

ConvexSet interval(double lo, double hi) {
  return ConvexSet::cut(ConvexSet::box(pt({0}), pt({10})), {make_halfspace(pt({1}), lo), make_halfspace(pt({-1}), -hi)});
}

// Minimum over every grid path, by recursion.
double enumerate(const Instance& inst, int n) {
  const BoundingBox bb = bounding_box(inst.sets[0].base());
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = i == n - 1 ? bb.hi(0) : bb.lo(0) + (bb.hi(0) - bb.lo(0)) * i / (n - 1);
  std::function<double(int, double)> rec = [&](int t, double prev) {
    if (t > inst.T) return 0.0;
    double best = 1e300;
    for (double x : g) {
      if (!contains(inst.sets[t - 1], pt({x}), feas_tol(inst.sets[t - 1]))) continue;
      best = std::min(best, eval(inst.objective(t), pt({x})) + std::abs(x - prev) + rec(t + 1, x));
    }
    return best;
  };
  return rec(1, inst.x0(0));
}

}  // namespace

TEST_CASE("static_opt examples") {
  const Instance inst = gen_directional(10, 5);
  const OfflineResult r = static_opt(inst.objective(1), inst.sets[4], 5, inst.x0);
  REQUIRE(r.path.size() == 1);
  CHECK(r.path[0](0) == doctest::Approx(0.0));
  CHECK(r.path[0](1) == doctest::Approx(5.0));
  CHECK(r.value == doctest::Approx(25.0));
  CHECK(r.movement == doctest::Approx(4.0));
  CHECK(r.grid_resolution == 0);

  const ConvexSet B = ConvexSet::box(pt({-1, -1}), pt({1, 1}));
  CHECK(static_opt(Objective::squared_norm(2), B, 10, pt({0, 0})).value == doctest::Approx(0.0));
}

TEST_CASE("static_opt on the frozen instance is the minimizer over the last chain set") {
  const Instance inst = gen_frozen(7, 200, 1, 4);
  const OfflineResult r = static_opt(inst.objective(1), inst.sets.back(), 200, inst.x0);
  const Point m = minimize_over(inst.objective(1), inst.sets[7]).argmin;
  CHECK((r.path[0] - m).norm() <= 1e-9);
  for (const ConvexSet& S : inst.sets) CHECK(contains(S, r.path[0], feas_tol(S)));
}

TEST_CASE("offline DP examples") {
  const Instance a = line_instance(std::vector<ConvexSet>(6, interval(0, 10)), {Objective::abs_shift(5)}, 5);
  const OfflineResult ra = offline_lin_dp_1d(a, 101);
  CHECK(ra.value == doctest::Approx(0.0));
  for (const Point& x : ra.path) CHECK(x(0) == doctest::Approx(5.0));

  const Instance b = line_instance({interval(0, 10)}, {Objective::abs_shift(5)}, 0);
  const OfflineResult rb = offline_lin_dp_1d(b, 101);
  CHECK(rb.value == doctest::Approx(5.0));
  // Ties go to the smaller index: x = 0 already attains 5.
  CHECK(rb.path[0](0) == doctest::Approx(0.0));
}

TEST_CASE("offline DP rejects grids that miss a set") {
  const Instance inst = line_instance({interval(0, 10), interval(3.01, 3.02)}, {Objective::abs_shift(5)}, 0);
  CHECK_THROWS_AS(offline_lin_dp_1d(inst, 11), InfeasibleGrid);
  CHECK_THROWS_AS(offline_lin_dp_1d(inst, 2), ParameterError);
}

TEST_CASE("offline DP rejects d > 1") {
  CHECK_THROWS(offline_lin_dp_1d(gen_directional(10, 3), 11));
}

TEST_CASE("property: DP equals exhaustive enumeration on tiny instances") {
  for (int seed = 1; seed <= 30; ++seed)
    for (int T = 1; T <= 4; ++T) {
      const Instance inst = gen_random_1d_lin(T, seed);
      for (int n : {11, 21}) {
        double dp = 0;
        try {
          dp = offline_lin_dp_1d(inst, n).value;
        } catch (const InfeasibleGrid&) {
          continue;
        }
        CHECK(dp == doctest::Approx(enumerate(inst, n)).epsilon(1e-12));
      }
    }
}

TEST_CASE("property: DP path is feasible and its cost equals the value") {
  for (int seed = 1; seed <= 10; ++seed) {
    const Instance inst = gen_random_1d_lin(64, seed);
    const OfflineResult r = offline_lin_dp_1d(inst, 1001);
    REQUIRE(r.path.size() == 64u);
    for (int t = 1; t <= 64; ++t) CHECK(contains(inst.sets[t - 1], r.path[t - 1], feas_tol(inst.sets[t - 1])));
    CHECK(lin_cost(r.path, inst.x0, inst.objectives) == doctest::Approx(r.value).epsilon(1e-9));
  }
}

TEST_CASE("property: DP refinement from 1001 to 2001 points is stable") {
  for (int seed = 1; seed <= 20; ++seed) {
    const Instance inst = gen_random_1d_lin(128, seed);
    const double v1 = offline_lin_dp_1d(inst, 1001).value;
    const double v2 = offline_lin_dp_1d(inst, 2001).value;
    CHECK(std::abs(v1 - v2) < 1e-3 * (1 + v2));
  }
}

TEST_CASE("brute_force_min_grid examples") {
  const OfflineResult r = brute_force_min_grid(Objective::squared_norm(2), ConvexSet::box(pt({1, 1}), pt({2, 2})), 101);
  CHECK(r.path[0](0) == doctest::Approx(1.0));
  CHECK(r.path[0](1) == doctest::Approx(1.0));
  CHECK(r.value == doctest::Approx(2.0));
  CHECK(r.grid_resolution == 101);

  const Instance k = gen_convex_lower_bound(4, 4, 2, 0.5);
  const OfflineResult m = brute_force_min_grid(k.objective(1), k.sets[0], 201);
  CHECK(m.path[0](1) == doctest::Approx(-2.0));

  const OfflineResult one = brute_force_min_grid(Objective::abs_shift(2.5), interval(0, 10), 101);
  CHECK(one.path[0](0) == doctest::Approx(2.5));
}

TEST_CASE("brute_force_min_grid rejects d > 2") {
  CHECK_THROWS(brute_force_min_grid(Objective::squared_norm(3), ConvexSet::box(Point::Zero(3), Point::Ones(3)), 11));
}
