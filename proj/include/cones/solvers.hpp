#pragma once

#include <functional>

#include "cones/geometry.hpp"
#include "cones/objectives.hpp"

namespace cones {

struct MinResult {
  Point argmin;
  double value = 0.0;
  bool certified = false;  // produced by an exact path rather than the iterative fallback
};

/// Optimality slack 1e-9 * (1 + |v|).
double opt_tol(double v);
/// Width of the sublevel surrogate for the argmin set, 1e-8 * (1 + |v|).
double argmin_delta(double v);

/// min of f over S.
///
/// Exact paths: projection of the anchor point for kinds with ball-shaped
/// sublevel sets; ternary search on the interval for d = 1; face enumeration
/// (interior stationary point, then every polygon edge) for d = 2 over a box
/// base. Anything else falls back to projected subgradient plus a polish.
MinResult minimize_over(const Objective& f, const ConvexSet& S);

/// Projection of `ref` onto {x in S : f(x) <= v + delta}; for kinds with a
/// unique minimizer this is the minimizer itself.
Point nearest_minimizer(const Objective& f, const ConvexSet& S, const Point& ref, double delta);
Point nearest_minimizer(const Objective& f, const ConvexSet& S, const Point& ref);

/// Projection of `ref` onto S ∩ {f <= level}, by bisection on the Lagrange
/// multiplier of the level constraint.
Point project_sublevel(const Objective& f, const ConvexSet& S, double level, const Point& ref);

/// argmin over S of 0.5 ||x - r||^2 + lambda f(x).
Point constrained_prox(const Objective& f, const ConvexSet& S, const Point& r, double lambda);

/// Minimizer of a convex h over the segment [p, q] by ternary search.
Point minimize_on_segment(const std::function<double(const Point&)>& h, const Point& p, const Point& q,
                          int iterations = 200);

}  // namespace cones
