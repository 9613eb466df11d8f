#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cones/errors.hpp"

namespace cones {

using Point = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;

/// Point from an initializer list, e.g. pt({0.0, -1.0}).
Point pt(std::initializer_list<double> coords);

/// {x : a.x >= b} with ||a|| = 1.
struct Halfspace {
  Point a;
  double b = 0.0;
};

/// Normalizes (a, b) so that ||a|| = 1. Throws ParameterError on a zero normal.
Halfspace make_halfspace(const Point& a, double b);

/// Box, ball, or a box/ball intersected with an ordered list of halfspaces.
///
/// Values are immutable and cheap to copy. A cut of a cut flattens into one
/// list over the original base, so structural nestedness reduces to a prefix
/// test on the cut list. In d = 2 over a box base the clipped polygon is
/// cached at construction and drives the exact projection.
class ConvexSet {
 public:
  enum class Kind { Box, Ball, Cut };

  static ConvexSet box(Point lo, Point hi);
  static ConvexSet ball(Point center, double radius);
  /// Appends `cuts` to `base` without an emptiness check (see intersect_halfspace).
  static ConvexSet cut(const ConvexSet& base, const std::vector<Halfspace>& cuts);

  Kind kind() const;
  /// Kind of the underlying base: Box or Ball.
  Kind base_kind() const;
  int dim() const;

  const Point& lo() const;      // box base only
  const Point& hi() const;      // box base only
  const Point& center() const;  // ball base only
  double radius() const;        // ball base only
  const std::vector<Halfspace>& cuts() const;
  /// The base set with no cuts.
  ConvexSet base() const;

  /// Counter-clockwise polygon vertices for d = 2 over a box base, or nullptr.
  /// An empty vector means the set is empty.
  const std::vector<Vec2>* polygon() const;
  /// Feasible interval for d = 1 (lo > hi when empty).
  std::pair<double, double> interval() const;

  /// Box faces and cuts as one list of halfspaces (box base only; ball base
  /// contributes only its cuts).
  std::vector<Halfspace> halfspaces() const;

 private:
  struct Rep;
  explicit ConvexSet(std::shared_ptr<const Rep> rep);
  std::shared_ptr<const Rep> rep_;
};

using NestedSequence = std::vector<ConvexSet>;

struct BoundingBox {
  Point lo;
  Point hi;
};

/// Feasibility slack 1e-9 * (1 + diameter_bound(S)).
double feas_tol(const ConvexSet& S);
/// Projection stopping tolerance 1e-10 * (1 + ||x||).
double proj_tol(const Point& x);

bool contains(const ConvexSet& S, const Point& x, double tol);
Point project(const ConvexSet& S, const Point& x);
ConvexSet intersect_halfspace(const ConvexSet& S, const Halfspace& h);
bool is_empty(const ConvexSet& S);
double diameter_bound(const ConvexSet& S);
BoundingBox bounding_box(const ConvexSet& S);

/// Random point of S (rejection from the bounding box, projection fallback).
Point sample_point(const ConvexSet& S, std::mt19937_64& rng);

/// True when `inner` is `outer` plus zero or more appended cuts.
bool structurally_nested(const ConvexSet& inner, const ConvexSet& outer);

struct CheckReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Structural plus sampled check that S_t is inside S_{t-1} for every t.
CheckReport assert_nested(const NestedSequence& seq, int samples, std::uint64_t seed);

/// Projection of x onto the segment [p, q].
Vec2 project_segment(const Vec2& p, const Vec2& q, const Vec2& x);

namespace detail {
/// Exact active-set projection for d <= 3: halfspaces plus an optional ball
/// constraint. Returns nullopt when no candidate is feasible (empty set).
std::optional<Point> active_set_project(const std::vector<Halfspace>& hs,
                                        const Point* ball_center, double ball_radius,
                                        const Point& x, double tol);
/// Dykstra's alternating projections for any d.
Point dykstra_project(const ConvexSet& S, const Point& x, int max_iter = 10000);
}  // namespace detail

}  // namespace cones
