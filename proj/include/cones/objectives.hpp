#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cones/geometry.hpp"

namespace cones {

struct Regularity {
  std::optional<double> G;      // Lipschitz constant
  std::optional<double> mu;     // strong convexity
  std::optional<double> L;      // smoothness
  std::optional<double> alpha;  // sharpness
};

enum class ObjKind {
  Quadratic,       // 0.5 ||x - c||^2
  SquaredNorm,     // ||x||^2
  ScaledNorm,      // c ||x - center||
  MaxAbs,          // max(|x1|, |x2|)
  LinearPlusQuad,  // x1 + x2 + eps x1^2
  AbsShift,        // |x - m|, d = 1
  Constant,        // fixed value, test helper
};

/// A convex loss with closed-form value, subgradient and prox.
struct Objective {
  ObjKind kind = ObjKind::SquaredNorm;
  int dim = 2;
  Point center;  // Quadratic / ScaledNorm
  double c = 1.0;    // ScaledNorm scale, Constant value
  double eps = 0.0;  // LinearPlusQuad
  double m = 0.0;    // AbsShift
  double value_shift = 0.0;
  Regularity reg;

  static Objective quadratic(const Point& center);
  static Objective squared_norm(int d);
  static Objective scaled_norm(double c, const Point& center);
  static Objective max_abs();
  static Objective linear_plus_quad(double eps);
  static Objective abs_shift(double m);
  static Objective constant(int d, double value);
};

std::string kind_name(ObjKind k);

double eval(const Objective& f, const Point& x);
Point subgradient(const Objective& f, const Point& x);

/// Whether argmin over any nonempty convex set is a single point.
bool has_unique_argmin(const Objective& f);

/// Point whose Euclidean projection onto S is the minimizer of f over S, for
/// kinds whose sublevel sets are concentric balls.
std::optional<Point> projection_anchor(const Objective& f);

/// Unconstrained minimizer, when one exists.
std::optional<Point> unconstrained_argmin(const Objective& f);

/// argmin_x 0.5 ||x - r||^2 + lambda f(x) (lambda >= 0).
Point prox(const Objective& f, const Point& r, double lambda);

/// Fills G/mu/L/alpha from the kind and the admissible set X (G from the
/// largest subgradient norm over X's bounding box).
void set_regularity(Objective& f, const ConvexSet& X);

/// Samples points of S and checks f(x) - v_S >= alpha * dist(x, X*_delta) - 1e-7.
CheckReport check_alpha_sharp(const Objective& f, const ConvexSet& S, double alpha, int samples,
                              std::uint64_t seed);

}  // namespace cones
