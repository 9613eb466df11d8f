#include "cones/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace cones {

namespace {

void check_dim(const Objective& f, const Point& x) {
  if (x.size() != f.dim) throw DimensionMismatch("objective and point dimensions differ");
}

double sign(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

// Euclidean projection onto the L1 ball of radius 1.
Point project_l1_ball(const Point& v) {
  if (v.lpNorm<1>() <= 1.0) return v;
  std::vector<double> u(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) u[i] = std::abs(v(i));
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0) theta = t;
  }
  Point w(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) w(i) = sign(v(i)) * std::max(std::abs(v(i)) - theta, 0.0);
  return w;
}

// max over the bounding box of ||x - c||, attained at a corner.
double max_dist_over_box(const BoundingBox& bb, const Point& c) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double m = std::max(std::abs(bb.lo(i) - c(i)), std::abs(bb.hi(i) - c(i)));
    s += m * m;
  }
  return std::sqrt(s);
}

}  // namespace

Objective Objective::quadratic(const Point& center) {
  Objective f;
  f.kind = ObjKind::Quadratic;
  f.dim = static_cast<int>(center.size());
  f.center = center;
  f.reg.mu = 1.0;
  f.reg.L = 1.0;
  return f;
}

Objective Objective::squared_norm(int d) {
  Objective f;
  f.kind = ObjKind::SquaredNorm;
  f.dim = d;
  f.reg.mu = 2.0;
  f.reg.L = 2.0;
  return f;
}

Objective Objective::scaled_norm(double c, const Point& center) {
  if (!(c > 0)) throw ParameterError("ScaledNorm requires c > 0");
  Objective f;
  f.kind = ObjKind::ScaledNorm;
  f.dim = static_cast<int>(center.size());
  f.c = c;
  f.center = center;
  f.reg.G = c;
  f.reg.alpha = c;
  return f;
}

Objective Objective::max_abs() {
  Objective f;
  f.kind = ObjKind::MaxAbs;
  f.dim = 2;
  f.reg.G = 1.0;
  return f;
}

Objective Objective::linear_plus_quad(double eps) {
  if (!(eps >= 0)) throw ParameterError("LinearPlusQuad requires eps >= 0");
  Objective f;
  f.kind = ObjKind::LinearPlusQuad;
  f.dim = 2;
  f.eps = eps;
  if (eps > 0) f.reg.L = 2.0 * eps;
  return f;
}

Objective Objective::abs_shift(double m) {
  Objective f;
  f.kind = ObjKind::AbsShift;
  f.dim = 1;
  f.m = m;
  f.reg.G = 1.0;
  f.reg.alpha = 1.0;
  return f;
}

Objective Objective::constant(int d, double value) {
  Objective f;
  f.kind = ObjKind::Constant;
  f.dim = d;
  f.c = value;
  return f;
}

std::string kind_name(ObjKind k) {
  switch (k) {
    case ObjKind::Quadratic: return "quadratic";
    case ObjKind::SquaredNorm: return "squared_norm";
    case ObjKind::ScaledNorm: return "scaled_norm";
    case ObjKind::MaxAbs: return "max_abs";
    case ObjKind::LinearPlusQuad: return "linear_plus_quad";
    case ObjKind::AbsShift: return "abs_shift";
    case ObjKind::Constant: return "constant";
  }
  return "unknown";
}

double eval(const Objective& f, const Point& x) {
  check_dim(f, x);
  double v = 0.0;
  switch (f.kind) {
    case ObjKind::Quadratic: v = 0.5 * (x - f.center).squaredNorm(); break;
    case ObjKind::SquaredNorm: v = x.squaredNorm(); break;
    case ObjKind::ScaledNorm: v = f.c * (x - f.center).norm(); break;
    case ObjKind::MaxAbs: v = x.cwiseAbs().maxCoeff(); break;
    case ObjKind::LinearPlusQuad: v = x(0) + x(1) + f.eps * x(0) * x(0); break;
    case ObjKind::AbsShift: v = std::abs(x(0) - f.m); break;
    case ObjKind::Constant: v = f.c; break;
  }
  return v + f.value_shift;
}

Point subgradient(const Objective& f, const Point& x) {
  check_dim(f, x);
  switch (f.kind) {
    case ObjKind::Quadratic: return x - f.center;
    case ObjKind::SquaredNorm: return 2.0 * x;
    case ObjKind::ScaledNorm: {
      const Point v = x - f.center;
      const double n = v.norm();
      if (n == 0.0) return Point::Zero(f.dim);
      return (f.c / n) * v;
    }
    case ObjKind::MaxAbs: {
      Eigen::Index i = 0;
      x.cwiseAbs().maxCoeff(&i);  // first index on ties
      Point g = Point::Zero(f.dim);
      g(i) = sign(x(i));
      return g;
    }
    case ObjKind::LinearPlusQuad: return pt({1.0 + 2.0 * f.eps * x(0), 1.0});
    case ObjKind::AbsShift: return pt({sign(x(0) - f.m)});
    case ObjKind::Constant: return Point::Zero(f.dim);
  }
  return Point::Zero(f.dim);
}

bool has_unique_argmin(const Objective& f) {
  switch (f.kind) {
    case ObjKind::Quadratic:
    case ObjKind::SquaredNorm:
    case ObjKind::ScaledNorm:
    case ObjKind::AbsShift:
      return true;
    case ObjKind::LinearPlusQuad:
      // Strictly convex in x1 and linear in x2, so two minimizers would share
      // x1 and then differ in f.
      return f.eps > 0;
    case ObjKind::MaxAbs:
    case ObjKind::Constant:
      return false;
  }
  return false;
}

std::optional<Point> projection_anchor(const Objective& f) {
  switch (f.kind) {
    case ObjKind::Quadratic: return f.center;
    case ObjKind::SquaredNorm: return Point::Zero(f.dim);
    case ObjKind::ScaledNorm: return f.center;
    default: return std::nullopt;
  }
}

std::optional<Point> unconstrained_argmin(const Objective& f) {
  switch (f.kind) {
    case ObjKind::Quadratic: return f.center;
    case ObjKind::SquaredNorm: return Point::Zero(f.dim);
    case ObjKind::ScaledNorm: return f.center;
    case ObjKind::MaxAbs: return Point::Zero(f.dim);
    case ObjKind::AbsShift: return pt({f.m});
    case ObjKind::LinearPlusQuad: return std::nullopt;
    case ObjKind::Constant: return Point::Zero(f.dim);
  }
  return std::nullopt;
}

Point prox(const Objective& f, const Point& r, double lambda) {
  check_dim(f, r);
  if (lambda <= 0) return r;
  switch (f.kind) {
    case ObjKind::Quadratic: return (r + lambda * f.center) / (1.0 + lambda);
    case ObjKind::SquaredNorm: return r / (1.0 + 2.0 * lambda);
    case ObjKind::ScaledNorm: {
      const Point v = r - f.center;
      const double n = v.norm();
      const double t = lambda * f.c;
      if (n <= t) return f.center;
      return f.center + (1.0 - t / n) * v;
    }
    case ObjKind::MaxAbs: return r - lambda * project_l1_ball(r / lambda);
    case ObjKind::LinearPlusQuad:
      return pt({(r(0) - lambda) / (1.0 + 2.0 * lambda * f.eps), r(1) - lambda});
    case ObjKind::AbsShift: {
      const double v = r(0) - f.m;
      if (std::abs(v) <= lambda) return pt({f.m});
      return pt({r(0) - lambda * sign(v)});
    }
    case ObjKind::Constant: return r;
  }
  return r;
}

void set_regularity(Objective& f, const ConvexSet& X) {
  const BoundingBox bb = bounding_box(X);
  switch (f.kind) {
    case ObjKind::Quadratic: f.reg.G = max_dist_over_box(bb, f.center); break;
    case ObjKind::SquaredNorm: f.reg.G = 2.0 * max_dist_over_box(bb, Point::Zero(f.dim)); break;
    case ObjKind::ScaledNorm: f.reg.G = f.c; f.reg.alpha = f.c; break;
    case ObjKind::MaxAbs: f.reg.G = 1.0; break;
    case ObjKind::LinearPlusQuad: {
      const double g1 = std::max(std::abs(1.0 + 2.0 * f.eps * bb.lo(0)), std::abs(1.0 + 2.0 * f.eps * bb.hi(0)));
      f.reg.G = std::sqrt(g1 * g1 + 1.0);
      break;
    }
    case ObjKind::AbsShift: f.reg.G = 1.0; f.reg.alpha = 1.0; break;
    case ObjKind::Constant: break;
  }
}

}  // namespace cones
