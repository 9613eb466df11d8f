#include "cones/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cones {

namespace {

struct ConvexFn {
  std::function<double(const Point&)> value;
  std::function<Point(const Point&)> subgrad;
  std::optional<Point> stationary;  // unconstrained minimizer, if known
  double lipschitz = 0.0;           // step-size scale for the fallback
};

double ternary_1d(const std::function<double(double)>& h, double a, double b, int iterations) {
  for (int i = 0; i < iterations && b - a > 0; ++i) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (h(m1) <= h(m2)) b = m2;
    else a = m1;
  }
  return 0.5 * (a + b);
}

// Projected subgradient with step D / (G sqrt(k)), best-iterate tracking, and
// a final comparison against the projected stationary point.
Point subgradient_fallback(const ConvexFn& h, const ConvexSet& S) {
  const BoundingBox bb = bounding_box(S);
  const double D = std::max(diameter_bound(S), 1e-12);
  Point x = project(S, Point(0.5 * (bb.lo + bb.hi)));
  Point best = x;
  double best_v = h.value(x);
  double G = h.lipschitz;
  for (int k = 1; k <= 5000; ++k) {
    const Point g = h.subgrad(x);
    const double gn = g.norm();
    if (gn == 0.0) break;
    if (G <= 0.0) G = gn;
    x = project(S, Point(x - (D / (G * std::sqrt(static_cast<double>(k)))) * g / std::max(gn / G, 1.0)));
    const double v = h.value(x);
    if (v < best_v) {
      best_v = v;
      best = x;
    }
  }
  if (S.dim() <= 3 && h.stationary) {
    const Point p = project(S, *h.stationary);
    if (h.value(p) < best_v) best = p;
  }
  return best;
}

MinResult minimize_fn(const ConvexFn& h, const ConvexSet& S) {
  if (is_empty(S)) throw EmptySet("minimization over an empty set");
  if (S.dim() == 1) {
    auto [a, b] = S.interval();
    if (a > b) a = b = 0.5 * (a + b);
    auto h1 = [&](double s) { return h.value(pt({s})); };
    std::vector<double> cand = {ternary_1d(h1, a, b, 200), a, b};
    if (h.stationary) cand.push_back(std::clamp((*h.stationary)(0), a, b));
    double best = cand[0];
    for (double c : cand)
      if (h1(c) < h1(best)) best = c;
    return {pt({best}), h1(best), true};
  }
  if (const auto* poly = S.polygon()) {
    if (h.stationary && contains(S, *h.stationary, 0.0)) return {*h.stationary, h.value(*h.stationary), true};
    const std::size_t n = poly->size();
    Point best = pt({(*poly)[0].x(), (*poly)[0].y()});
    double best_v = h.value(best);
    for (std::size_t i = 0; i < n && n > 1; ++i) {
      const Vec2& p = (*poly)[i];
      const Vec2& q = (*poly)[(i + 1) % n];
      const Point c = minimize_on_segment(h.value, pt({p.x(), p.y()}), pt({q.x(), q.y()}));
      const double v = h.value(c);
      if (v < best_v) {
        best_v = v;
        best = c;
      }
    }
    return {best, best_v, true};
  }
  const Point x = subgradient_fallback(h, S);
  return {x, h.value(x), false};
}

ConvexFn objective_fn(const Objective& f) {
  ConvexFn h;
  h.value = [&f](const Point& x) { return eval(f, x); };
  h.subgrad = [&f](const Point& x) { return subgradient(f, x); };
  h.stationary = unconstrained_argmin(f);
  h.lipschitz = f.reg.G.value_or(0.0);
  return h;
}

}  // namespace

double opt_tol(double v) { return 1e-9 * (1.0 + std::abs(v)); }
double argmin_delta(double v) { return 1e-8 * (1.0 + std::abs(v)); }

Point minimize_on_segment(const std::function<double(const Point&)>& h, const Point& p, const Point& q,
                          int iterations) {
  const Point e = q - p;
  auto h1 = [&](double s) { return h(Point(p + s * e)); };
  const double s = ternary_1d(h1, 0.0, 1.0, iterations);
  double best_s = s;
  for (double c : {0.0, 1.0})
    if (h1(c) < h1(best_s)) best_s = c;
  return p + best_s * e;
}

MinResult minimize_over(const Objective& f, const ConvexSet& S) {
  if (S.dim() != f.dim) throw DimensionMismatch("objective and set dimensions differ");
  if (is_empty(S)) throw EmptySet("minimization over an empty set");
  if (auto anchor = projection_anchor(f)) {
    const Point p = project(S, *anchor);
    return {p, eval(f, p), true};
  }
  if (f.kind == ObjKind::Constant) {
    const Point p = project(S, Point::Zero(f.dim));
    return {p, eval(f, p), true};
  }
  return minimize_fn(objective_fn(f), S);
}

Point constrained_prox(const Objective& f, const ConvexSet& S, const Point& r, double lambda) {
  if (lambda <= 0.0) return project(S, r);
  if (f.kind == ObjKind::Quadratic || f.kind == ObjKind::SquaredNorm || f.kind == ObjKind::Constant) {
    // The augmented objective is an isotropic quadratic centred at the prox point.
    return project(S, prox(f, r, lambda));
  }
  ConvexFn h;
  h.value = [&](const Point& x) { return 0.5 * (x - r).squaredNorm() + lambda * eval(f, x); };
  h.subgrad = [&](const Point& x) { return Point(x - r + lambda * subgradient(f, x)); };
  h.stationary = prox(f, r, lambda);
  h.lipschitz = diameter_bound(S) + lambda * f.reg.G.value_or(1.0);
  return minimize_fn(h, S).argmin;
}

Point project_sublevel(const Objective& f, const ConvexSet& S, double level, const Point& ref) {
  if (S.dim() != f.dim || ref.size() != f.dim) throw DimensionMismatch("project_sublevel dimension mismatch");
  if (f.kind == ObjKind::MaxAbs) {
    // The sublevel set of max|x_i| is a box, so the projection is exact.
    const double s = level - f.value_shift;
    if (s < 0.0) throw EmptyLevelSet("level below the infimum of max|x_i|");
    std::vector<Halfspace> box;
    for (int i = 0; i < f.dim; ++i) {
      Point e = Point::Zero(f.dim);
      e(i) = 1.0;
      box.push_back({e, -s});
      box.push_back({-e, -s});
    }
    const ConvexSet T = ConvexSet::cut(S, box);
    if (is_empty(T)) throw EmptyLevelSet("sublevel set does not meet the feasible set");
    return project(T, ref);
  }
  const Point x0 = project(S, ref);
  if (eval(f, x0) <= level) return x0;
  const MinResult mr = minimize_over(f, S);
  if (mr.value > level + opt_tol(level)) throw EmptyLevelSet("sublevel set does not meet the feasible set");

  auto x_of = [&](double lambda) { return constrained_prox(f, S, ref, lambda); };
  double lo = 0.0, hi = 1.0;
  Point xhi = x_of(hi);
  int doublings = 0;
  while (eval(f, xhi) > level) {
    lo = hi;
    hi *= 2.0;
    xhi = x_of(hi);
    if (++doublings > 200) {
      if (mr.value <= level + opt_tol(level)) return mr.argmin;
      throw IterationLimit("multiplier search for the sublevel projection diverged");
    }
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    const Point xm = x_of(mid);
    if (eval(f, xm) <= level) {
      hi = mid;
      xhi = xm;
    } else {
      lo = mid;
    }
  }
  return xhi;
}

Point nearest_minimizer(const Objective& f, const ConvexSet& S, const Point& ref, double delta) {
  if (!(delta > 0)) throw ParameterError("nearest_minimizer requires delta > 0");
  const MinResult mr = minimize_over(f, S);
  if (has_unique_argmin(f)) return mr.argmin;
  return project_sublevel(f, S, mr.value + delta, ref);
}

Point nearest_minimizer(const Objective& f, const ConvexSet& S, const Point& ref) {
  const MinResult mr = minimize_over(f, S);
  if (has_unique_argmin(f)) return mr.argmin;
  return project_sublevel(f, S, mr.value + argmin_delta(mr.value), ref);
}

CheckReport check_alpha_sharp(const Objective& f, const ConvexSet& S, double alpha, int samples,
                              std::uint64_t seed) {
  CheckReport rep;
  const MinResult mr = minimize_over(f, S);
  const double level = mr.value + argmin_delta(mr.value);
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Point x = sample_point(S, rng);
    const Point near = has_unique_argmin(f) ? mr.argmin : project_sublevel(f, S, level, x);
    const double gap = eval(f, x) - mr.value;
    const double need = alpha * (x - near).norm() - 1e-7;
    if (gap < need) {
      std::ostringstream os;
      os << "f(x) - v = " << gap << " < alpha * dist = " << need + 1e-7 << " at x = (" << x.transpose() << ")";
      rep.violations.push_back(os.str());
    }
  }
  return rep;
}

}  // namespace cones
