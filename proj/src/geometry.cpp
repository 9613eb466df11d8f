#include "cones/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cones {

namespace {

void check_dim(const ConvexSet& S, const Point& x) {
  if (x.size() != S.dim()) {
    std::ostringstream os;
    os << "dimension mismatch: set has d=" << S.dim() << ", point has d=" << x.size();
    throw DimensionMismatch(os.str());
  }
}

// Sutherland-Hodgman step for one halfplane. Vertices within keep_tol of the
// line count as inside. If everything is outside but some vertex is within
// empty_tol, the polygon collapses to that vertex instead of vanishing.
std::vector<Vec2> clip_polygon(const std::vector<Vec2>& poly, const Halfspace& h,
                               double keep_tol, double empty_tol) {
  const std::size_t n = poly.size();
  if (n == 0) return {};
  const Vec2 a(h.a(0), h.a(1));
  std::vector<double> s(n);
  bool all_in = true, all_out = true;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = a.dot(poly[i]) - h.b;
    if (s[i] >= -keep_tol) all_out = false; else all_in = false;
  }
  if (all_in) return poly;
  if (all_out) {
    auto best = std::max_element(s.begin(), s.end());
    if (*best >= -empty_tol) return {poly[best - s.begin()]};
    return {};
  }
  std::vector<Vec2> out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const bool in_i = s[i] >= -keep_tol;
    const bool in_j = s[j] >= -keep_tol;
    if (in_i) out.push_back(poly[i]);
    if (in_i != in_j && n > 1) {
      const double t = s[i] / (s[i] - s[j]);
      out.push_back(poly[i] + t * (poly[j] - poly[i]));
    }
  }
  // Drop consecutive duplicates created by cuts through existing vertices.
  std::vector<Vec2> dedup;
  for (const auto& p : out) {
    if (dedup.empty() || (p - dedup.back()).norm() > 1e-14 * (1.0 + p.norm())) dedup.push_back(p);
  }
  while (dedup.size() > 1 && (dedup.front() - dedup.back()).norm() <= 1e-14 * (1.0 + dedup.front().norm()))
    dedup.pop_back();
  return dedup;
}

bool satisfies(const Halfspace& h, const Point& x, double tol) { return h.a.dot(x) >= h.b - tol; }

}  // namespace

Point pt(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p(i++) = c;
  return p;
}

Halfspace make_halfspace(const Point& a, double b) {
  const double n = a.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ParameterError("halfspace normal must be nonzero and finite");
  return Halfspace{a / n, b / n};
}

struct ConvexSet::Rep {
  Kind base_kind = Kind::Box;
  int d = 0;
  Point lo, hi;      // box base
  Point center;      // ball base
  double radius = 0;
  std::vector<Halfspace> cuts;
  bool has_polygon = false;
  std::vector<Vec2> polygon;
  double ilo = 0, ihi = 0;  // d == 1 interval
};

ConvexSet::ConvexSet(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

ConvexSet ConvexSet::box(Point lo, Point hi) {
  if (lo.size() != hi.size() || lo.size() < 1) throw DimensionMismatch("box corners must share a dimension d >= 1");
  if (!lo.allFinite() || !hi.allFinite()) throw ParameterError("box corners must be finite");
  if ((lo.array() > hi.array()).any()) throw ParameterError("box requires lo <= hi componentwise");
  auto r = std::make_shared<Rep>();
  r->base_kind = Kind::Box;
  r->d = static_cast<int>(lo.size());
  r->lo = std::move(lo);
  r->hi = std::move(hi);
  if (r->d == 2) {
    r->has_polygon = true;
    r->polygon = {Vec2(r->lo(0), r->lo(1)), Vec2(r->hi(0), r->lo(1)), Vec2(r->hi(0), r->hi(1)),
                  Vec2(r->lo(0), r->hi(1))};
  }
  if (r->d == 1) {
    r->ilo = r->lo(0);
    r->ihi = r->hi(0);
  }
  return ConvexSet(r);
}

ConvexSet ConvexSet::ball(Point center, double radius) {
  if (center.size() < 1) throw DimensionMismatch("ball center must have d >= 1");
  if (!(radius >= 0.0) || !std::isfinite(radius) || !center.allFinite())
    throw ParameterError("ball requires a finite center and radius >= 0");
  auto r = std::make_shared<Rep>();
  r->base_kind = Kind::Ball;
  r->d = static_cast<int>(center.size());
  r->center = std::move(center);
  r->radius = radius;
  if (r->d == 1) {
    r->ilo = r->center(0) - radius;
    r->ihi = r->center(0) + radius;
  }
  return ConvexSet(r);
}

ConvexSet ConvexSet::cut(const ConvexSet& base, const std::vector<Halfspace>& cuts) {
  auto r = std::make_shared<Rep>(*base.rep_);
  const double diam = diameter_bound(base);
  const double keep_tol = 1e-13 * (1.0 + diam);
  const double empty_tol = 1e-9 * (1.0 + diam);
  for (const auto& h0 : cuts) {
    if (h0.a.size() != r->d) throw DimensionMismatch("halfspace dimension differs from the set");
    const Halfspace h = make_halfspace(h0.a, h0.b);
    r->cuts.push_back(h);
    if (r->has_polygon) r->polygon = clip_polygon(r->polygon, h, keep_tol, empty_tol);
    if (r->d == 1) {
      if (h.a(0) > 0) r->ilo = std::max(r->ilo, h.b / h.a(0));
      else r->ihi = std::min(r->ihi, h.b / h.a(0));
    }
  }
  return ConvexSet(r);
}

ConvexSet::Kind ConvexSet::kind() const { return rep_->cuts.empty() ? rep_->base_kind : Kind::Cut; }
ConvexSet::Kind ConvexSet::base_kind() const { return rep_->base_kind; }
int ConvexSet::dim() const { return rep_->d; }
const Point& ConvexSet::lo() const { return rep_->lo; }
const Point& ConvexSet::hi() const { return rep_->hi; }
const Point& ConvexSet::center() const { return rep_->center; }
double ConvexSet::radius() const { return rep_->radius; }
const std::vector<Halfspace>& ConvexSet::cuts() const { return rep_->cuts; }

ConvexSet ConvexSet::base() const {
  return rep_->base_kind == Kind::Box ? box(rep_->lo, rep_->hi) : ball(rep_->center, rep_->radius);
}

const std::vector<Vec2>* ConvexSet::polygon() const { return rep_->has_polygon ? &rep_->polygon : nullptr; }

std::pair<double, double> ConvexSet::interval() const {
  if (rep_->d != 1) throw DimensionMismatch("interval() requires d = 1");
  return {rep_->ilo, rep_->ihi};
}

std::vector<Halfspace> ConvexSet::halfspaces() const {
  std::vector<Halfspace> hs;
  if (rep_->base_kind == Kind::Box) {
    for (int i = 0; i < rep_->d; ++i) {
      Point e = Point::Zero(rep_->d);
      e(i) = 1.0;
      hs.push_back({e, rep_->lo(i)});
      hs.push_back({-e, -rep_->hi(i)});
    }
  }
  hs.insert(hs.end(), rep_->cuts.begin(), rep_->cuts.end());
  return hs;
}

double diameter_bound(const ConvexSet& S) {
  if (S.base_kind() == ConvexSet::Kind::Box) return (S.hi() - S.lo()).norm();
  return 2.0 * S.radius();
}

double feas_tol(const ConvexSet& S) { return 1e-9 * (1.0 + diameter_bound(S)); }
double proj_tol(const Point& x) { return 1e-10 * (1.0 + x.norm()); }

bool contains(const ConvexSet& S, const Point& x, double tol) {
  check_dim(S, x);
  if (S.base_kind() == ConvexSet::Kind::Box) {
    if (((S.lo().array() - tol) > x.array()).any()) return false;
    if ((x.array() > (S.hi().array() + tol)).any()) return false;
  } else if ((x - S.center()).norm() > S.radius() + tol) {
    return false;
  }
  for (const auto& h : S.cuts())
    if (!satisfies(h, x, tol)) return false;
  return true;
}

Vec2 project_segment(const Vec2& p, const Vec2& q, const Vec2& x) {
  const Vec2 e = q - p;
  const double ee = e.squaredNorm();
  if (ee == 0.0) return p;
  const double t = std::clamp((x - p).dot(e) / ee, 0.0, 1.0);
  return p + t * e;
}

namespace detail {

namespace {

// Calls fn(indices) for every subset of {0..m-1} of size k, in lexicographic
// order. Stops early when fn returns true.
template <typename Fn>
bool for_each_subset(int m, int k, Fn&& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > m) return false;
  while (true) {
    if (fn(idx)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool all_satisfied(const std::vector<Halfspace>& hs, const Point* c, double r, const Point& p, double tol) {
  for (const auto& h : hs)
    if (!satisfies(h, p, tol)) return false;
  if (c && (p - *c).norm() > r + tol) return false;
  return true;
}

}  // namespace

std::optional<Point> active_set_project(const std::vector<Halfspace>& hs, const Point* ball_center,
                                        double ball_radius, const Point& x, double tol) {
  const int d = static_cast<int>(x.size());
  const int m = static_cast<int>(hs.size());
  if (all_satisfied(hs, ball_center, ball_radius, x, 0.0)) return x;

  std::optional<Point> best;
  double best_dist = std::numeric_limits<double>::infinity();
  const bool polytope = ball_center == nullptr;

  for (int k = 0; k <= std::min(d, m); ++k) {
    const bool found = for_each_subset(m, k, [&](const std::vector<int>& idx) {
      Eigen::MatrixXd N(k, d);
      Eigen::VectorXd rhs(k);
      for (int i = 0; i < k; ++i) {
        N.row(i) = hs[idx[i]].a.transpose();
        rhs(i) = hs[idx[i]].b;
      }
      Point p = x;
      Eigen::VectorXd lambda;
      Eigen::MatrixXd G;
      Eigen::FullPivLU<Eigen::MatrixXd> lu;
      if (k > 0) {
        G = N * N.transpose();
        lu.compute(G);
        lu.setThreshold(1e-12);
        if (lu.rank() < k) return false;
        lambda = lu.solve(rhs - N * x);
        p = x + N.transpose() * lambda;
      }
      if (polytope) {
        if (k > 0 && lambda.minCoeff() < -1e-12 * (1.0 + lambda.cwiseAbs().maxCoeff())) return false;
        if (!all_satisfied(hs, nullptr, 0.0, p, tol)) return false;
        best = p;
        return true;  // KKT point found: this is the projection.
      }
      // Candidate with the ball inactive.
      auto consider = [&](const Point& cand) {
        if (!all_satisfied(hs, ball_center, ball_radius, cand, tol)) return;
        const double dist = (cand - x).norm();
        if (dist < best_dist) {
          best_dist = dist;
          best = cand;
        }
      };
      consider(p);
      // Candidate with the ball active: project p onto the sphere of the
      // lower-dimensional ball flat ∩ ball.
      Point c = *ball_center;
      if (k > 0) c = c + N.transpose() * lu.solve(rhs - N * c);
      const double rho2 = ball_radius * ball_radius - (c - *ball_center).squaredNorm();
      if (rho2 < -tol * (1.0 + ball_radius)) return false;
      const double rho = std::sqrt(std::max(0.0, rho2));
      const Point dir = p - c;
      const double dn = dir.norm();
      if (dn > 0.0) consider(c + (rho / dn) * dir);
      else if (rho == 0.0) consider(c);
      return false;
    });
    if (found) break;
  }
  return best;
}

Point dykstra_project(const ConvexSet& S, const Point& x, int max_iter) {
  const auto& cuts = S.cuts();
  const std::size_t nsets = cuts.size() + 1;
  std::vector<Point> incr(nsets, Point::Zero(x.size()));
  const ConvexSet base = S.base();
  Point y = x;
  const double tol = proj_tol(x);
  const double feas = feas_tol(S);
  for (int it = 0; it < max_iter; ++it) {
    const Point start = y;
    for (std::size_t s = 0; s < nsets; ++s) {
      const Point z = y + incr[s];
      Point p;
      if (s == 0) {
        p = project(base, z);
      } else {
        const auto& h = cuts[s - 1];
        const double viol = h.b - h.a.dot(z);
        p = viol > 0 ? Point(z + viol * h.a) : z;
      }
      incr[s] = z - p;
      y = p;
    }
    // Small steps alone can stall outside the set, so also require feasibility.
    if ((y - start).norm() < tol && contains(S, y, feas)) return y;
  }
  throw IterationLimit("Dykstra projection did not converge within the iteration cap");
}

}  // namespace detail

Point project(const ConvexSet& S, const Point& x) {
  check_dim(S, x);
  if (S.kind() == ConvexSet::Kind::Box) return x.cwiseMax(S.lo()).cwiseMin(S.hi());
  if (S.kind() == ConvexSet::Kind::Ball) {
    const Point v = x - S.center();
    const double n = v.norm();
    if (n <= S.radius()) return x;
    return S.center() + (S.radius() / n) * v;
  }
  const double tol = feas_tol(S);
  if (S.dim() == 1) {
    auto [a, b] = S.interval();
    if (a > b + tol) throw EmptySet("projection onto an empty interval");
    if (a > b) a = b = 0.5 * (a + b);
    Point p(1);
    p(0) = std::clamp(x(0), a, b);
    return p;
  }
  if (const auto* poly = S.polygon()) {
    if (poly->empty()) throw EmptySet("projection onto an empty polygon");
    if (contains(S, x, 0.0)) return x;
    const Vec2 q(x(0), x(1));
    Vec2 best = (*poly)[0];
    double best_d = (best - q).squaredNorm();
    const std::size_t n = poly->size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 c = project_segment((*poly)[i], (*poly)[(i + 1) % n], q);
      const double dd = (c - q).squaredNorm();
      if (dd < best_d) {
        best_d = dd;
        best = c;
      }
    }
    return pt({best.x(), best.y()});
  }
  if (S.dim() <= 3) {
    const auto hs = S.halfspaces();
    const bool ball = S.base_kind() == ConvexSet::Kind::Ball;
    auto p = detail::active_set_project(hs, ball ? &S.center() : nullptr, S.radius(), x, tol);
    if (!p) throw EmptySet("projection onto an empty set");
    return *p;
  }
  if (is_empty(S)) throw EmptySet("projection onto an empty set");
  return detail::dykstra_project(S, x);
}

bool is_empty(const ConvexSet& S) {
  if (S.kind() != ConvexSet::Kind::Cut) return false;
  const double tol = feas_tol(S);
  if (S.dim() == 1) {
    auto [a, b] = S.interval();
    return a > b + tol;
  }
  if (const auto* poly = S.polygon()) return poly->empty();
  const Point ref = S.base_kind() == ConvexSet::Kind::Box ? Point(0.5 * (S.lo() + S.hi())) : S.center();
  if (S.dim() <= 3) {
    const bool ball = S.base_kind() == ConvexSet::Kind::Ball;
    return !detail::active_set_project(S.halfspaces(), ball ? &S.center() : nullptr, S.radius(), ref, tol);
  }
  try {
    return !contains(S, detail::dykstra_project(S, ref), tol);
  } catch (const IterationLimit&) {
    return true;
  }
}

ConvexSet intersect_halfspace(const ConvexSet& S, const Halfspace& h) {
  ConvexSet out = ConvexSet::cut(S, {h});
  if (is_empty(out)) throw EmptyIntersection("halfspace intersection is empty");
  return out;
}

BoundingBox bounding_box(const ConvexSet& S) {
  if (S.dim() == 1 && S.kind() == ConvexSet::Kind::Cut) {
    auto [a, b] = S.interval();
    return {pt({a}), pt({std::max(a, b)})};
  }
  if (const auto* poly = S.polygon(); poly && !poly->empty()) {
    Vec2 lo = (*poly)[0], hi = (*poly)[0];
    for (const auto& v : *poly) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    return {pt({lo.x(), lo.y()}), pt({hi.x(), hi.y()})};
  }
  if (S.base_kind() == ConvexSet::Kind::Box) return {S.lo(), S.hi()};
  const Point r = Point::Constant(S.dim(), S.radius());
  return {S.center() - r, S.center() + r};
}

Point sample_point(const ConvexSet& S, std::mt19937_64& rng) {
  const BoundingBox bb = bounding_box(S);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Point p(S.dim());
  for (int attempt = 0; attempt < 200; ++attempt) {
    for (int i = 0; i < S.dim(); ++i) p(i) = bb.lo(i) + u(rng) * (bb.hi(i) - bb.lo(i));
    if (contains(S, p, 0.0)) return p;
  }
  if (const auto* poly = S.polygon(); poly && !poly->empty()) {
    // Random convex combination of the vertices.
    std::exponential_distribution<double> e(1.0);
    Vec2 acc = Vec2::Zero();
    double total = 0.0;
    for (const auto& v : *poly) {
      const double w = e(rng);
      acc += w * v;
      total += w;
    }
    acc /= total;
    return pt({acc.x(), acc.y()});
  }
  return project(S, p);
}

bool structurally_nested(const ConvexSet& inner, const ConvexSet& outer) {
  if (inner.dim() != outer.dim() || inner.base_kind() != outer.base_kind()) return false;
  if (inner.base_kind() == ConvexSet::Kind::Box) {
    if (inner.lo() != outer.lo() || inner.hi() != outer.hi()) return false;
  } else if (inner.center() != outer.center() || inner.radius() != outer.radius()) {
    return false;
  }
  const auto& ci = inner.cuts();
  const auto& co = outer.cuts();
  if (co.size() > ci.size()) return false;
  for (std::size_t i = 0; i < co.size(); ++i)
    if (ci[i].a != co[i].a || ci[i].b != co[i].b) return false;
  return true;
}

CheckReport assert_nested(const NestedSequence& seq, int samples, std::uint64_t seed) {
  CheckReport rep;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 1; t < seq.size(); ++t) {
    if (!structurally_nested(seq[t], seq[t - 1])) {
      std::ostringstream os;
      os << "S_" << t + 1 << " is not S_" << t << " plus appended cuts";
      rep.violations.push_back(os.str());
    }
    if (is_empty(seq[t])) {
      std::ostringstream os;
      os << "S_" << t + 1 << " is empty";
      rep.violations.push_back(os.str());
      continue;
    }
    const double tol = feas_tol(seq[t - 1]);
    for (int s = 0; s < samples; ++s) {
      const Point p = sample_point(seq[t], rng);
      if (!contains(seq[t - 1], p, tol)) {
        std::ostringstream os;
        os << "sample of S_" << t + 1 << " lies outside S_" << t;
        rep.violations.push_back(os.str());
        break;
      }
    }
  }
  return rep;
}

}  // namespace cones
