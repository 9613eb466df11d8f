#include "cones/instances.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cones/errors.hpp"
#include "cones/solvers.hpp"

namespace cones {

namespace {

const double kSqrt2 = std::sqrt(2.0);

ConvexSet rectangle(double half_width, double q_lo, double q_hi) {
  return ConvexSet::box(pt({-half_width, q_lo}), pt({half_width, q_hi}));
}

// {x : x*.x >= ||x*||^2}: the tangent halfspace at x* away from the origin.
Halfspace tangent_cut(const Point& xs) { return make_halfspace(xs, xs.squaredNorm()); }

// Shifts f so that it is nonnegative on X without moving any minimizer.
void normalize(Objective& f, const ConvexSet& X) {
  set_regularity(f, X);
  f.value_shift = 0.0;
  f.value_shift = std::max(0.0, -minimize_over(f, X).value);
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw ParameterError(msg);
}

class PeriodAdversary : public Adversary {
 public:
  PeriodAdversary(ConvexSet X, std::vector<Point> minimizers, double eps)
      : X_(std::move(X)), current_(X_), mins_(std::move(minimizers)), eps_(eps), met_(mins_.size() + 1, false) {}

  ConvexSet next(const Point& x_prev) override {
    ++t_;
    note(x_prev);
    const int K = static_cast<int>(mins_.size());
    while (k_ < K && (k_ == 0 || met_[k_])) {
      ++k_;
      cuts_.push_back(tangent_cut(mins_[k_ - 1]));
      current_ = ConvexSet::cut(X_, cuts_);
      starts_.push_back(t_);
      note(x_prev);
    }
    return current_;
  }

  void finish(const Point& x_last) override { note(x_last); }
  const std::vector<int>& period_starts() const override { return starts_; }
  int completed_periods() const override { return completed_; }

 private:
  void note(const Point& x) {
    if (k_ == 0 || met_[k_]) return;
    if ((x - mins_[k_ - 1]).norm() <= eps_) {
      met_[k_] = true;
      ++completed_;
    }
  }

  ConvexSet X_;
  ConvexSet current_;
  std::vector<Point> mins_;
  double eps_;
  std::vector<bool> met_;
  std::vector<Halfspace> cuts_;
  std::vector<int> starts_;
  int t_ = 0;
  int k_ = 0;
  int completed_ = 0;
};

Instance period_instance(const std::string& family, double a, double b, double B, double eps, int T,
                         Objective f, double eta, double Cbar) {
  require(T >= 1, "adversary requires T >= 1");
  require(b > a && a > 0, "adversary requires b > a > 0");
  require(B > 0, "adversary requires B > 0");
  require(eps > 0 && eps < B / (3.0 * kSqrt2), "adversary requires 0 < eps < B/(3 sqrt2)");
  const int K = static_cast<int>(std::floor(std::log(static_cast<double>(T)) / std::log(1.0 + Cbar))) + 1;
  const double delta = (b - a) / K;
  if (!(a > B * B / (4.0 * delta)))
    throw ParameterError("no delta satisfies a > B^2/(4 delta) with delta <= (b-a)/K; need a > B^2 K/(4(b-a))");
  const double w = B / (2.0 * kSqrt2);
  std::vector<Point> mins;
  for (int k = 1; k <= K; ++k) mins.push_back(pt({(k % 2 == 0 ? 1.0 : -1.0) * w, -(a + k * delta)}));
  const ConvexSet X = rectangle(w, -b, -a);
  normalize(f, X);

  Instance inst;
  inst.family = family;
  inst.objectives = {f};
  inst.x0 = mins[0];
  inst.T = T;
  inst.meta = {{"a", a}, {"b", b}, {"B", B}, {"eps", eps}, {"K", K}, {"delta", delta},
               {"eta", eta}, {"Cbar", Cbar}, {"Rmax", std::sqrt(B * B / 8.0 + b * b)}};
  if (f.reg.G) inst.meta["G"] = *f.reg.G;
  inst.make_adversary = [X, mins, eps]() { return std::make_unique<PeriodAdversary>(X, mins, eps); };
  return inst;
}

}  // namespace

const Objective& Instance::objective(int t) const {
  if (objectives.empty()) throw ParameterError("instance has no objective");
  if (objectives.size() == 1) return objectives[0];
  if (t < 1 || t > static_cast<int>(objectives.size())) throw ParameterError("objective index out of range");
  return objectives[t - 1];
}

double sc_lb_k(int T, double r0, double D) { return std::sqrt((D / kSqrt2) * r0 / (T / 2.0 + 1.0)); }

std::vector<Point> sc_lb_minimizers(int n, double r0, double k) {
  std::vector<Point> mins = {pt({0.0, -r0})};
  for (int t = 1; t <= n; ++t) {
    const Point& cur = mins.back();
    const double p = t % 2 == 1 ? -k : 0.0;
    const double q = (cur.squaredNorm() - cur(0) * p) / cur(1);
    mins.push_back(pt({p, q}));
  }
  return mins;
}

Instance gen_sc_lower_bound(int T, double r0, double D, bool admissible_first) {
  require(T >= 2, "sc_lb requires T >= 2");
  require(r0 > 0 && D > 0, "sc_lb requires r0 > 0 and D > 0");
  const double a = r0;
  const double w = D / (2.0 * kSqrt2);
  const double h = D / kSqrt2;
  const double k = sc_lb_k(T, r0, D);
  require(k <= w, "sc_lb: k exceeds the half width of X");
  const int ncuts = admissible_first ? T - 1 : T;
  const std::vector<Point> mins = sc_lb_minimizers(ncuts, r0, k);
  for (const Point& m : mins)
    if (m(1) < -a - h) throw ParameterError("sc_lb: the minimizer chain leaves X before T; increase D or decrease T");

  const ConvexSet X = rectangle(w, -a - h, -a);
  Instance inst;
  inst.family = "sc_lb";
  Objective f = Objective::squared_norm(2);
  normalize(f, X);
  inst.objectives = {f};
  inst.x0 = mins[0];
  inst.T = T;
  if (admissible_first) inst.sets.push_back(X);
  std::vector<Halfspace> cuts;
  for (int i = 1; i <= ncuts; ++i) {
    cuts.push_back(tangent_cut(mins[i]));
    inst.sets.push_back(ConvexSet::cut(X, cuts));
  }
  inst.meta = {{"r0", r0}, {"D", D}, {"k", k}, {"a", a}, {"admissible_first", admissible_first ? 1.0 : 0.0}};
  if (f.reg.G) inst.meta["G"] = *f.reg.G;
  return inst;
}

Instance gen_convex_lower_bound(int T, double D, double a, double k) {
  require(T >= 1, "convex_lb requires T >= 1");
  require(D > 0, "convex_lb requires D > 0");
  const double w = D / (2.0 * kSqrt2);
  const double slack = 1e-12 * (1.0 + D);
  require(a >= w - slack, "convex_lb requires a >= D/(2 sqrt2)");
  require(k > 0 && k <= w + slack, "convex_lb requires 0 < k <= D/(2 sqrt2)");
  const ConvexSet X = rectangle(w, -a - D / kSqrt2, -a);

  // x_t* for t = 1..T+1; the heights follow the figure's indexing (x_1* on q = -a).
  std::vector<Point> mins;
  double q = -a;
  for (int t = 1; t <= T + 1; ++t) {
    mins.push_back(pt({(t % 2 == 1 ? -1.0 : 1.0) * w, q}));
    q -= k / std::pow(2.0, t - 1);
  }
  Instance inst;
  inst.family = "convex_lb";
  Objective f = Objective::max_abs();
  normalize(f, X);
  inst.objectives = {f};
  inst.T = T;
  std::vector<Halfspace> cuts;
  for (int t = 1; t <= T; ++t) {
    const Point e = mins[t] - mins[t - 1];
    Point n = pt({-e(1), e(0)});
    if (n.dot(mins[t - 1]) < 0) n = -n;
    cuts.push_back(make_halfspace(n, n.dot(mins[t - 1])));
    inst.sets.push_back(ConvexSet::cut(X, cuts));
  }
  inst.x0 = project(inst.sets[0], Point::Zero(2));
  inst.meta = {{"D", D}, {"a", a}, {"k", k}, {"G", 1.0}};
  return inst;
}

Instance adversary_sharp(double a, double b, double B, double c, double eps, int T) {
  require(c > 0, "adversary_sharp requires c > 0");
  const double R = std::sqrt(B * B / 8.0 + b * b);
  const double eta = c * eps * eps / (2.0 * R + eps);
  const double Cbar = R * (2.0 * R + eps) / (eps * eps);
  Instance inst = period_instance("adversary_sharp", a, b, B, eps, T, Objective::scaled_norm(c, Point::Zero(2)), eta, Cbar);
  inst.meta["c"] = c;
  inst.meta["alpha"] = c;
  return inst;
}

Instance adversary_sc(double a, double b, double B, double eps, double c_R, double lambda, int T) {
  require(lambda >= 0 && lambda < 1, "adversary_sc requires lambda in [0, 1)");
  require(c_R >= 0, "adversary_sc requires c_R >= 0");
  const double R = std::sqrt(B * B / 8.0 + b * b);
  const double eta = eps * eps / 2.0;
  const double Cbar = R * R / (eps * eps);
  Instance inst = period_instance("adversary_sc", a, b, B, eps, T, Objective::quadratic(Point::Zero(2)), eta, Cbar);
  inst.meta["c_R"] = c_R;
  inst.meta["lambda"] = lambda;
  return inst;
}

Instance gen_directional(double D, int T) {
  require(D > 2, "directional requires D > 2");
  require(T >= 1 && T <= D, "directional requires 1 <= T <= D");
  const double eps = 4.0 / ((D - 2.0) * (D - 2.0));
  const ConvexSet X = ConvexSet::box(pt({0.0, 0.0}), pt({D, D}));
  Instance inst;
  inst.family = "directional";
  Objective f = Objective::linear_plus_quad(eps);
  normalize(f, X);
  inst.objectives = {f};
  inst.x0 = pt({0.0, 1.0});
  inst.T = T;
  std::vector<Halfspace> cuts;
  for (int t = 1; t <= T; ++t) {
    cuts.push_back(make_halfspace(pt({1.0, 1.0}), static_cast<double>(t)));
    inst.sets.push_back(ConvexSet::cut(X, cuts));
  }
  inst.meta = {{"D", D}, {"eps", eps}};
  if (f.reg.G) inst.meta["G"] = *f.reg.G;
  return inst;
}

Instance gen_frozen(int T_freeze, int T, double r0, double D) {
  require(T_freeze >= 1 && T_freeze <= T, "frozen requires 1 <= T_freeze <= T");
  Instance inst = gen_sc_lower_bound(T_freeze + 1, r0, D, true);
  inst.family = "frozen";
  if (static_cast<int>(inst.sets.size()) > T) inst.sets.erase(inst.sets.begin() + T, inst.sets.end());
  while (static_cast<int>(inst.sets.size()) < T) inst.sets.push_back(inst.sets.back());
  inst.T = T;
  inst.meta["T_freeze"] = T_freeze;
  return inst;
}

Instance gen_random_1d_lin(int T, std::uint64_t seed) {
  require(T >= 1, "random_1d_lin requires T >= 1");
  XorShift64Star rng(seed);
  const double unit = 0.01;  // every breakpoint lies on this lattice inside [0, 10]
  long lo = rng.uniform_int(0, 300);
  long hi = rng.uniform_int(700, 1000);
  const ConvexSet X = ConvexSet::box(pt({0.0}), pt({10.0}));
  Instance inst;
  inst.family = "random_1d_lin";
  inst.T = T;
  inst.x0 = pt({unit * static_cast<double>(rng.uniform_int(lo, hi))});
  auto lower = [&](long v) { return make_halfspace(pt({1.0}), unit * static_cast<double>(v)); };
  auto upper = [&](long v) { return make_halfspace(pt({-1.0}), -unit * static_cast<double>(v)); };
  std::vector<Halfspace> cuts = {lower(lo), upper(hi)};
  for (int t = 1; t <= T; ++t) {
    if (t > 1 && rng.uniform01() < 0.5) {
      const long span = hi - lo;
      const long dlo = rng.uniform_int(0, span / 8);
      lo += dlo;
      const long dhi = rng.uniform_int(0, (hi - lo) / 8);
      hi -= dhi;
      if (dlo > 0) cuts.push_back(lower(lo));
      if (dhi > 0) cuts.push_back(upper(hi));
    }
    inst.sets.push_back(ConvexSet::cut(X, cuts));
    const double m = unit * static_cast<double>(rng.uniform_int(0, 1000));
    Objective f = rng.uniform01() < 0.5 ? Objective::abs_shift(m)
                                        : Objective::scaled_norm(1.0 + 2.0 * rng.uniform01(), pt({m}));
    normalize(f, X);
    inst.objectives.push_back(f);
  }
  inst.meta = {{"seed", static_cast<double>(seed)}, {"alpha", 1.0}, {"G", 3.0}};
  return inst;
}

Instance as_fixed_objective(const Instance& inst) {
  Instance out = inst;
  if (!out.objectives.empty()) out.objectives.resize(1);
  out.meta["fixed_objective"] = 1.0;
  return out;
}

Instance oblivious_rerun(const Instance& inst, const NestedSequence& emitted) {
  Instance out = inst;
  out.make_adversary = nullptr;
  out.sets = emitted;
  out.T = static_cast<int>(emitted.size());
  out.meta["recorded"] = 1.0;
  return out;
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"sc_lb",     "convex_lb", "adversary_sharp", "adversary_sc",
                                                 "directional", "frozen",  "random_1d_lin"};
  return names;
}

Instance make_instance(const std::string& family, int T, const std::map<std::string, double>& params) {
  std::set<std::string> used;
  auto get = [&](const std::string& key, double def) {
    used.insert(key);
    auto it = params.find(key);
    return it == params.end() ? def : it->second;
  };
  Instance inst;
  if (family == "sc_lb") {
    inst = gen_sc_lower_bound(T, get("r0", 1.0), get("D", 4.0), get("admissible_first", 0.0) != 0.0);
  } else if (family == "convex_lb") {
    const double D = get("D", 4.0);
    inst = gen_convex_lower_bound(T, D, get("a", D / (2.0 * kSqrt2)), get("k", D / (4.0 * kSqrt2)));
  } else if (family == "adversary_sharp" || family == "sharp_adv") {
    inst = adversary_sharp(get("a", 4.0), get("b", 8.0), get("B", 4.0), get("c", 1.0), get("eps", 0.9), T);
  } else if (family == "adversary_sc" || family == "sc_adv") {
    inst = adversary_sc(get("a", 4.0), get("b", 8.0), get("B", 4.0), get("eps", 0.9), get("c_R", 1.0),
                        get("lambda", 0.5), T);
  } else if (family == "directional") {
    inst = gen_directional(get("D", 210.0), T);
  } else if (family == "frozen") {
    inst = gen_frozen(static_cast<int>(get("T_freeze", 7.0)), T, get("r0", 1.0), get("D", 4.0));
  } else if (family == "random_1d_lin") {
    inst = gen_random_1d_lin(T, static_cast<std::uint64_t>(get("seed", 1.0)));
    if (get("fixed_objective", 0.0) != 0.0) inst = as_fixed_objective(inst);
  } else {
    throw ParameterError("unknown instance family '" + family + "'");
  }
  for (const auto& kv : params)
    if (!used.count(kv.first)) throw ParameterError("unknown parameter '" + kv.first + "' for family " + family);
  return inst;
}

}  // namespace cones
