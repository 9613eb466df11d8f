#include "cones/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cones/errors.hpp"
#include "cones/solvers.hpp"

namespace cones {

namespace {

void require_nonempty(const ConvexSet& S) {
  if (is_empty(S)) throw EmptySet("policy received an empty feasible set");
}

void require_started(const Point& x_prev, const ConvexSet& S) {
  if (x_prev.size() != S.dim()) throw DimensionMismatch("policy state has no initial action of matching dimension");
}

double ternary(const std::function<double(double)>& h, double a, double b) {
  for (int i = 0; i < 200 && b - a > 0; ++i) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (h(m1) <= h(m2)) b = m2;
    else a = m1;
  }
  return 0.5 * (a + b);
}

// Largest point s between `from` and `to` (walking from `from`) with pred true,
// given pred(from) true and pred(to) false.
double bisect(const std::function<bool(double)>& pred, double from, double to) {
  for (int i = 0; i < 128; ++i) {
    const double mid = 0.5 * (from + to);
    if (mid == from || mid == to) break;
    if (pred(mid)) from = mid;
    else to = mid;
  }
  return from;
}

}  // namespace

std::string step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Lazy: return "lazy";
    case StepKind::Jump: return "jump";
    case StepKind::PhaseTransition: return "phase_transition";
    case StepKind::Greedy: return "greedy";
    case StepKind::ABMove: return "ab_move";
  }
  return "unknown";
}

double cond_tol(int t, double v) { return 1e-9 * t * (1.0 + std::abs(v)); }

StepOutcome greedy_step(const Objective& f, const ConvexSet& S, GreedyState& state) {
  require_nonempty(S);
  require_started(state.x_prev, S);
  const MinResult mr = minimize_over(f, S);
  StepOutcome out;
  out.action = nearest_minimizer(f, S, state.x_prev, argmin_delta(mr.value));
  out.kind = StepKind::Greedy;
  out.diagnostics["f_x"] = eval(f, out.action);
  out.diagnostics["v_t"] = mr.value;
  state.x_prev = out.action;
  return out;
}

StepOutcome frugal_step(const Objective& f, const ConvexSet& S, FrugalState& state) {
  require_nonempty(S);
  require_started(state.x_prev, S);
  const int t = state.t;
  const MinResult mr = minimize_over(f, S);
  const double v = mr.value;
  const Point xhat = project(S, state.x_prev);
  const double fhat = eval(f, xhat);
  const double slack = static_cast<double>(t) * v + cond_tol(t, v) - (state.F + fhat);
  StepOutcome out;
  if (slack >= 0.0 || state.disable_jump) {
    out.action = xhat;
    out.kind = StepKind::Lazy;
  } else {
    out.action = nearest_minimizer(f, S, state.x_prev, argmin_delta(v));
    out.kind = StepKind::Jump;
    state.jump_times.push_back(t);
  }
  const double fx = out.kind == StepKind::Lazy ? fhat : eval(f, out.action);
  state.F += fx;
  state.x_prev = out.action;
  out.diagnostics["f_x"] = fx;
  out.diagnostics["v_t"] = v;
  out.diagnostics["slack"] = slack;
  out.diagnostics["F_t"] = state.F;
  return out;
}

StepOutcome lsp_step(const Objective& f, const ConvexSet& S, LspState& state) {
  if (!(state.eps > 0)) throw ParameterError("LSP requires eps > 0");
  require_nonempty(S);
  require_started(state.x_prev, S);
  const MinResult mr = minimize_over(f, S);
  const double v = mr.value;
  StepOutcome out;
  out.kind = StepKind::Lazy;
  if (state.p == 0 || v > state.L + state.eps + opt_tol(state.L + state.eps)) {
    state.p += 1;
    state.L = v;
    out.kind = StepKind::PhaseTransition;
  }
  out.action = project_sublevel(f, S, state.L + state.eps, state.x_prev);
  state.x_prev = out.action;
  out.diagnostics["f_x"] = eval(f, out.action);
  out.diagnostics["v_t"] = v;
  out.diagnostics["level"] = state.L + state.eps;
  return out;
}

StepOutcome gap_frugal_step(const Objective& f, const ConvexSet& S, GapFrugalState& state) {
  require_nonempty(S);
  require_started(state.x_prev, S);
  const int t = state.t;
  const double eps_t = 1.0 / (static_cast<double>(t) * static_cast<double>(t));
  state.C += eps_t;
  const MinResult mr = minimize_over(f, S);
  const double v = mr.value;
  const Point xhat = project(S, state.x_prev);
  const double fhat = eval(f, xhat);
  const double tol = cond_tol(t, v);
  const double budget_slack = static_cast<double>(t) * v + state.C + tol - (state.F + fhat);
  const double gap_slack = eps_t + tol - (fhat - v);
  StepOutcome out;
  if (budget_slack >= 0.0 || gap_slack >= 0.0) {
    out.action = xhat;
    out.kind = StepKind::Lazy;
  } else {
    out.action = nearest_minimizer(f, S, state.x_prev, argmin_delta(v));
    out.kind = StepKind::Jump;
    state.jump_times.push_back(t);
  }
  const double fx = out.kind == StepKind::Lazy ? fhat : eval(f, out.action);
  state.F += fx;
  state.x_prev = out.action;
  out.diagnostics["f_x"] = fx;
  out.diagnostics["v_t"] = v;
  out.diagnostics["slack"] = std::max(budget_slack, gap_slack);
  out.diagnostics["F_t"] = state.F;
  out.diagnostics["C_t"] = state.C;
  return out;
}

StepOutcome ab_step(const Objective& f, const ConvexSet& S, AbState& state) {
  if (S.dim() != 1 || f.dim != 1) throw DimensionMismatch("A_B is defined for d = 1");
  require_nonempty(S);
  auto [lo, hi] = S.interval();
  if (lo > hi) lo = hi = 0.5 * (lo + hi);
  const double z = std::clamp(state.x_prev, lo, hi);
  auto fv = [&](double s) { return eval(f, pt({s})); };
  auto g = [&](double s) { return fv(s) - std::abs(s - z); };
  if (g(z) < 0.0) throw BisectionFailure("A_B requires f_t >= 0 at the projected point");

  // On each half-line g is convex, so {g >= 0} meets it in an interval starting at z.
  auto edge = [&](double end) {
    if (end == z) return z;
    const double m = ternary(g, std::min(z, end), std::max(z, end));
    const double m_best = g(end) < g(m) ? end : m;
    if (g(m_best) >= 0.0) return end;
    const double r = bisect([&](double s) { return g(s) >= 0.0; }, z, m_best);
    if (g(r) < -1e-9) throw BisectionFailure("g changes sign inconsistently with convexity");
    return r;
  };
  const double L = edge(lo);
  const double R = edge(hi);

  double x = ternary(fv, L, R);
  for (double c : {L, R})
    if (fv(c) < fv(x)) x = c;
  // Prefer the minimizer closest to x_prev among near-ties.
  const double v = fv(x);
  const double level = v + argmin_delta(v);
  const double anchor = std::clamp(state.x_prev, L, R);
  if (fv(anchor) <= level) x = anchor;
  else x = bisect([&](double s) { return fv(s) <= level; }, x, anchor);

  StepOutcome out;
  out.action = pt({x});
  out.kind = StepKind::ABMove;
  out.diagnostics["f_x"] = fv(x);
  out.diagnostics["z_t"] = z;
  out.diagnostics["C_lo"] = L;
  out.diagnostics["C_hi"] = R;
  state.x_prev = x;
  return out;
}

double lin_cost(const std::vector<Point>& actions, const Point& x0, const std::vector<Objective>& fs) {
  if (fs.size() != actions.size() && fs.size() != 1)
    throw ParameterError("lin_cost needs one objective per step or a single fixed objective");
  double total = 0.0;
  Point prev = x0;
  for (std::size_t t = 0; t < actions.size(); ++t) {
    const Objective& f = fs.size() == 1 ? fs[0] : fs[t];
    total += eval(f, actions[t]) + (actions[t] - prev).norm();
    prev = actions[t];
  }
  return total;
}

namespace {

class GreedyPolicy : public Policy {
 public:
  std::string name() const override { return "greedy"; }
  void reset(const Point& x0) override { s_ = GreedyState{0, x0}; }
  StepOutcome step(const Objective& f, const ConvexSet& S) override {
    ++s_.t;
    return greedy_step(f, S, s_);
  }
  int phase() const override { return 0; }

 private:
  GreedyState s_;
};

class FrugalPolicy : public Policy {
 public:
  explicit FrugalPolicy(bool disable_jump) : disable_jump_(disable_jump) {}
  std::string name() const override { return "frugal"; }
  void reset(const Point& x0) override {
    s_ = FrugalState{};
    s_.x_prev = x0;
    s_.disable_jump = disable_jump_;
  }
  StepOutcome step(const Objective& f, const ConvexSet& S) override {
    ++s_.t;
    return frugal_step(f, S, s_);
  }
  int phase() const override { return static_cast<int>(s_.jump_times.size()); }
  std::vector<int> jump_times() const override { return s_.jump_times; }

 private:
  bool disable_jump_;
  FrugalState s_;
};

class LspPolicy : public Policy {
 public:
  explicit LspPolicy(double eps) : eps_(eps) {}
  std::string name() const override { return "lsp"; }
  void reset(const Point& x0) override {
    s_ = LspState{};
    s_.eps = eps_;
    s_.x_prev = x0;
  }
  StepOutcome step(const Objective& f, const ConvexSet& S) override {
    ++s_.t;
    return lsp_step(f, S, s_);
  }
  int phase() const override { return s_.p; }

 private:
  double eps_;
  LspState s_;
};

class GapFrugalPolicy : public Policy {
 public:
  std::string name() const override { return "gap_frugal"; }
  void reset(const Point& x0) override {
    s_ = GapFrugalState{};
    s_.x_prev = x0;
  }
  StepOutcome step(const Objective& f, const ConvexSet& S) override {
    ++s_.t;
    return gap_frugal_step(f, S, s_);
  }
  int phase() const override { return static_cast<int>(s_.jump_times.size()); }
  std::vector<int> jump_times() const override { return s_.jump_times; }

 private:
  GapFrugalState s_;
};

class AbPolicy : public Policy {
 public:
  std::string name() const override { return "ab"; }
  void reset(const Point& x0) override {
    if (x0.size() != 1) throw DimensionMismatch("A_B is defined for d = 1");
    s_ = AbState{0, x0(0)};
  }
  StepOutcome step(const Objective& f, const ConvexSet& S) override {
    ++s_.t;
    return ab_step(f, S, s_);
  }
  int phase() const override { return 0; }

 private:
  AbState s_;
};

}  // namespace

const std::vector<std::string>& policy_names() {
  static const std::vector<std::string> names = {"greedy", "frugal", "lsp", "gap_frugal", "ab"};
  return names;
}

std::unique_ptr<Policy> make_policy(const std::string& name, const PolicyParams& params, int T) {
  if (name == "greedy") return std::make_unique<GreedyPolicy>();
  if (name == "frugal") return std::make_unique<FrugalPolicy>(params.disable_jump);
  if (name == "lsp") {
    double eps = params.eps;
    if (!(eps > 0)) eps = std::pow(static_cast<double>(std::max(T, 1)), params.eps_power);
    if (!(eps > 0) || !std::isfinite(eps)) throw ParameterError("LSP requires eps > 0");
    return std::make_unique<LspPolicy>(eps);
  }
  if (name == "gap_frugal") return std::make_unique<GapFrugalPolicy>();
  if (name == "ab") return std::make_unique<AbPolicy>();
  throw ParameterError("unknown policy '" + name + "'");
}

}  // namespace cones
