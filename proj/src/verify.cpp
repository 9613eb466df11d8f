#include "cones/verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "cones/errors.hpp"
#include "cones/harness.hpp"
#include "cones/oracle.hpp"
#include "cones/solvers.hpp"

namespace cones {

namespace {

using Checks = std::vector<CheckResult>;

// Runs body, which returns an empty string on success or a failure detail.
void check(Checks& out, const std::string& suite, const std::string& name, const std::function<std::string()>& body) {
  CheckResult r{suite, name, false, ""};
  try {
    r.detail = body();
    r.pass = r.detail.empty();
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  out.push_back(r);
}

template <typename... Args>
std::string str(const Args&... args) {
  std::ostringstream os;
  os.precision(12);
  (os << ... << args);
  return os.str();
}

struct Named {
  std::string name;
  Instance inst;
};

std::vector<Named> oblivious_corpus() {
  std::vector<Named> v = {
      {"sc_lb(64)", gen_sc_lower_bound(64, 1, 4)},
      {"convex_lb(16)", gen_convex_lower_bound(16, 4, 4 / (2 * std::sqrt(2.0)), 4 / (4 * std::sqrt(2.0)))},
      {"directional(210,200)", gen_directional(210, 200)},
      {"frozen(7,200)", gen_frozen(7, 200, 1, 4)},
  };
  for (int s = 1; s <= 20; ++s)
    v.push_back({str("random_1d_lin(50,", s, ") fixed f"), as_fixed_objective(gen_random_1d_lin(50, s))});
  return v;
}

std::vector<Named> full_corpus() {
  std::vector<Named> v = oblivious_corpus();
  v.push_back({"adversary_sharp(512)", adversary_sharp(4, 8, 4, 1, 0.9, 512)});
  v.push_back({"adversary_sc(512)", adversary_sc(4, 8, 4, 0.9, 1, 0.5, 512)});
  return v;
}

// Box [-3,3]^2 cut by random halfspaces that keep a random interior point.
ConvexSet random_polygon(std::mt19937_64& rng, int ncuts) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Point c = pt({u(rng), u(rng)});
  std::vector<Halfspace> cuts;
  for (int i = 0; i < ncuts; ++i) {
    const Point a = pt({u(rng), u(rng)});
    if (a.norm() < 1e-3) continue;
    cuts.push_back(make_halfspace(a, a.dot(c) - 0.5 * std::abs(u(rng)) * a.norm()));
  }
  return ConvexSet::cut(ConvexSet::box(pt({-3, -3}), pt({3, 3})), cuts);
}

std::string projection_contract(const ConvexSet& S, std::mt19937_64& rng, int samples) {
  const BoundingBox bb = bounding_box(S);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    Point x(S.dim());
    for (int i = 0; i < S.dim(); ++i) x(i) = 0.5 * (bb.lo(i) + bb.hi(i)) + 2.0 * (bb.hi(i) - bb.lo(i) + 1.0) * u(rng);
    const Point p = project(S, x);
    if (!contains(S, p, feas_tol(S))) return str("projection left the set at sample ", s);
    if ((project(S, p) - p).norm() > proj_tol(p)) return str("projection not idempotent at sample ", s);
    for (int k = 0; k < 5; ++k) {
      const Point y = sample_point(S, rng);
      if (!contains(S, y, 0.0)) continue;
      if ((p - y).norm() > (x - y).norm() + proj_tol(x)) return str("projection expands a distance at sample ", s);
    }
  }
  return "";
}

Checks geometry_suite() {
  Checks out;
  const std::string S = "geometry";
  for (const Named& n : oblivious_corpus())
    check(out, S, "nested " + n.name, [&] {
      const CheckReport rep = assert_nested(n.inst.sets, 20, 7);
      return rep.ok() ? "" : rep.violations.front();
    });
  check(out, S, "projection contract on random polygons", [] {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
      const std::string e = projection_contract(random_polygon(rng, 4), rng, 20);
      if (!e.empty()) return str("polygon ", i, ": ", e);
    }
    return std::string();
  });
  check(out, S, "projection contract in 3-D (box and ball cuts)", [] {
    std::mt19937_64 rng(12);
    const Point n = pt({1, 1, 1});
    const ConvexSet A = ConvexSet::cut(ConvexSet::box(pt({0, 0, 0}), pt({2, 2, 2})), {make_halfspace(n, 2.0)});
    const ConvexSet B = ConvexSet::cut(ConvexSet::ball(pt({0, 0, 0}), 2.0), {make_halfspace(pt({1, 0, 0}), 0.5)});
    std::string e = projection_contract(A, rng, 30);
    if (e.empty()) e = projection_contract(B, rng, 30);
    return e;
  });
  check(out, S, "projection contract in 4-D (iterative)", [] {
    std::mt19937_64 rng(13);
    const ConvexSet A = ConvexSet::cut(ConvexSet::box(Point::Zero(4), Point::Constant(4, 2.0)),
                                       {make_halfspace(Point::Ones(4), 3.0)});
    return projection_contract(A, rng, 10);
  });
  check(out, S, "membership examples", [] {
    const ConvexSet C = ConvexSet::cut(ConvexSet::box(pt({0, 0}), pt({10, 10})), {make_halfspace(pt({1, 1}), 3.0)});
    if (!contains(ConvexSet::box(pt({0, 0}), pt({1, 1})), pt({0.5, 0.5}), 0)) return std::string("interior point");
    if (!contains(ConvexSet::ball(pt({0, 0}), 1), pt({1 + 1e-12, 0}), 1e-9)) return std::string("ball boundary");
    if (contains(C, pt({1, 1}), 0)) return std::string("(1,1) should violate x1 + x2 >= 3");
    return std::string();
  });
  return out;
}

std::vector<Objective> planar_objectives(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  return {Objective::quadratic(pt({u(rng), u(rng)})), Objective::squared_norm(2),
          Objective::scaled_norm(1.5, pt({u(rng), u(rng)})), Objective::max_abs(), Objective::linear_plus_quad(0.3)};
}

Checks solvers_suite() {
  Checks out;
  const std::string S = "solvers";
  check(out, S, "minimize_over agrees with grid brute force", [] {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 50; ++i) {
      const ConvexSet X = random_polygon(rng, 3);
      for (Objective f : planar_objectives(rng)) {
        set_regularity(f, X);
        const MinResult mr = minimize_over(f, X);
        const OfflineResult g = brute_force_min_grid(f, X, 101);
        const BoundingBox bb = bounding_box(X);
        const double cell = (bb.hi - bb.lo).norm() / 100.0;
        if (mr.value > g.value + opt_tol(g.value))
          return str("instance ", i, " ", kind_name(f.kind), ": solver ", mr.value, " above grid ", g.value);
        if (g.value - mr.value > 2.0 * f.reg.G.value_or(1.0) * cell + 1e-9)
          return str("instance ", i, " ", kind_name(f.kind), ": grid ", g.value, " far above solver ", mr.value);
      }
    }
    return std::string();
  });
  check(out, S, "sublevel projection is feasible and nearest", [] {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 20; ++i) {
      const ConvexSet X = random_polygon(rng, 3);
      for (const Objective& f : planar_objectives(rng)) {
        const MinResult mr = minimize_over(f, X);
        const double level = mr.value + 0.5;
        const Point ref = pt({5.0, -5.0});
        const Point p = project_sublevel(f, X, level, ref);
        if (!contains(X, p, feas_tol(X)) || eval(f, p) > level + 1e-7)
          return str("instance ", i, " ", kind_name(f.kind), ": result outside the sublevel set");
        for (int k = 0; k < 200; ++k) {
          const Point y = sample_point(X, rng);
          if (eval(f, y) <= level && (y - ref).norm() < (p - ref).norm() - 1e-6)
            return str("instance ", i, " ", kind_name(f.kind), ": sampled point closer than the projection");
        }
      }
    }
    return std::string();
  });
  check(out, S, "prox minimizes the proximal objective", [] {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      for (const Objective& f : planar_objectives(rng)) {
        const Point r = pt({2 * n(rng), 2 * n(rng)});
        const double lambda = 0.1 + std::abs(n(rng));
        const Point p = prox(f, r, lambda);
        auto h = [&](const Point& x) { return 0.5 * (x - r).squaredNorm() + lambda * eval(f, x); };
        for (int k = 0; k < 50; ++k) {
          const Point q = p + 0.05 * pt({n(rng), n(rng)});
          if (h(q) < h(p) - 1e-10) return str(kind_name(f.kind), ": perturbation improves the prox objective");
        }
      }
    }
    return std::string();
  });
  check(out, S, "ScaledNorm is sharp around its own center", [] {
    const Objective f = Objective::scaled_norm(1.0, Point::Zero(2));
    const CheckReport rep = check_alpha_sharp(f, ConvexSet::ball(Point::Zero(2), 3.0), 1.0, 200, 5);
    return rep.ok() ? std::string() : rep.violations.front();
  });
  return out;
}

Checks algorithms_suite(const VerifyOptions& opt) {
  Checks out;
  const std::string S = "algorithms";
  PolicyParams fp;
  fp.disable_jump = opt.disable_jump;
  for (const Named& n : full_corpus())
    check(out, S, "frugal regret <= 0 on " + n.name, [&] {
      const Trace tr = run("frugal", fp, n.inst);
      // A jump onto the delta-sublevel surrogate of a non-unique argmin may overshoot v by delta.
      const bool surrogate = !has_unique_argmin(n.inst.objective(1));
      int jumps = 0;
      for (const StepRecord& r : tr.records) {
        jumps += r.kind == StepKind::Jump ? 1 : 0;
        const double tol = cond_tol(r.t, r.v_t) + (surrogate ? jumps * argmin_delta(r.v_t) : 0.0);
        if (r.regret_cum > tol) return str("regret ", r.regret_cum, " at t = ", r.t);
      }
      return std::string();
    });
  for (const Named& n : {Named{"directional(210,200)", gen_directional(210, 200)}, Named{"sc_lb(64)", gen_sc_lower_bound(64, 1, 4)},
                         Named{"convex_lb(16)", gen_convex_lower_bound(16, 4, 4 / (2 * std::sqrt(2.0)), 4 / (4 * std::sqrt(2.0)))}})
    check(out, S, "gap_frugal budget F_t <= t v_t + C_t on " + n.name, [&] {
      const Trace tr = run("gap_frugal", {}, n.inst);
      double C = 0.0;
      for (const StepRecord& r : tr.records) {
        C += 1.0 / (static_cast<double>(r.t) * r.t);
        if (r.F_t > r.t * r.v_t + C + cond_tol(r.t, r.v_t)) return str("budget exceeded at t = ", r.t);
      }
      return std::string();
    });
  check(out, S, "lsp level bound f(x_t) <= L_p + eps", [] {
    for (double eps : {0.005, 0.1}) {
      LspState st;
      st.eps = eps;
      const Instance inst = gen_sc_lower_bound(64, 1, 4);
      st.x_prev = inst.x0;
      for (int t = 1; t <= inst.T; ++t) {
        st.t = t;
        const StepOutcome o = lsp_step(inst.objective(t), inst.sets[t - 1], st);
        if (eval(inst.objective(t), o.action) > st.L + eps + opt_tol(st.L + eps)) return str("level exceeded at t = ", t);
      }
    }
    return std::string();
  });
  check(out, S, "every policy stays feasible", [] {
    for (const Named& n : full_corpus())
      for (const std::string& p : policy_names()) {
        if (p == "ab" && n.inst.dim() != 1) continue;
        PolicyParams pp;
        pp.eps_power = -0.5;
        run(p, pp, n.inst);  // throws InfeasibleAction
      }
    return std::string();
  });
  check(out, S, "A_B actions are F_t-feasible", [] {
    for (int s = 1; s <= 20; ++s) {
      const Instance inst = gen_random_1d_lin(50, s);
      AbState st{0, inst.x0(0)};
      for (int t = 1; t <= inst.T; ++t) {
        const ConvexSet& St = inst.sets[t - 1];
        const double z = project(St, pt({st.x_prev}))(0);
        st.t = t;
        const StepOutcome o = ab_step(inst.objective(t), St, st);
        if (std::abs(o.action(0) - z) > eval(inst.objective(t), o.action) + 1e-9)
          return str("seed ", s, " t = ", t, ": action outside F_t");
      }
    }
    return std::string();
  });
  check(out, S, "harness runs are deterministic", [] {
    const Instance inst = gen_frozen(7, 200, 1, 4);
    for (const std::string p : {"greedy", "frugal", "lsp", "gap_frugal"}) {
      PolicyParams pp;
      if (trace_csv(run(p, pp, inst)) != trace_csv(run(p, pp, inst))) return "traces differ for " + p;
    }
    return std::string();
  });
  check(out, S, "budget identity of the regret increments", [] {
    for (const Named& n : {Named{"frozen", gen_frozen(7, 200, 1, 4)}, Named{"sc_lb", gen_sc_lower_bound(64, 1, 4)}})
      for (const std::string p : {"greedy", "frugal", "lsp", "gap_frugal"}) {
        const Trace tr = run(p, {}, n.inst);
        for (std::size_t i = 1; i < tr.records.size(); ++i) {
          const StepRecord& a = tr.records[i - 1];
          const StepRecord& b = tr.records[i];
          const double lhs = b.regret_cum - a.regret_cum;
          const double rhs = (b.f_x - b.v_t) - (b.t - 1) * (b.v_t - a.v_t);
          if (std::abs(lhs - rhs) > 1e-8 * (1.0 + std::abs(b.F_t))) return str(p, " on ", n.name, " at t = ", b.t);
        }
      }
    return std::string();
  });
  check(out, S, "greedy regret is minimal among policies", [] {
    for (const Named& n : {Named{"frozen", gen_frozen(7, 200, 1, 4)}, Named{"sc_lb", gen_sc_lower_bound(32, 1, 4)},
                           Named{"directional", gen_directional(10, 5)}}) {
      const double g = run("greedy", {}, n.inst).records.back().regret_cum;
      for (const std::string p : {"frugal", "lsp", "gap_frugal"}) {
        const double o = run(p, {}, n.inst).records.back().regret_cum;
        if (g > o + 1e-9 * (1.0 + std::abs(o))) return str(p, " beats greedy on ", n.name, ": ", o, " < ", g);
      }
    }
    return std::string();
  });
  return out;
}

Checks instances_suite() {
  Checks out;
  const std::string S = "instances";
  check(out, S, "tangent-chain radii follow r_i = r_{i-1} + k^2/r_{i-1}", [] {
    const double k = sc_lb_k(64, 1, 4);
    const auto mins = sc_lb_minimizers(64, 1, k);
    double r = 1.0;
    for (int i = 1; 2 * i < static_cast<int>(mins.size()); ++i) {
      r += k * k / r;
      if (std::abs(mins[2 * i].norm() - r) > 1e-9 * r) return str("radius mismatch at i = ", i);
    }
    return std::string();
  });
  check(out, S, "sc_lb sets have the chain points as minimizers", [] {
    const Instance inst = gen_sc_lower_bound(32, 1, 4);
    const auto mins = sc_lb_minimizers(32, 1, inst.meta.at("k"));
    for (int t = 1; t <= 32; ++t) {
      const Point x = minimize_over(inst.objective(t), inst.sets[t - 1]).argmin;
      if ((x - mins[t]).norm() > 1e-7) return str("minimizer mismatch at t = ", t);
    }
    return std::string();
  });
  check(out, S, "convex_lb minimizers stay inside X and alternate sides", [] {
    const double D = 4, w = D / (2 * std::sqrt(2.0));
    const Instance inst = gen_convex_lower_bound(20, D, w, D / (4 * std::sqrt(2.0)));
    for (int t = 1; t <= 20; ++t) {
      const MinResult mr = minimize_over(inst.objective(t), inst.sets[t - 1]);
      if (mr.value > w + D / std::sqrt(2.0) + 1e-9) return str("minimizer below X at t = ", t);
      if (std::abs(std::abs(mr.argmin(0)) - w) > 1e-6) return str("minimizer off the vertical sides at t = ", t);
    }
    return std::string();
  });
  for (const std::string fam : {"adversary_sharp", "adversary_sc"})
    check(out, S, fam + " emits structurally nested sets", [&] {
      const Instance inst = make_instance(fam, 512, {});
      for (const std::string p : {"greedy", "frugal"}) {
        NestedSequence em;
        run(p, {}, inst, &em);
        for (std::size_t i = 1; i < em.size(); ++i)
          if (!structurally_nested(em[i], em[i - 1])) return str(p, ": S_", i + 1, " is not a cut of S_", i);
      }
      return std::string();
    });
  check(out, S, "directional projection chain stays below v_t", [] {
    const double D = 10;
    const Instance inst = gen_directional(D, 10);
    const Objective& f = inst.objective(1);
    for (int s = 1; s <= 10; ++s) {
      Point y = pt({0.0, static_cast<double>(s)});
      for (int tau = s + 1; tau <= 10; ++tau) {
        y = project(inst.sets[tau - 1], y);
        const Point expect = pt({(tau - s) / 2.0, s + (tau - s) / 2.0});
        if ((y - expect).norm() > 1e-9) return str("chain from s = ", s, " off the closed form at tau = ", tau);
        if (eval(f, y) > tau + 1e-9 + f.eps * (tau - s) * (tau - s) / 4.0) return str("value formula at tau = ", tau);
      }
    }
    return std::string();
  });
  check(out, S, "random corpus is nonnegative and reproducible", [] {
    for (int s = 1; s <= 10; ++s) {
      const Instance a = gen_random_1d_lin(30, s), b = gen_random_1d_lin(30, s);
      for (int t = 1; t <= 30; ++t) {
        if (a.sets[t - 1].interval() != b.sets[t - 1].interval()) return str("seed ", s, " not reproducible");
        for (int i = 0; i <= 100; ++i)
          if (eval(a.objective(t), pt({0.1 * i})) < 0) return str("negative loss at seed ", s);
      }
    }
    return std::string();
  });
  return out;
}

Checks oracle_suite() {
  Checks out;
  const std::string S = "oracle";
  check(out, S, "DP equals exhaustive enumeration for T <= 4", [] {
    for (int s = 1; s <= 6; ++s) {
      const int T = 1 + s % 4;
      const Instance inst = gen_random_1d_lin(T, 100 + s);
      const int n = 21;
      const OfflineResult dp = offline_lin_dp_1d(inst, n);
      std::vector<double> g(n);
      for (int i = 0; i < n; ++i) g[i] = 10.0 * i / (n - 1);
      double best = std::numeric_limits<double>::infinity();
      std::vector<int> idx(T, 0);
      while (true) {
        double c = 0.0, prev = inst.x0(0);
        bool ok = true;
        for (int t = 0; t < T && ok; ++t) {
          const Point x = pt({g[idx[t]]});
          ok = contains(inst.sets[t], x, feas_tol(inst.sets[t]));
          c += eval(inst.objective(t + 1), x) + std::abs(x(0) - prev);
          prev = x(0);
        }
        if (ok) best = std::min(best, c);
        int j = 0;
        while (j < T && ++idx[j] == n) idx[j++] = 0;
        if (j == T) break;
      }
      if (std::abs(best - dp.value) > 1e-9 * (1.0 + best)) return str("seed ", 100 + s, ": DP ", dp.value, " vs ", best);
    }
    return std::string();
  });
  check(out, S, "DP refinement is monotone", [] {
    for (int s = 1; s <= 10; ++s) {
      const Instance inst = gen_random_1d_lin(50, s);
      const double a = offline_lin_dp_1d(inst, 1001).value, b = offline_lin_dp_1d(inst, 2001).value;
      if (b > a + 1e-6) return str("seed ", s, ": 2001-grid value ", b, " above 1001-grid value ", a);
    }
    return std::string();
  });
  check(out, S, "static benchmark on the directional example", [] {
    const Instance inst = gen_directional(10, 5);
    const OfflineResult r = static_opt(inst.objective(1), inst.sets.back(), 5, inst.x0);
    if ((r.path[0] - pt({0, 5})).norm() > 1e-7 || std::abs(r.value - 25) > 1e-6)
      return str("x_OPT = (", r.path[0].transpose(), "), C_OPT = ", r.value);
    return std::string();
  });
  return out;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = {"geometry", "solvers", "algorithms", "instances", "oracle", "all"};
  return names;
}

std::vector<CheckResult> run_verify(const std::string& suite, const VerifyOptions& options) {
  Checks out;
  auto append = [&](Checks c) { out.insert(out.end(), c.begin(), c.end()); };
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "geometry") known = true, append(geometry_suite());
  if (all || suite == "solvers") known = true, append(solvers_suite());
  if (all || suite == "algorithms") known = true, append(algorithms_suite(options));
  if (all || suite == "instances") known = true, append(instances_suite());
  if (all || suite == "oracle") known = true, append(oracle_suite());
  if (!known) throw ParameterError("unknown verify suite '" + suite + "'");
  return out;
}

}  // namespace cones
