// Acceptance run: one PASS/FAIL line per primary criterion. Exit 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cones/algorithms.hpp"
#include "cones/harness.hpp"
#include "cones/instances.hpp"
#include "cones/oracle.hpp"
#include "cones/verify.hpp"

using namespace cones;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(const std::string& name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= limit_s) {
    o.pass = false;
    o.detail << " [runtime over " << limit_s << " s]";
  }
  if (!o.pass) ++failures;
  std::printf("%s %s:%s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str(), secs);
  std::fflush(stdout);
}

double lin_of(const Trace& tr, const Instance& inst) {
  std::vector<Point> xs;
  for (const StepRecord& r : tr.records) xs.push_back(r.x);
  return lin_cost(xs, inst.x0, inst.objectives);
}

// Worst Lin_policy / DP-OPT over 50 seeds, with the 1001 vs 2001 refinement check.
void competitive(Outcome& o, const std::string& policy, double bound) {
  double worst = 0.0, worst_drift = 0.0;
  for (int seed = 1; seed <= 50; ++seed) {
    const Instance inst = gen_random_1d_lin(50, seed);
    const double lin = lin_of(run(policy, {}, inst), inst);
    const double opt_fine = offline_lin_dp_1d(inst, 2001).value;
    const double opt_coarse = offline_lin_dp_1d(inst, 1001).value;
    const double r_fine = lin / opt_fine, r_coarse = lin / opt_coarse;
    const double drift = std::abs(r_fine - r_coarse) / r_fine;
    worst = std::max(worst, r_fine);
    worst_drift = std::max(worst_drift, drift);
    o.require(drift <= 0.01, "refinement drift seed " + std::to_string(seed));
    o.require(r_fine <= bound, "ratio seed " + std::to_string(seed));
  }
  o.detail << " worst ratio " << worst << " (bound " << bound << "), worst refinement drift " << worst_drift;
}

}  // namespace

int main() {
  const double kSqrt2 = std::sqrt(2.0);

  criterion("frugal nonpositive regret on every family", 30, [&](Outcome& o) {
    std::vector<Instance> insts = {make_instance("sc_lb", 200, {}),       make_instance("convex_lb", 200, {}),
                                   make_instance("directional", 200, {}), make_instance("frozen", 200, {}),
                                   make_instance("adversary_sharp", 200, {}), make_instance("adversary_sc", 200, {})};
    for (int s = 1; s <= 20; ++s)
      insts.push_back(make_instance("random_1d_lin", 200, {{"seed", static_cast<double>(s)}, {"fixed_objective", 1}}));
    double worst = -1e300;
    for (const Instance& inst : insts) {
      const Trace tr = run("frugal", {}, inst);
      for (const StepRecord& r : tr.records) {
        worst = std::max(worst, r.regret_cum);
        o.require(r.regret_cum <= 1e-6, inst.family + " t=" + std::to_string(r.t));
        if (r.regret_cum > 1e-6) break;
      }
    }
    o.detail << " " << insts.size() << " instances, max regret_cum " << worst;
  });

  criterion("frozen instance jump near t = 166", 5, [&](Outcome& o) {
    const Trace tr = run("frugal", {}, gen_frozen(7, 200, 1, 4));
    o.require(tr.jump_times.size() == 1, "exactly one jump");
    if (!tr.jump_times.empty()) {
      const int j = tr.jump_times.front();
      o.require(j >= 165 && j <= 167, "jump time in [165, 167]");
      for (int t = j; t <= 200; ++t) o.require(tr.records[t - 1].regret_cum <= 1e-6, "regret after jump");
      o.detail << " jump_times";
      for (int x : tr.jump_times) o.detail << " " << x;
    }
  });

  const std::vector<int> Ts = {16, 32, 64, 128, 256};
  std::vector<SweepRow> greedy_sweep;
  criterion("greedy sqrt(T) movement growth on sc_lb", 60, [&](Outcome& o) {
    greedy_sweep = sweep_T("greedy", {}, "sc_lb", Ts, {{"r0", 1}, {"D", 4}});
    const double slope = fit_loglog_slope(greedy_sweep, "move_final");
    o.require(slope >= 0.35 && slope <= 0.65, "slope in [0.35, 0.65]");
    o.detail << " slope " << slope;
  });

  criterion("frugal sublinear movement on sc_lb", 60, [&](Outcome& o) {
    const auto f = sweep_T("frugal", {}, "sc_lb", Ts, {{"r0", 1}, {"D", 4}});
    if (greedy_sweep.empty()) greedy_sweep = sweep_T("greedy", {}, "sc_lb", Ts, {{"r0", 1}, {"D", 4}});
    for (std::size_t i = 0; i < Ts.size(); ++i)
      o.require(f[i].move_final <= greedy_sweep[i].move_final, "frugal <= greedy at T=" + std::to_string(Ts[i]));
    const double slope = fit_loglog_slope(f, "move_final");
    o.require(slope <= 0.35, "slope <= 0.35");
    o.detail << " slope " << slope << ", movement T=256 frugal " << f.back().move_final << " greedy "
             << greedy_sweep.back().move_final;
  });

  criterion("greedy linear movement on convex_lb", 30, [&](Outcome& o) {
    const double D = 4;
    for (int T : Ts) {
      const Instance inst = gen_convex_lower_bound(T, D, D / (2 * kSqrt2), D / (4 * kSqrt2));
      const double move = run("greedy", {}, inst).records.back().move_cum;
      const double need = 0.9 * (D / kSqrt2) * (T - 1);
      o.detail << " T=" << T << " " << move << "/" << need;
      o.require(move >= need, "T=" + std::to_string(T));
    }
  });

  criterion("lsp regret and phase bounds on sc_lb", 30, [&](Outcome& o) {
    const int T = 200;
    const Instance inst = make_instance("sc_lb", T, {{"r0", 1}, {"D", 4}});
    const double G = inst.meta.at("G"), D = inst.meta.at("D");
    for (double eps : {1.0 / T, std::pow(T, -0.5)}) {
      PolicyParams p;
      p.eps = eps;
      const Trace tr = run("lsp", p, inst);
      const double reg = tr.records.back().regret_cum;
      const int phases = tr.records.back().phase;
      o.require(reg <= T * eps + 1e-4, "regret eps=" + std::to_string(eps));
      o.require(phases <= G * D / eps + 1, "phases eps=" + std::to_string(eps));
      o.detail << " eps=" << eps << " regret " << reg << " phases " << phases << "/" << G * D / eps + 1;
    }
  });

  criterion("gap_frugal on directional input", 30, [&](Outcome& o) {
    const Trace tr = run("gap_frugal", {}, gen_directional(210, 200));
    double C = 0.0;
    for (const StepRecord& r : tr.records) {
      C += 1.0 / (static_cast<double>(r.t) * r.t);
      o.require(r.F_t <= r.t * r.v_t + C + cond_tol(r.t, r.v_t), "budget t=" + std::to_string(r.t));
    }
    const double reg = tr.records.back().regret_cum;
    o.require(reg <= C + 1e-4, "final regret");
    o.detail << " final regret " << reg << ", bound " << C + 1e-4;
  });

  criterion("frugal jump-count bound on the sharp adversary rerun", 30, [&](Outcome& o) {
    for (int T : {64, 256}) {
      const Instance inst = make_instance("adversary_sharp", T, {{"c", 1}});
      NestedSequence emitted;
      run("frugal", {}, inst, &emitted);
      const Instance obl = oblivious_rerun(inst, emitted);
      const double G = inst.meta.at("G"), alpha = inst.meta.at("alpha");
      const double bound = std::ceil(G / alpha) + 1 + std::log(T) / std::log(1 + alpha / G);
      const auto jumps = run("frugal", {}, obl).jump_times.size();
      o.require(jumps <= bound, "T=" + std::to_string(T));
      o.detail << " T=" << T << " jumps " << jumps << "/" << bound;
    }
  });

  criterion("adaptive adversary periods and movement", 120, [&](Outcome& o) {
    for (const std::string fam : {"adversary_sharp", "adversary_sc"}) {
      int prev = 0;
      for (int T : {128, 512, 2048}) {
        const Instance inst = make_instance(fam, T, {});
        const Trace tr = run("frugal", {}, inst);
        const double Cbar = inst.meta.at("Cbar"), B = inst.meta.at("B"), eps = inst.meta.at("eps");
        const int K = tr.completed_periods;
        const double need = std::floor(std::log(T) / std::log(1 + Cbar)) * 0.5;
        const double move_need = (K - 1) * (B / kSqrt2 - 2 * eps);
        o.require(K >= need, fam + " periods T=" + std::to_string(T));
        o.require(K >= prev, fam + " periods nondecreasing in T");
        o.require(tr.records.back().move_cum >= move_need, fam + " movement T=" + std::to_string(T));
        o.detail << " " << fam << " T=" << T << " periods " << K << " movement " << tr.records.back().move_cum;
        prev = K;
      }
    }
  });

  criterion("A_B competitive ratio", 120, [&](Outcome& o) { competitive(o, "ab", 5.05); });

  criterion("alpha-sharp greedy competitive ratio", 120, [&](Outcome& o) { competitive(o, "greedy", 12.12); });

  criterion("property suites (verify all)", 120, [&](Outcome& o) {
    const auto results = run_verify("all");
    int failed = 0;
    for (const CheckResult& r : results)
      if (!r.pass) {
        ++failed;
        o.require(false, r.suite + "/" + r.name);
      }
    o.detail << " " << results.size() - failed << "/" << results.size() << " checks pass";
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
