#include "cones/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cones/errors.hpp"
#include "cones/solvers.hpp"

namespace cones {

Trace run(Policy& policy, const Instance& inst, NestedSequence* emitted) {
  const auto start = std::chrono::steady_clock::now();
  if (!inst.adaptive() && static_cast<int>(inst.sets.size()) < inst.T)
    throw ParameterError("instance has fewer sets than rounds");
  std::unique_ptr<Adversary> adversary = inst.adaptive() ? inst.make_adversary() : nullptr;

  Trace tr;
  tr.policy_name = policy.name();
  tr.family = inst.family;
  tr.instance_meta = inst.meta;
  tr.x0 = inst.x0;
  policy.reset(inst.x0);
  Point prev = inst.x0;
  double F = 0.0, move = 0.0;
  for (int t = 1; t <= inst.T; ++t) {
    const ConvexSet S = adversary ? adversary->next(prev) : inst.sets[t - 1];
    if (emitted) emitted->push_back(S);
    const Objective& f = inst.objective(t);
    StepOutcome out = policy.step(f, S);
    if (!contains(S, out.action, feas_tol(S))) {
      std::ostringstream os;
      os << policy.name() << " played an infeasible action at t = " << t << ": (" << out.action.transpose() << ")";
      throw InfeasibleAction(os.str());
    }
    auto vit = out.diagnostics.find("v_t");
    const double v = vit != out.diagnostics.end() ? vit->second : minimize_over(f, S).value;
    StepRecord r;
    r.t = t;
    r.x = out.action;
    r.f_x = eval(f, out.action);
    r.v_t = v;
    r.move_inc = (out.action - prev).norm();
    move += r.move_inc;
    r.move_cum = move;
    F += r.f_x;
    r.F_t = F;
    r.regret_cum = F - static_cast<double>(t) * v;
    r.kind = out.kind;
    r.phase = policy.phase();
    tr.records.push_back(std::move(r));
    prev = out.action;
  }
  if (adversary) {
    adversary->finish(prev);
    tr.period_starts = adversary->period_starts();
    tr.completed_periods = adversary->completed_periods();
  }
  tr.jump_times = policy.jump_times();
  tr.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return tr;
}

Trace run(const std::string& policy, const PolicyParams& params, const Instance& inst, NestedSequence* emitted) {
  auto p = make_policy(policy, params, inst.T);
  return run(*p, inst, emitted);
}

std::vector<SweepRow> sweep_T(const std::string& policy, const PolicyParams& params, const std::string& family,
                              const std::vector<int>& T_values, const std::map<std::string, double>& family_params) {
  std::vector<SweepRow> rows;
  for (int T : T_values) {
    const Instance inst = make_instance(family, T, family_params);
    const Trace tr = run(policy, params, inst);
    SweepRow row;
    row.T = T;
    if (!tr.records.empty()) {
      row.regret_final = tr.records.back().regret_cum;
      row.move_final = tr.records.back().move_cum;
    }
    row.jumps = static_cast<int>(tr.jump_times.size());
    row.runtime_ms = tr.runtime_ms;
    rows.push_back(row);
  }
  return rows;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 4) throw DegenerateFit("log-log fit needs at least 4 paired rows");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw DegenerateFit("log-log fit needs positive values");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (!(den > 1e-12 * n * sxx)) throw DegenerateFit("log-log fit needs distinct T values");
  return (n * sxy - sx * sy) / den;
}

double fit_loglog_slope(const std::vector<SweepRow>& table, const std::string& column) {
  std::vector<double> x, y;
  for (const SweepRow& r : table) {
    x.push_back(r.T);
    if (column == "regret_final") y.push_back(r.regret_final);
    else if (column == "move_final") y.push_back(r.move_final);
    else if (column == "jumps") y.push_back(r.jumps);
    else if (column == "runtime_ms") y.push_back(r.runtime_ms);
    else throw ParameterError("unknown sweep column '" + column + "'");
  }
  return fit_loglog_slope(x, y);
}

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trace_csv(const Trace& trace) {
  const int d = static_cast<int>(trace.x0.size());
  std::ostringstream os;
  os << "t";
  for (int i = 0; i < d; ++i) os << ",x" << i;
  os << ",f_x,v_t,move_inc,move_cum,F_t,regret_cum,kind,phase\n";
  for (const StepRecord& r : trace.records) {
    os << r.t;
    for (int i = 0; i < d; ++i) os << ',' << fmt_num(r.x(i));
    os << ',' << fmt_num(r.f_x) << ',' << fmt_num(r.v_t) << ',' << fmt_num(r.move_inc) << ',' << fmt_num(r.move_cum)
       << ',' << fmt_num(r.F_t) << ',' << fmt_num(r.regret_cum) << ',' << step_kind_name(r.kind) << ',' << r.phase
       << '\n';
  }
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& table) {
  std::ostringstream os;
  os << "T,regret_final,move_final,jumps,runtime_ms\n";
  for (const SweepRow& r : table)
    os << r.T << ',' << fmt_num(r.regret_final) << ',' << fmt_num(r.move_final) << ',' << r.jumps << ','
       << fmt_num(r.runtime_ms) << '\n';
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

void emit_csv(const Trace& trace, const std::string& path) { write_text(path, trace_csv(trace)); }
void emit_csv(const std::vector<SweepRow>& table, const std::string& path) { write_text(path, sweep_csv(table)); }

}  // namespace cones
