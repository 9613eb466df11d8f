#pragma once

#include <map>
#include <string>
#include <vector>

#include "cones/algorithms.hpp"
#include "cones/instances.hpp"

namespace cones {

struct StepRecord {
  int t = 0;
  Point x;
  double f_x = 0.0;
  double v_t = 0.0;
  double move_inc = 0.0;
  double move_cum = 0.0;
  double F_t = 0.0;
  double regret_cum = 0.0;  // F_t - t v_t
  StepKind kind = StepKind::Lazy;
  int phase = 0;
};

struct Trace {
  std::vector<StepRecord> records;
  std::vector<int> jump_times;
  std::map<std::string, double> instance_meta;
  std::string policy_name;
  std::string family;
  Point x0;
  std::vector<int> period_starts;  // adaptive feeds only
  int completed_periods = 0;       // adaptive feeds only
  double runtime_ms = 0.0;         // not part of the determinism contract
};

/// Plays policy on inst for t = 1..T. Adaptive feeds see x_{t-1} before
/// emitting S_t. When `emitted` is given it receives S_1..S_T.
/// Throws InfeasibleAction if an action leaves S_t by more than feas_tol.
Trace run(Policy& policy, const Instance& inst, NestedSequence* emitted = nullptr);

/// Convenience overload building the policy by name.
Trace run(const std::string& policy, const PolicyParams& params, const Instance& inst,
          NestedSequence* emitted = nullptr);

struct SweepRow {
  int T = 0;
  double regret_final = 0.0;
  double move_final = 0.0;
  int jumps = 0;
  double runtime_ms = 0.0;
};

std::vector<SweepRow> sweep_T(const std::string& policy, const PolicyParams& params, const std::string& family,
                              const std::vector<int>& T_values, const std::map<std::string, double>& family_params);

/// Least-squares slope of log(y) against log(x). Needs >= 4 points with
/// positive coordinates and at least two distinct x values.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);
/// Slope of a sweep column ("regret_final", "move_final", "jumps", "runtime_ms") against T.
double fit_loglog_slope(const std::vector<SweepRow>& table, const std::string& column);

/// %.17g rendering used by every emitted file.
std::string fmt_num(double v);

std::string trace_csv(const Trace& trace);
std::string sweep_csv(const std::vector<SweepRow>& table);
/// Writes text to path, creating parent directories. Throws IoError.
void write_text(const std::string& path, const std::string& text);
void emit_csv(const Trace& trace, const std::string& path);
void emit_csv(const std::vector<SweepRow>& table, const std::string& path);

}  // namespace cones
