#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cones/geometry.hpp"
#include "cones/objectives.hpp"

namespace cones {

enum class StepKind { Lazy, Jump, PhaseTransition, Greedy, ABMove };

std::string step_kind_name(StepKind k);

struct StepOutcome {
  Point action;
  StepKind kind = StepKind::Lazy;
  std::map<std::string, double> diagnostics;  // f_x, v_t, slack, ...
};

/// Slack added to every lazy/jump comparison, 1e-9 * t * (1 + |v_t|).
double cond_tol(int t, double v);

struct GreedyState {
  int t = 0;
  Point x_prev;
};

struct FrugalState {
  double F = 0.0;
  int t = 0;
  Point x_prev;
  std::vector<int> jump_times;
  bool disable_jump = false;  // mutation hook for the verify suite
};

struct LspState {
  int p = 0;  // 0 before the first step
  double L = 0.0;
  double eps = 0.0;
  int t = 0;
  Point x_prev;
};

struct GapFrugalState {
  double F = 0.0;
  double C = 0.0;
  int t = 0;
  Point x_prev;
  std::vector<int> jump_times;
};

struct AbState {
  int t = 0;
  double x_prev = 0.0;
};

// Each step expects state.t to be the current round (incremented by the caller).
StepOutcome greedy_step(const Objective& f, const ConvexSet& S, GreedyState& state);
StepOutcome frugal_step(const Objective& f, const ConvexSet& S, FrugalState& state);
StepOutcome lsp_step(const Objective& f, const ConvexSet& S, LspState& state);
StepOutcome gap_frugal_step(const Objective& f, const ConvexSet& S, GapFrugalState& state);
StepOutcome ab_step(const Objective& f, const ConvexSet& S, AbState& state);

/// Sum_t f_t(x_t) + Sum_t |x_t - x_{t-1}| for actions x_1..x_T started at x0.
double lin_cost(const std::vector<Point>& actions, const Point& x0, const std::vector<Objective>& fs);

/// Uniform wrapper used by the harness: owns one policy state for one run.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual void reset(const Point& x0) = 0;
  /// Advances the round counter and plays round t.
  virtual StepOutcome step(const Objective& f, const ConvexSet& S) = 0;
  virtual int phase() const = 0;
  virtual std::vector<int> jump_times() const { return {}; }
};

struct PolicyParams {
  double eps = 0.0;          // LSP tolerance; 0 means "use eps_power"
  double eps_power = -1.0;   // LSP: eps = T^eps_power when eps == 0
  bool disable_jump = false;
};

/// "greedy", "frugal", "lsp", "gap_frugal", "ab". Throws ParameterError otherwise.
std::unique_ptr<Policy> make_policy(const std::string& name, const PolicyParams& params, int T);

const std::vector<std::string>& policy_names();

}  // namespace cones
