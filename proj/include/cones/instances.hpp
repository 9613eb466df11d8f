#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cones/geometry.hpp"
#include "cones/objectives.hpp"

namespace cones {

/// Adaptive feed: sees the previous action before revealing S_t.
class Adversary {
 public:
  virtual ~Adversary() = default;
  /// Reveals S_t given x_{t-1} (x_0 at t = 1).
  virtual ConvexSet next(const Point& x_prev) = 0;
  /// Reports the final action so a period completed at t = T is counted.
  virtual void finish(const Point& x_last) = 0;
  /// Period start times t_1, t_2, ... (1-based rounds).
  virtual const std::vector<int>& period_starts() const = 0;
  /// Number of periods whose invariant ||x_t - x_k*|| <= eps was met.
  virtual int completed_periods() const = 0;
};

struct Instance {
  std::string family;
  std::vector<Objective> objectives;  // one fixed objective, or one per step
  NestedSequence sets;                // oblivious feed; empty when adaptive
  std::function<std::unique_ptr<Adversary>()> make_adversary;
  Point x0;
  int T = 0;
  std::map<std::string, double> meta;

  bool adaptive() const { return static_cast<bool>(make_adversary); }
  /// f_t for 1-based t.
  const Objective& objective(int t) const;
  int dim() const { return static_cast<int>(x0.size()); }
};

/// Tangent-cut construction for ||x||^2. With admissible_first the first
/// round presents the rectangle X itself (minimizer x_0*) followed by T - 1
/// cuts; otherwise every round is a cut. k = sqrt((D/sqrt2) r0 / (T/2 + 1)).
Instance gen_sc_lower_bound(int T, double r0, double D, bool admissible_first = false);

/// x_0*, x_1*, ..., x_n* of the tangent chain: x_0* = (0, -r0), then points
/// alternating between p = -k and p = 0, each on the tangent line at the last.
std::vector<Point> sc_lb_minimizers(int n, double r0, double k);

/// k used by gen_sc_lower_bound for horizon T.
double sc_lb_k(int T, double r0, double D);

/// max(|p|, |q|) over the square of side D/sqrt2 below q = -a, with minimizers
/// alternating between the vertical sides.
Instance gen_convex_lower_bound(int T, double D, double a, double k);

/// Period construction for c ||x|| against any policy.
Instance adversary_sharp(double a, double b, double B, double c, double eps, int T);

/// Period construction for 0.5 ||x||^2. c_R and lambda are recorded in meta.
Instance adversary_sc(double a, double b, double B, double eps, double c_R, double lambda, int T);

/// Box [0, D]^2 cut by x1 + x2 >= t, loss x1 + x2 + eps x1^2 with eps = 4/(D-2)^2.
Instance gen_directional(double D, int T);

/// Admissible-first sc construction over T_freeze + 1 rounds, then the last
/// set repeated up to T.
Instance gen_frozen(int T_freeze, int T, double r0, double D);

/// Nested lattice intervals in [0, 10] with per-step AbsShift / ScaledNorm
/// losses (both 1-sharp), drawn from a seeded xorshift64* stream.
Instance gen_random_1d_lin(int T, std::uint64_t seed);

/// The same feed with f_1 played every round (the fixed-loss setting).
Instance as_fixed_objective(const Instance& inst);

/// Oblivious copy of an adaptive instance using the sets it emitted in one run.
Instance oblivious_rerun(const Instance& inst, const NestedSequence& emitted);

/// Builds an instance by family name and string parameters (CLI and config).
Instance make_instance(const std::string& family, int T, const std::map<std::string, double>& params);

const std::vector<std::string>& family_names();

/// xorshift64* generator.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed) : s_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}
  std::uint64_t next() {
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 0x2545F4914F6CDD1DULL;
  }
  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t s_;
};

}  // namespace cones
