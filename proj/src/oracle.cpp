#include "cones/oracle.hpp"

#include <cmath>
#include <limits>

#include "cones/errors.hpp"
#include "cones/solvers.hpp"

namespace cones {

OfflineResult static_opt(const Objective& f, const ConvexSet& S_T, int T, const Point& x0) {
  const MinResult mr = minimize_over(f, S_T);
  OfflineResult out;
  out.value = static_cast<double>(T) * mr.value;
  out.path = {mr.argmin};
  out.movement = (mr.argmin - x0).norm();
  return out;
}

OfflineResult offline_lin_dp_1d(const Instance& inst, int grid_n) {
  if (inst.dim() != 1) throw DimensionMismatch("the offline DP is defined for d = 1");
  if (grid_n < 3) throw ParameterError("offline DP requires grid_n >= 3");
  if (inst.sets.empty()) throw ParameterError("offline DP requires an oblivious instance");
  const BoundingBox bb = bounding_box(inst.sets.front().base());
  const double lo = bb.lo(0), hi = bb.hi(0);
  const int n = grid_n;
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);

  const double inf = std::numeric_limits<double>::infinity();
  const int T = static_cast<int>(inst.sets.size());
  std::vector<double> V(n), W(n);
  std::vector<std::vector<int>> back(T, std::vector<int>(n, -1));
  std::vector<double> left(n), right(n);
  std::vector<int> left_arg(n), right_arg(n);

  for (int t = 1; t <= T; ++t) {
    const ConvexSet& S = inst.sets[t - 1];
    const Objective& f = inst.objective(t);
    const double tol = feas_tol(S);
    bool any = false;
    if (t > 1) {
      // left(i) = min_{j <= i} V(j) - g_j, right(i) = min_{j >= i} V(j) + g_j; ties keep the smaller j.
      for (int i = 0; i < n; ++i) {
        const double c = V[i] - g[i];
        if (i == 0 || c < left[i - 1]) {
          left[i] = c;
          left_arg[i] = i;
        } else {
          left[i] = left[i - 1];
          left_arg[i] = left_arg[i - 1];
        }
      }
      for (int i = n - 1; i >= 0; --i) {
        const double c = V[i] + g[i];
        if (i == n - 1 || c <= right[i + 1]) {
          right[i] = c;
          right_arg[i] = i;
        } else {
          right[i] = right[i + 1];
          right_arg[i] = right_arg[i + 1];
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      W[i] = inf;
      if (!contains(S, pt({g[i]}), tol)) continue;
      const double fi = eval(f, pt({g[i]}));
      if (t == 1) {
        W[i] = fi + std::abs(g[i] - inst.x0(0));
      } else {
        const double a = left[i] + g[i];
        const double b = right[i] - g[i];
        const int j = (a < b || (a == b && left_arg[i] <= right_arg[i])) ? left_arg[i] : right_arg[i];
        const double best = std::min(a, b);
        if (!std::isfinite(best)) continue;
        W[i] = fi + best;
        back[t - 1][i] = j;
      }
      any = any || std::isfinite(W[i]);
    }
    if (!any) throw InfeasibleGrid("no grid point lies in S_" + std::to_string(t) + "; increase grid_n");
    V.swap(W);
  }

  int best = 0;
  for (int i = 1; i < n; ++i)
    if (V[i] < V[best]) best = i;
  OfflineResult out;
  out.value = V[best];
  out.grid_resolution = n;
  out.path.assign(T, Point());
  int idx = best;
  for (int t = T; t >= 1; --t) {
    out.path[t - 1] = pt({g[idx]});
    if (t > 1) idx = back[t - 1][idx];
  }
  Point prev = inst.x0;
  for (const Point& x : out.path) {
    out.movement += (x - prev).norm();
    prev = x;
  }
  return out;
}

OfflineResult brute_force_min_grid(const Objective& f, const ConvexSet& S, int n) {
  if (S.dim() > 2) throw DimensionMismatch("grid brute force is limited to d <= 2");
  if (n < 2) throw ParameterError("grid brute force requires n >= 2");
  const BoundingBox bb = bounding_box(S);
  const double tol = feas_tol(S);
  auto coord = [&](int axis, int i) {
    return i == n - 1 ? bb.hi(axis) : bb.lo(axis) + (bb.hi(axis) - bb.lo(axis)) * i / (n - 1);
  };
  OfflineResult out;
  out.value = std::numeric_limits<double>::infinity();
  out.grid_resolution = n;
  const int ny = S.dim() == 2 ? n : 1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < ny; ++j) {
      const Point x = S.dim() == 2 ? pt({coord(0, i), coord(1, j)}) : pt({coord(0, i)});
      if (!contains(S, x, tol)) continue;
      const double v = eval(f, x);
      if (v < out.value) {
        out.value = v;
        out.path = {x};
      }
    }
  }
  if (out.path.empty()) throw InfeasibleGrid("no grid point lies in S; increase n");
  return out;
}

}  // namespace cones
