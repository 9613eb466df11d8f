#pragma once

#include <vector>

#include "cones/geometry.hpp"
#include "cones/instances.hpp"
#include "cones/objectives.hpp"

namespace cones {

struct OfflineResult {
  double value = 0.0;
  std::vector<Point> path;  // DP path x_1..x_T, or the single static point
  int grid_resolution = 0;  // 0 for exact (non-grid) results
  double movement = 0.0;    // static: ||x_OPT - x0||; DP: movement of the path
};

/// Static hindsight benchmark: x_OPT = argmin over S_T, value T * v_T.
OfflineResult static_opt(const Objective& f, const ConvexSet& S_T, int T, const Point& x0);

/// Offline optimum of sum_t f_t(x_t) + |x_t - x_{t-1}| over a uniform grid of
/// grid_n points spanning the base interval of S_1. O(T grid_n).
OfflineResult offline_lin_dp_1d(const Instance& inst, int grid_n);

/// Minimum of f over the points of an n (or n x n) grid on S's bounding box
/// that lie in S.
OfflineResult brute_force_min_grid(const Objective& f, const ConvexSet& S, int n);

}  // namespace cones
