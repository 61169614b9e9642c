#pragma once

#include "fbf/types.hpp"

#include <functional>

namespace fbf::oracle {

/// Minimizes `fn` over the uniform grid lo, lo+step, ..., hi. Ties keep the
/// first (smallest) grid point.
double grid_minimize_1d(const std::function<double(double)>& fn, double lo, double hi,
                        double step);

struct ZoomOptions {
  int coarse_points = 201;  ///< points per dimension on the first level
  int zoom_points = 21;     ///< points per dimension on refinement levels
  double resolution = 1e-10;
};

/// Coarse-to-fine grid search over the box [lo, hi]: exhaustive on a coarse
/// grid, then repeated exhaustive searches on a shrinking window around the
/// incumbent until the cell width drops below `resolution`. Intended for
/// n ≤ 3.
Vector zoom_minimize(const std::function<double(const Vector&)>& fn, const Vector& lo,
                     const Vector& hi, const ZoomOptions& options = {});

}  // namespace fbf::oracle
