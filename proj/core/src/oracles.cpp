#include "fbf/oracles.hpp"

#include <cmath>
#include <limits>

namespace fbf::oracle {
namespace {

// Exhaustive search over a tensor grid with `points` nodes per axis.
Vector grid_search(const std::function<double(const Vector&)>& fn, const Vector& lo,
                   const Vector& hi, int points) {
  const Eigen::Index n = lo.size();
  Eigen::VectorXi index = Eigen::VectorXi::Zero(n);
  Vector x(n);
  Vector best = lo;
  double best_value = std::numeric_limits<double>::infinity();
  const Vector cell = (hi - lo) / static_cast<double>(points - 1);
  while (true) {
    for (Eigen::Index i = 0; i < n; ++i) {
      x[i] = lo[i] + cell[i] * index[i];
    }
    const double value = fn(x);
    if (value < best_value) {
      best_value = value;
      best = x;
    }
    Eigen::Index axis = 0;
    while (axis < n && ++index[axis] == points) {
      index[axis] = 0;
      ++axis;
    }
    if (axis == n) {
      break;
    }
  }
  return best;
}

}  // namespace

double grid_minimize_1d(const std::function<double(double)>& fn, double lo, double hi,
                        double step) {
  const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  double best = lo;
  double best_value = std::numeric_limits<double>::infinity();
  for (long long i = 0; i < count; ++i) {
    const double y = lo + step * static_cast<double>(i);
    const double value = fn(y);
    if (value < best_value) {
      best_value = value;
      best = y;
    }
  }
  return best;
}

Vector zoom_minimize(const std::function<double(const Vector&)>& fn, const Vector& lo,
                     const Vector& hi, const ZoomOptions& options) {
  if (lo.size() != hi.size() || lo.size() == 0) {
    throw ParameterError("zoom_minimize: bad search box");
  }
  Vector best = grid_search(fn, lo, hi, options.coarse_points);
  Vector width = (hi - lo) / static_cast<double>(options.coarse_points - 1);
  while (width.maxCoeff() > options.resolution) {
    // Window of ±2 cells around the incumbent, clipped to the box.
    const Vector wlo = (best - 2 * width).cwiseMax(lo);
    const Vector whi = (best + 2 * width).cwiseMin(hi);
    best = grid_search(fn, wlo, whi, options.zoom_points);
    width = (whi - wlo) / static_cast<double>(options.zoom_points - 1);
  }
  return best;
}

}  // namespace fbf::oracle
