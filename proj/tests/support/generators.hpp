#pragma once

#include "fbf/types.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <string>

namespace fbf::testing {

/// Seeded source of random test inputs.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Vector vec(Eigen::Index n, double radius = 5.0) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      v[i] = uniform(-radius, radius);
    }
    return v;
  }

  Vector positive(Eigen::Index n, double lo, double hi) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      v[i] = uniform(lo, hi);
    }
    return v;
  }

  Matrix mat(Eigen::Index r, Eigen::Index c, double radius = 1.0) {
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) {
        m(i, j) = uniform(-radius, radius);
      }
    }
    return m;
  }

  /// Symmetric with eigenvalues ≥ floor.
  Matrix spd(Eigen::Index n, double floor = 0.1) {
    const Matrix g = mat(n, n);
    return g.transpose() * g + floor * Matrix::Identity(n, n);
  }

  /// Skew part plus a PSD part, so x ↦ Mx is monotone.
  Matrix monotone(Eigen::Index n, double floor = 0.0) {
    const Matrix k = mat(n, n);
    return (k - k.transpose()) + spd(n, floor) * 0.5;
  }

 private:
  std::mt19937_64 rng_;
};

/// Runs `body(gen, case_index)` for `cases` independently seeded cases and
/// tags any failure with the seed that reproduces it.
template <typename Body>
void for_all(int cases, std::uint64_t seed, Body&& body) {
  for (int k = 0; k < cases; ++k) {
    const std::uint64_t case_seed = seed * 1000003ULL + static_cast<std::uint64_t>(k);
    SCOPED_TRACE("case seed " + std::to_string(case_seed));
    Gen gen(case_seed);
    body(gen, k);
    if (::testing::Test::HasFatalFailure()) {
      return;
    }
  }
}

}  // namespace fbf::testing
