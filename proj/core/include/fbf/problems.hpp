#pragma once

#include "fbf/problem.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fbf {

/// A catalog entry addressable by name + parameters (e.g. from a config file).
struct ProblemSpec {
  std::string name;
  Params params = Params::object();
};

/// Builds one of
///   lasso{M, b, weight}                   A = ∂(w‖·‖₁), B = ∇½‖M· − b‖²
///   skew_rotation{n}                      A = 0, B = blockdiag [[0,1],[−1,0]]
///   strongly_monotone_quadratic{Q, b, lo, hi}
///                                         A = N_[lo,hi], B = Q· + b
///   l1_plus_identity{b, weight}           A = ∂(w‖·‖₁), B = · − b
///   constrained_saddle{payoff, lo, hi}    A = N_[lo,hi], B(u,v) = (Pv, −Pᵀu)
/// with β = 1/Lip(B), ρ where derivable, a certified solution when a closed
/// form or an n ≤ 3 grid oracle applies, and f + h for the convex instances.
ProblemInstance build(const ProblemSpec& spec);
ProblemInstance build(std::string_view name, const Params& params);

/// Independent ground truth for a zero of A + B: closed-form algebra where
/// available, otherwise a coarse-to-fine grid search on the fixed-point
/// residual ‖x − J_{γA}(x − γBx)‖ (n ≤ 3). Throws ParameterError when
/// neither applies.
Vector oracle_solve(const ProblemSpec& spec);

/// The instances exercised by the check suites and the acceptance tests.
std::vector<ProblemSpec> default_catalog();

}  // namespace fbf
