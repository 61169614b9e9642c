#pragma once

#include "fbf/params.hpp"
#include "fbf/types.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace fbf {

/// Set-valued maximally monotone operator A, available only through its
/// resolvent J_{γA} = (Id + γA)^{-1}. The graph of A is never enumerated.
///
/// When A = ∂f for a proper convex lsc f, the potential f may be attached;
/// it evaluates to +inf outside dom f.
class MaximalOperator {
 public:
  using ResolventFn = std::function<Vector(double gamma, const Vector& x)>;
  using DomainFn = std::function<bool(const Vector& x)>;
  using PotentialFn = std::function<double(const Vector& x)>;

  struct Traits {
    std::string name;
    DomainFn domain;           ///< membership in cl(Dom A); absent means all of R^n
    double strong_modulus = 0; ///< ρ_A, 0 when merely monotone
    PotentialFn potential;     ///< f when A = ∂f
  };

  MaximalOperator(ResolventFn resolvent, Traits traits);

  /// J_{γA}x. Throws ParameterError for gamma <= 0 and InvalidStateError for
  /// non-finite x.
  Vector resolvent(double gamma, const Vector& x) const;

  bool in_domain(const Vector& x) const;
  bool has_domain_test() const { return static_cast<bool>(traits_->domain); }
  double strong_modulus() const { return traits_->strong_modulus; }
  const std::string& name() const { return traits_->name; }

  bool has_potential() const { return static_cast<bool>(traits_->potential); }
  double potential(const Vector& x) const;

 private:
  std::shared_ptr<const ResolventFn> resolvent_;
  std::shared_ptr<const Traits> traits_;
};

/// Single-valued monotone operator B that is (1/β)-Lipschitz.
class LipschitzOperator {
 public:
  using MapFn = std::function<Vector(const Vector& x)>;

  LipschitzOperator(MapFn apply, double beta, bool monotone, double strong_modulus = 0,
                    std::string name = {});

  /// x ↦ Mx + c. β = 1/‖M‖₂ (+inf for M = 0); monotone iff the symmetric
  /// part of M is PSD (eigenvalue tolerance 1e-10); ρ_B = λ_min(sym M).
  static LipschitzOperator affine(Matrix m, Vector c, std::string name = "affine");
  static LipschitzOperator zero(Eigen::Index n);

  Vector operator()(const Vector& x) const { return (*apply_)(x); }
  Vector apply(const Vector& x) const { return (*apply_)(x); }

  double beta() const { return beta_; }
  bool monotone() const { return monotone_; }
  double strong_modulus() const { return strong_modulus_; }
  const std::string& name() const { return name_; }

 private:
  std::shared_ptr<const MapFn> apply_;
  double beta_;
  bool monotone_;
  double strong_modulus_;
  std::string name_;
};

Vector resolvent(const MaximalOperator& a, double gamma, const Vector& x);

/// Yosida approximation A_γ x = (x − J_{γA}x)/γ.
Vector yosida(const MaximalOperator& a, double gamma, const Vector& x);

struct ResolventInequalityReport {
  double lhs = 0;
  double rhs = 0;
  bool holds = true;
};

/// ‖J_{λA}x − J_{μA}x‖ ≤ |λ − μ|·‖A_λ x‖.
ResolventInequalityReport check_resolvent_parameter_inequality(const MaximalOperator& a,
                                                               double lambda, double mu,
                                                               const Vector& x,
                                                               double tol = 1e-10);

/// sign(x)·max(|x| − t, 0), coordinatewise. Returns exactly 0 at |x| = t.
Vector soft_threshold(const Vector& x, const Vector& thresholds);

/// Smallest eigenvalue of (M + Mᵀ)/2.
double min_symmetric_eigenvalue(const Matrix& m);
double spectral_norm(const Matrix& m);

/// Eigenvalue tolerance for PSD validation.
inline constexpr double kPsdTolerance = 1e-10;

namespace prox {

MaximalOperator zero();
/// ∂(w‖·‖₁); scalar weight broadcast to any dimension.
MaximalOperator l1_norm(double weight);
MaximalOperator l1_norm(Vector weights);
/// Normal cone of [lo, hi]; resolvent is the clamp.
MaximalOperator box_indicator(double lo, double hi);
MaximalOperator box_indicator(Vector lo, Vector hi);
/// Normal cone of the closed ball of `radius` about the origin.
MaximalOperator ball_indicator(double radius);
/// ∂ of y ↦ ½yᵀQy + bᵀy, Q symmetric PSD.
MaximalOperator quadratic(Matrix q, Vector b);
/// x ↦ Mx with M + Mᵀ PSD.
MaximalOperator linear_monotone(Matrix m);

}  // namespace prox

/// Name-based construction: zero, l1_norm{weight}, box_indicator{lo,hi},
/// ball_indicator{radius}, quadratic{Q,b}, linear_monotone{M}.
MaximalOperator prox_catalog(std::string_view name, const Params& params = Params::object());

}  // namespace fbf
