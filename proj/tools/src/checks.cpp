#include "fbf/app/checks.hpp"

#include "fbf/diagnostics.hpp"
#include "fbf/oracles.hpp"
#include "fbf/problems.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fbf::app {
namespace {

class Tally {
 public:
  explicit Tally(std::string suite) { result_.suite = std::move(suite); }

  void expect(bool ok, const std::string& what) {
    ++result_.checks;
    if (!ok) {
      ++result_.failures;
      result_.messages.push_back(what);
    }
  }

  /// Runs `body`, counting an escaped exception as one failed check.
  template <typename Body>
  void guarded(const std::string& what, Body&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      expect(false, what + ": " + e.what());
    }
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Vector cube(Eigen::Index n, double radius) {
    std::uniform_real_distribution<double> d(-radius, radius);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      v[i] = d(rng_);
    }
    return v;
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

std::string label(const ProblemSpec& spec, std::size_t index) {
  return spec.name + "#" + std::to_string(index);
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

double coordinate_relative_gap(const Vector& a, const Vector& b) {
  double worst = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

struct NamedOperator {
  std::string name;
  MaximalOperator op;
  bool polar = false;  ///< grid-search the prox in (r, θ) instead of (x, y)
};

std::vector<NamedOperator> operator_zoo() {
  Matrix q(2, 2);
  q << 2.0, 0.5, 0.5, 1.0;
  Matrix m(2, 2);
  m << 0.2, 1.0, -1.0, 0.2;
  Vector w(2);
  w << 0.3, 1.1;
  return {
      {"zero", prox::zero()},
      {"l1_norm", prox::l1_norm(0.7)},
      {"weighted_l1_norm", prox::l1_norm(w)},
      {"box_indicator", prox::box_indicator(-1.0, 2.0)},
      {"ball_indicator", prox::ball_indicator(1.5), true},
      {"quadratic", prox::quadratic(q, Vector::Constant(2, -0.5))},
      {"linear_monotone", prox::linear_monotone(m)},
  };
}

SuiteResult operators_suite(std::uint64_t seed) {
  Tally tally("operators");
  Sampler sample(seed);
  constexpr int kPairs = 200;
  constexpr int kOraclePoints = 12;

  for (const auto& [name, a, polar] : operator_zoo()) {
    tally.guarded(name, [&] {
      double firm = -INFINITY;
      double yosida_excess = -INFINITY;
      bool parameter_ok = true;
      std::string parameter_detail;
      for (int k = 0; k < kPairs; ++k) {
        const Vector x = sample.cube(2, 5.0);
        const Vector y = sample.cube(2, 5.0);
        const double gamma = sample.uniform(0.1, 3.0);
        const Vector jx = a.resolvent(gamma, x);
        const Vector jy = a.resolvent(gamma, y);
        firm = std::max(firm, (jx - jy).squaredNorm() - (x - y).dot(jx - jy) -
                                  1e-10 * (1 + (x - y).squaredNorm()));
        const double lip = (yosida(a, gamma, x) - yosida(a, gamma, y)).norm();
        yosida_excess = std::max(yosida_excess, lip - (x - y).norm() / gamma - 1e-10);

        const double lambda = sample.uniform(0.1, 3.0);
        const double mu = sample.uniform(0.1, 3.0);
        const auto rep = check_resolvent_parameter_inequality(a, lambda, mu, x);
        if (!rep.holds && parameter_ok) {
          parameter_ok = false;
          parameter_detail = "lhs " + num(rep.lhs) + " > rhs " + num(rep.rhs);
        }
      }
      tally.expect(firm <= 0, name + ": firm nonexpansiveness excess " + num(firm));
      tally.expect(yosida_excess <= 0,
                   name + ": Yosida 1/gamma-Lipschitz excess " + num(yosida_excess));
      tally.expect(parameter_ok, name + ": resolvent parameter inequality " + parameter_detail);
    });

    if (!a.has_potential()) {
      continue;
    }
    tally.guarded(name + " prox oracle", [&] {
      double worst = 0;
      for (int k = 0; k < kOraclePoints; ++k) {
        const Vector x = sample.cube(2, 4.0);
        const double gamma = sample.uniform(0.2, 2.0);
        auto prox_objective = [&](const Vector& y) {
          return a.potential(y) + (y - x).squaredNorm() / (2 * gamma);
        };
        Vector y;
        if (polar) {
          auto cartesian = [](const Vector& rt) {
            return Vector(Eigen::Vector2d(rt[0] * std::cos(rt[1]), rt[0] * std::sin(rt[1])));
          };
          const Vector lo = Eigen::Vector2d(0.0, -std::numbers::pi);
          const Vector hi = Eigen::Vector2d(12.0, std::numbers::pi);
          y = cartesian(oracle::zoom_minimize(
              [&](const Vector& rt) { return prox_objective(cartesian(rt)); }, lo, hi));
        } else {
          const Vector lo = Vector::Constant(2, -12.0);
          const Vector hi = Vector::Constant(2, 12.0);
          y = oracle::zoom_minimize(prox_objective, lo, hi);
        }
        worst = std::max(worst, (y - a.resolvent(gamma, x)).norm());
      }
      tally.expect(worst <= 1e-4, name + ": resolvent differs from grid prox by " + num(worst));
    });
  }
  return tally.take();
}

StepSchedule wobble(const ProblemInstance& p) {
  return schedules::sinusoidal(0.2 * p.beta(), 0.8 * p.beta(), 2 * std::numbers::pi, p.beta());
}

SuiteResult dynamics_suite(std::uint64_t seed) {
  Tally tally("dynamics");
  Sampler sample(seed);
  const auto catalog = default_catalog();
  for (std::size_t idx = 0; idx < catalog.size(); ++idx) {
    const std::string tag = label(catalog[idx], idx);
    tally.guarded(tag, [&] {
      const ProblemInstance p = build(catalog[idx]);
      const double beta = p.beta();
      const Eigen::Index n = p.dimension();
      const std::vector<double> gammas = {0.1 * beta, 0.5 * beta, 0.9 * beta};

      const auto probe = lipschitz_probe(p, gammas, 2000, 10.0, seed + idx);
      tally.expect(probe.max_ratio <= std::sqrt(6.0) + 1e-8,
                   tag + ": Lipschitz ratio " + num(probe.max_ratio));

      double vanishing = 0;
      for (int k = 0; k < 20; ++k) {
        const Vector x = p.a().resolvent(1.0, sample.cube(n, 10.0));
        vanishing = std::max(vanishing, fbf_vector_field(p, std::ldexp(1.0, -30), x).dx.norm());
      }
      tally.expect(vanishing <= 1e-6, tag + ": field at gamma=2^-30 is " + num(vanishing));

      if (const auto& xbar = p.known_solution()) {
        double rest = 0;
        for (double g : gammas) {
          rest = std::max(rest, fbf_vector_field(p, g, *xbar).dx.norm());
        }
        tally.expect(rest <= 1e-10, tag + ": field at the solution is " + num(rest));
      }

      const Vector x0 = sample.cube(n, 3.0);
      const StepSchedule sched = wobble(p);
      {
        IntegrateOptions euler{100.0, Method::euler, 1.0, 1.0};
        const auto traj = integrate(p, sched, x0, euler);
        const auto iters = run_tseng(p, GammaSequence(sched), x0, 100, 0.0);
        double gap = 0;
        for (std::size_t k = 0; k < iters.iterates.size(); ++k) {
          gap = std::max(gap, coordinate_relative_gap(traj.samples[k].x, iters.iterates[k].x));
        }
        if (!iters.converged) {
          gap = std::max(gap, coordinate_relative_gap(traj.samples.back().x, iters.final_x));
        }
        tally.expect(gap <= 1e-12, tag + ": Euler/Tseng relative gap " + num(gap));
      }

      const StepSchedule flat = schedules::constant(0.5 * beta, beta);
      const auto record = integrate(p, flat, x0, IntegrateOptions{20.0, Method::rk4, 0.01, 0.01});
      if (const auto& xbar = p.known_solution()) {
        const auto fejer = fejer_monitor(record, *xbar);
        tally.expect(fejer.holds, tag + ": Fejer increase " + num(fejer.worst_margin));
      }
      const auto resint = residual_integral_monitor(record, flat, p.known_solution());
      tally.expect(resint.holds, tag + ": residual integral " + resint.detail);
      const auto vel = velocity_monitor(p, record);
      tally.expect(vel.holds, tag + ": velocity bound excess " + num(vel.worst_margin));
      const auto inc = inclusion_monitor(p, record);
      tally.expect(inc.holds, tag + ": inclusion defect " + num(inc.worst_margin));

      const auto wavy = integrate(p, sched, x0, IntegrateOptions{10.0, Method::rk4, 0.01, 0.01});
      const auto zdot = zdot_bound_monitor(wavy, sched);
      tally.expect(zdot.applicable && zdot.holds, tag + ": zdot bound " + zdot.detail);

      if (const auto& xbar = p.known_solution()) {
        const auto still = integrate(p, flat, *xbar, IntegrateOptions{1.0, Method::rk4, 0.01, 0.1});
        double drift = 0;
        for (const auto& s : still.samples) {
          drift = std::max(drift, s.residual);
        }
        tally.expect(drift <= 1e-10, tag + ": residual along the equilibrium " + num(drift));
      }
    });
  }
  return tally.take();
}

double rotation_error(double h) {
  const ProblemInstance p = build("skew_rotation", Params{{"n", 2}});
  const StepSchedule flat = schedules::constant(0.5, 1.0);
  Vector x0(2);
  x0 << 1.0, 0.0;
  const auto rec = integrate(p, flat, x0, IntegrateOptions{10.0, Method::rk4, h, 10.0});
  return std::abs(rec.samples.back().x.norm() - std::exp(-2.5));
}

SuiteResult rates_suite(std::uint64_t seed) {
  Tally tally("rates");
  Sampler sample(seed);
  const auto catalog = default_catalog();
  for (std::size_t idx = 0; idx < catalog.size(); ++idx) {
    const std::string tag = label(catalog[idx], idx);
    tally.guarded(tag, [&] {
      const ProblemInstance p = build(catalog[idx]);
      if (!p.rho() || !p.known_solution()) {
        return;
      }
      const double beta = p.beta();
      const Vector x0 = sample.cube(p.dimension(), 3.0);
      for (const auto& sched : {schedules::constant(0.5 * beta, beta), wobble(p)}) {
        const auto rec = integrate(p, sched, x0, IntegrateOptions{20.0, Method::rk4, 0.01, 0.05});
        const auto env = exponential_envelope(rec, sched, *p.rho(), *p.known_solution());
        tally.expect(env.holds(), tag + ": " + std::to_string(env.violations.size()) +
                                      " envelope violations with " + sched.name() + " schedule");
      }
    });
  }

  tally.guarded("envelope consistency", [&] {
    double worst = 0;
    for (int k = 0; k < 10; ++k) {
      const double beta = sample.uniform(0.2, 5.0);
      const double rho = sample.uniform(0.05, 3.0);
      const double c = beta * sample.uniform(0.05, 0.95);
      const double a = decay_integrand(rho, beta, c);
      const double b = constant_step_rate(rho, beta, c, beta - c);
      worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
    }
    tally.expect(worst <= 1e-12, "constant-step rate disagrees with integrand by " + num(worst));
  });

  tally.guarded("rotation closed form", [&] {
    const double rel = rotation_error(0.01) / std::exp(-2.5);
    tally.expect(rel <= 1e-3, "rotation norm relative error " + num(rel));
  });

  tally.guarded("rk4 order", [&] {
    const double ratio = rotation_error(0.1) / rotation_error(0.01);
    tally.expect(ratio >= 5e3 && ratio <= 2e4, "rk4 error ratio " + num(ratio));
  });

  tally.guarded("discrete geometric decay", [&] {
    const auto catalog_smq = build(catalog[7]);
    const double beta = catalog_smq.beta();
    const auto rec = run_tseng(catalog_smq, GammaSequence(schedules::constant(0.5 * beta, beta)),
                               Vector::Constant(2, 0.9), 400, 1e-12);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (const auto& it : rec.iterates) {
      if (it.residual <= 0) {
        break;
      }
      const double x = static_cast<double>(it.n);
      const double y = std::log(it.residual);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    tally.expect(rec.converged && slope < 0,
                 "no geometric decay: slope " + num(slope) + ", converged " +
                     std::to_string(rec.converged));
  });
  return tally.take();
}

SuiteResult ergodic_suite(std::uint64_t seed) {
  Tally tally("ergodic");
  Sampler sample(seed);
  const auto catalog = default_catalog();
  for (std::size_t idx = 0; idx < catalog.size(); ++idx) {
    const std::string tag = label(catalog[idx], idx);
    tally.guarded(tag, [&] {
      const ProblemInstance p = build(catalog[idx]);
      if (!p.has_objective() || !p.known_solution()) {
        return;
      }
      const double beta = p.beta();
      const Eigen::Index n = p.dimension();
      const Vector& xbar = *p.known_solution();
      const Vector x0 = sample.cube(n, 3.0);
      std::vector<Vector> probes = {xbar, x0};
      for (int k = 0; k < 3; ++k) {
        probes.push_back(p.a().resolvent(1.0, sample.cube(n, 3.0)));
      }
      const StepSchedule flat = schedules::constant(0.5 * beta, beta);

      const auto traj = integrate(p, flat, x0, IntegrateOptions{50.0, Method::rk4, 0.01, 0.1});
      const auto cont = ergodic_objective_monitor(traj, p.objective(), probes);
      tally.expect(cont.applicable && cont.holds,
                   tag + ": continuous ergodic bound excess " + num(cont.worst_margin));

      const auto iters = run_tseng(p, GammaSequence(flat), x0, 5000, 0.0);
      const auto disc = ergodic_objective_monitor(iters, p.objective(), probes);
      tally.expect(disc.applicable && disc.holds,
                   tag + ": discrete ergodic bound excess " + num(disc.worst_margin));

      const double c = (x0 - xbar).squaredNorm() / 2;
      const double fbar = p.objective()(xbar);
      double worst = -INFINITY;
      for (const auto& it : iters.iterates) {
        const double gap = p.objective()(*it.ergodic) - fbar;
        worst = std::max(worst, gap - c / it.gamma_sum - 1e-9 * (1 + std::abs(fbar)));
      }
      tally.expect(worst <= 0, tag + ": ergodic gap exceeds C/Gamma by " + num(worst));
    });
  }
  return tally.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"operators", "dynamics", "rates", "ergodic",
                                                 "all"};
  return names;
}

std::vector<SuiteResult> run_checks(std::string_view suite, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  const bool all = suite == "all";
  if (all || suite == "operators") {
    out.push_back(operators_suite(seed));
  }
  if (all || suite == "dynamics") {
    out.push_back(dynamics_suite(seed));
  }
  if (all || suite == "rates") {
    out.push_back(rates_suite(seed));
  }
  if (all || suite == "ergodic") {
    out.push_back(ergodic_suite(seed));
  }
  if (out.empty()) {
    throw std::invalid_argument("unknown suite '" + std::string(suite) +
                                "' (operators, dynamics, rates, ergodic, all)");
  }
  return out;
}

void print_check_table(std::ostream& os, const std::vector<SuiteResult>& results) {
  os << std::left << std::setw(12) << "suite" << std::right << std::setw(8) << "checks"
     << std::setw(10) << "failures" << '\n';
  for (const auto& r : results) {
    os << std::left << std::setw(12) << r.suite << std::right << std::setw(8) << r.checks
       << std::setw(10) << r.failures << '\n';
  }
}

}  // namespace fbf::app
