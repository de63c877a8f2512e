#include "qwsearch/integrator.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qwsearch::integrator {

namespace {

void require_normalized(double norm_sq) {
  if (!(std::abs(norm_sq - 1.0) <= kDivergenceTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "derivative needs a normalized state, got |psi|^2 = " << norm_sq;
    throw NormalizationError(msg.str());
  }
}

struct StepPlan {
  std::size_t steps = 0;
  double dt = 0.0;
};

// Shrinks dt so that an integer number of steps lands exactly on t_max.
StepPlan plan_steps(double t_max, double dt) {
  if (t_max == 0.0) return {0, dt};
  const double ratio = t_max / dt;
  const double nearest = std::round(ratio);
  const double steps =
      std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio) ? nearest : std::ceil(ratio);
  const auto count = static_cast<std::size_t>(std::max(1.0, steps));
  return {count, t_max / static_cast<double>(count)};
}

double sample_time(const StepPlan& plan, std::size_t k, double t_max) {
  return k == plan.steps ? t_max : static_cast<double>(k) * plan.dt;
}

bool is_sample(std::size_t k, const StepPlan& plan, std::size_t sample_every) {
  return k % sample_every == 0 || k == plan.steps;
}

[[noreturn]] void throw_diverged(double norm_sq, double t, std::size_t step) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "integration diverged at step " << step << " (t = " << t << "): |psi|^2 = " << norm_sq
      << " drifted more than " << kDivergenceTolerance << " from 1; use a smaller dt";
  throw IntegrationDivergedError(msg.str());
}

// Step loop shared by the subspace and full-space representations.
template <typename Vector, typename Rhs, typename Record>
void run(const SearchConfig& config, Vector state, Rhs&& rhs, Record&& record) {
  const StepPlan plan = plan_steps(config.t_max, config.dt);
  record(0.0, state);
  for (std::size_t k = 1; k <= plan.steps; ++k) {
    const double t = sample_time(plan, k - 1, config.t_max);
    try {
      state = rk4_step(state, t, plan.dt, rhs);
    } catch (const NumericOverflowError& e) {
      throw NumericOverflowError(std::string(e.what()) + " (step " + std::to_string(k) + ")",
                                 e.time(), k);
    }
    const double norm_sq = state.squaredNorm();
    if (!(std::abs(norm_sq - 1.0) <= kDivergenceTolerance)) {
      throw_diverged(norm_sq, sample_time(plan, k, config.t_max), k);
    }
    if (is_sample(k, plan, config.sample_every)) record(sample_time(plan, k, config.t_max), state);
  }
}

}  // namespace

double effective_dt(double t_max, double dt) { return plan_steps(t_max, dt).dt; }

std::vector<double> sample_times(double t_max, double dt, std::size_t sample_every) {
  if (sample_every < 1) throw InvalidConfigError("sample_every must be >= 1");
  const StepPlan plan = plan_steps(t_max, dt);
  std::vector<double> times;
  for (std::size_t k = 0; k <= plan.steps; ++k) {
    if (is_sample(k, plan, sample_every)) times.push_back(sample_time(plan, k, t_max));
  }
  return times;
}

double gamma_attractive(double alpha_sq, double beta_sq, std::size_t n, double lambda) {
  qwsearch::detail::require_dimension(n);
  if (!(alpha_sq + beta_sq <= 1.0 + kDivergenceTolerance)) {
    throw NormalizationError("gamma_attractive needs |alpha|^2 + |beta|^2 <= 1 + 1e-6");
  }
  const double nd = static_cast<double>(n);
  return (1.0 - lambda * (alpha_sq - beta_sq / (nd - 1.0))) / nd;
}

double resolve_gamma(const GammaPolicy& policy, std::size_t n, double lambda, double alpha_sq,
                     double beta_sq) {
  const double nd = static_cast<double>(n);
  if (const auto* fixed = std::get_if<FixedGamma>(&policy)) return fixed->gamma;
  if (std::holds_alternative<RepulsiveCritical>(policy)) return (2.0 - lambda) / (2.0 * nd);
  // Stage vectors may sit slightly off the unit sphere, so the checked
  // gamma_attractive() is not used here.
  return (1.0 - lambda * (alpha_sq - beta_sq / (nd - 1.0))) / nd;
}

namespace detail {

Eigen::Vector2cd subspace_rhs(const Eigen::Vector2cd& s, std::size_t n, double lambda,
                              double gamma) {
  const SubspaceHamiltonian h = subspace_hamiltonian_linear(n, gamma);
  const double f = lambda;
  const double g = lambda / static_cast<double>(n - 1);
  const Complex alpha = s[0];
  const Complex beta = s[1];
  const Complex minus_i(0.0, -1.0);
  return {minus_i * (h.a * alpha + h.b * beta + f * std::norm(alpha) * alpha),
          minus_i * (std::conj(h.b) * alpha + h.d * beta + g * std::norm(beta) * beta)};
}

Eigen::VectorXcd full_rhs(const Eigen::VectorXcd& psi, double lambda, double gamma,
                          std::size_t marked) {
  Eigen::VectorXcd h_psi = apply_linear_hamiltonian(psi, gamma, marked);
  if (lambda != 0.0) h_psi.array() += lambda * psi.array().abs2() * psi.array();
  return Complex(0.0, -1.0) * h_psi;
}

}  // namespace detail

Eigen::Vector2cd derivative(const SubspaceState& state, std::size_t n, double lambda,
                            double gamma) {
  qwsearch::detail::require_dimension(n);
  require_normalized(state.norm_squared());
  return detail::subspace_rhs(state.vector(), n, lambda, gamma);
}

Eigen::VectorXcd derivative(const StateVector& state, double lambda, double gamma,
                            std::size_t marked) {
  require_normalized(state.norm_squared());
  return detail::full_rhs(state.amplitudes(), lambda, gamma, marked);
}

Trajectory evolve(const SearchConfig& config, std::span<const conservation::Observable> monitors) {
  config.validate();
  const std::size_t n = config.n;
  const double lambda = config.lambda;
  const GammaPolicy& policy = config.gamma_policy;

  Trajectory traj;
  traj.n = n;
  traj.marked = config.marked;
  for (auto o : monitors) traj.observables.push_back({std::string(conservation::name(o)), {}});

  if (config.space == Space::Subspace) {
    auto& states = traj.states.emplace<std::vector<SubspaceState>>();
    auto rhs = [&](double, const Eigen::Vector2cd& s) {
      const double gamma = resolve_gamma(policy, n, lambda, std::norm(s[0]), std::norm(s[1]));
      return detail::subspace_rhs(s, n, lambda, gamma);
    };
    auto record = [&](double t, const Eigen::Vector2cd& s) {
      const SubspaceState sample(s, kDivergenceTolerance);
      const double alpha_sq = std::norm(s[0]);
      const double gamma = resolve_gamma(policy, n, lambda, alpha_sq, std::norm(s[1]));
      traj.times.push_back(t);
      traj.success.push_back(alpha_sq);
      traj.norm.push_back(sample.norm_squared());
      for (std::size_t i = 0; i < monitors.size(); ++i) {
        traj.observables[i].values.push_back(
            conservation::evaluate(monitors[i], sample, n, gamma, lambda));
      }
      if (config.keep_states) states.push_back(sample);
    };
    run(config, subspace_initial(n).vector(), rhs, record);
  } else {
    const std::size_t marked = config.marked;
    const auto a = static_cast<Eigen::Index>(marked);
    auto& states = traj.states.emplace<std::vector<StateVector>>();
    // |beta|^2 is taken as 1 - |alpha|^2 rather than summed over unmarked
    // vertices.
    auto rhs = [&](double, const Eigen::VectorXcd& psi) {
      const double alpha_sq = std::norm(psi[a]);
      const double gamma = resolve_gamma(policy, n, lambda, alpha_sq, 1.0 - alpha_sq);
      return detail::full_rhs(psi, lambda, gamma, marked);
    };
    auto record = [&](double t, const Eigen::VectorXcd& psi) {
      StateVector sample(psi, kDivergenceTolerance);
      const double alpha_sq = std::norm(psi[a]);
      const double gamma = resolve_gamma(policy, n, lambda, alpha_sq, 1.0 - alpha_sq);
      traj.times.push_back(t);
      traj.success.push_back(alpha_sq);
      traj.norm.push_back(sample.norm_squared());
      for (std::size_t i = 0; i < monitors.size(); ++i) {
        traj.observables[i].values.push_back(
            conservation::evaluate(monitors[i], sample, gamma, lambda, marked));
      }
      if (config.keep_states) states.push_back(std::move(sample));
    };
    run(config, Eigen::VectorXcd(uniform_state(n).amplitudes()), rhs, record);
  }
  return traj;
}

}  // namespace qwsearch::integrator
