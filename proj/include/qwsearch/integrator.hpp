// integrator.hpp
// Fixed-step RK4 propagation of
//   i d psi/dt = (H0 + lambda diag|psi_i|^2) psi,   H0 = -gamma L - |a><a|,
// in the full N-dimensional space or in the {|a>, |b>} subspace.
//
// The state is never renormalized. Norm drift is monitored and a run whose
// norm leaves 1 by more than kDivergenceTolerance is aborted with
// IntegrationDivergedError.
//
// Under the attractive policy gamma depends on the state, and it is
// re-evaluated at every RK4 stage so the scheme stays fourth order.

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "qwsearch/conservation.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/model.hpp"
#include "qwsearch/trajectory.hpp"

namespace qwsearch::integrator {

inline constexpr double kDivergenceTolerance = 1e-6;

/// (1/n)[1 - lambda(|alpha|^2 - |beta|^2/(n-1))].
/// Requires alpha_sq + beta_sq <= 1 + 1e-6.
double gamma_attractive(double alpha_sq, double beta_sq, std::size_t n, double lambda);

/// Jumping rate the policy prescribes for a state with the given |alpha|^2
/// and |beta|^2.
double resolve_gamma(const GammaPolicy& policy, std::size_t n, double lambda, double alpha_sq,
                     double beta_sq);

/// -i H(psi) psi in the subspace. The state must be normalized within 1e-6.
Eigen::Vector2cd derivative(const SubspaceState& state, std::size_t n, double lambda,
                            double gamma);

/// -i H(psi) psi in the full space. The state must be normalized within 1e-6.
Eigen::VectorXcd derivative(const StateVector& state, double lambda, double gamma,
                            std::size_t marked);

namespace detail {

// Unchecked right-hand sides used inside RK4 stages, where the intermediate
// vectors are not normalized.
Eigen::Vector2cd subspace_rhs(const Eigen::Vector2cd& s, std::size_t n, double lambda,
                              double gamma);
Eigen::VectorXcd full_rhs(const Eigen::VectorXcd& psi, double lambda, double gamma,
                          std::size_t marked);

}  // namespace detail

/// One classical RK4 step of y' = f(t, y). No renormalization.
/// Throws NumericOverflowError if the result is not finite.
template <typename Vector, typename Rhs>
Vector rk4_step(const Vector& y, double t, double dt, Rhs&& f) {
  if (!(dt > 0.0)) throw InvalidConfigError("rk4_step requires dt > 0");
  const double half = 0.5 * dt;
  const Vector k1 = f(t, y);
  const Vector k2 = f(t + half, Vector(y + half * k1));
  const Vector k3 = f(t + half, Vector(y + half * k2));
  const Vector k4 = f(t + dt, Vector(y + dt * k3));
  Vector next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "non-finite amplitude after RK4 step from t = " << t << " with dt = " << dt;
    throw NumericOverflowError(msg.str(), t);
  }
  return next;
}

/// Step size evolve() actually uses: t_max / ceil(t_max / dt), with ratios
/// within 1e-9 of an integer rounded instead.
double effective_dt(double t_max, double dt);

/// Sample times evolve() produces for these settings. When t_max/dt is not an
/// integer, dt is shrunk so that the last step lands exactly on t_max.
std::vector<double> sample_times(double t_max, double dt, std::size_t sample_every);

/// Integrates `config` from the uniform superposition and samples every
/// `sample_every` steps, always including t = 0 and t = t_max. Each requested
/// observable is evaluated at every sample with the jumping rate in force at
/// that state.
Trajectory evolve(const SearchConfig& config,
                  std::span<const conservation::Observable> monitors = {});

}  // namespace qwsearch::integrator
