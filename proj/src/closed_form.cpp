#include "qwsearch/closed_form.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#include "qwsearch/errors.hpp"

namespace qwsearch::closed_form {

namespace {

void require_nonzero_gamma(double gamma) {
  if (gamma == 0.0) {
    throw UnsupportedParameterError(
        "closed form requires gamma != 0; at gamma = 0 the evolution is diagonal, use the "
        "integrator");
  }
}

double gap_radicand(double nd, double gamma) {
  return gamma * gamma * nd * nd - 2.0 * gamma * nd + 4.0 * gamma + 1.0;
}

}  // namespace

double energy_gap(std::size_t n, double gamma) {
  detail::require_dimension(n);
  const double radicand = gap_radicand(static_cast<double>(n), gamma);
  // (gamma n - 1)^2 + 4 gamma >= 0 for every real gamma once n >= 2.
  assert(radicand >= 0.0);
  return std::sqrt(radicand);
}

LinearSolution solve(std::size_t n, double gamma) {
  const double delta_e = energy_gap(n, gamma);
  const double trace = gamma * static_cast<double>(n) - 1.0;
  return {n, gamma, delta_e, 0.5 * (trace - delta_e), 0.5 * (trace + delta_e)};
}

SubspaceState state_at(std::size_t n, double gamma, double t) {
  detail::require_dimension(n);
  require_nonzero_gamma(gamma);
  const double nd = static_cast<double>(n);
  const double gn = gamma * nd;
  const double delta_e = energy_gap(n, gamma);
  const double s = std::sin(delta_e * t / 2.0);
  const double c = std::cos(delta_e * t / 2.0);
  const Complex phase = std::polar(1.0, -(gn - 1.0) * t / 2.0);

  // The expansion in the H0 eigenbasis has a sin(dE t/2) coefficient
  // (-gN + 1)(gN - 2g - 1) + dE^2, which equals 2g(gN + 1) exactly. Using the
  // reduced form avoids cancellation for small gamma.
  const Complex alpha = phase * Complex(c, s * (gn + 1.0) / delta_e) / std::sqrt(nd);
  const Complex beta =
      phase * Complex(c, -s * (1.0 - gn) / delta_e) * std::sqrt((nd - 1.0) / nd);
  return {alpha, beta, 1e-12};
}

double success_probability(std::size_t n, double gamma, double t) {
  const double half_phase = energy_gap(n, gamma) * t / 2.0;
  const double s = std::sin(half_phase);
  const double c = std::cos(half_phase);
  return peak_probability(n, gamma) * s * s + c * c / static_cast<double>(n);
}

double peak_time(std::size_t n, double gamma) {
  require_nonzero_gamma(gamma);
  return std::numbers::pi / energy_gap(n, gamma);
}

double peak_probability(std::size_t n, double gamma) {
  detail::require_dimension(n);
  require_nonzero_gamma(gamma);
  const double nd = static_cast<double>(n);
  const double gn = gamma * nd;
  return (gn + 1.0) * (gn + 1.0) / (nd * gap_radicand(nd, gamma));
}

double dpstar_dgamma(std::size_t n, double gamma) {
  detail::require_dimension(n);
  const double nd = static_cast<double>(n);
  const double gap_sq = gap_radicand(nd, gamma);
  const double denominator = nd * gap_sq * gap_sq;
  if (!(std::abs(denominator) > 0.0)) {
    throw SingularPointError("dp*/dgamma is singular: energy gap vanishes");
  }
  const double gn = gamma * nd;
  return 4.0 * (nd - 1.0) * (1.0 - gn * gn) / denominator;
}

double critical_gamma(std::size_t n) {
  detail::require_dimension(n);
  return 1.0 / static_cast<double>(n);
}

double critical_energy_gap(std::size_t n) { return energy_gap(n, critical_gamma(n)); }

}  // namespace qwsearch::closed_form
