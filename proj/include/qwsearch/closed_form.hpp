// closed_form.hpp
// Exact solution of linear search on the complete graph for any nonzero
// jumping rate gamma, plus peak analytics.
//
// The closed forms divide by gamma, so gamma == 0 is rejected with
// UnsupportedParameterError; that case is just diagonal phase evolution and
// is handled by the integrator.

#pragma once

#include <cstddef>

#include "qwsearch/model.hpp"

namespace qwsearch::closed_form {

/// Spectrum of the 2x2 linear Hamiltonian. e1 < e2 and e1 + e2 = gamma*n - 1.
struct LinearSolution {
  std::size_t n = 0;
  double gamma = 0.0;
  double delta_e = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
};

LinearSolution solve(std::size_t n, double gamma);

/// sqrt(gamma^2 n^2 - 2 gamma n + 4 gamma + 1).
double energy_gap(std::size_t n, double gamma);

/// (alpha(t), beta(t)) starting from the uniform superposition.
SubspaceState state_at(std::size_t n, double gamma, double t);

double success_probability(std::size_t n, double gamma, double t);

/// First peak, t* = pi / dE.
double peak_time(std::size_t n, double gamma);
double peak_probability(std::size_t n, double gamma);

/// d p* / d gamma, obtained by differentiating peak_probability:
///   4 (n-1) (1 - gamma^2 n^2) / (n (gamma^2 n^2 - 2 gamma n + 4 gamma + 1)^2).
/// Vanishes at gamma = 1/n, positive below it and negative above it.
/// Throws SingularPointError when the denominator vanishes.
double dpstar_dgamma(std::size_t n, double gamma);

/// 1/n.
double critical_gamma(std::size_t n);

/// Gap at gamma = 1/n, equal to 2/sqrt(n).
double critical_energy_gap(std::size_t n);

}  // namespace qwsearch::closed_form
