// conservation.hpp
// Expected values of the search Hamiltonians and their drift along a
// trajectory.
//
// Three quantities are constant in time for the three search variants:
//   linear, fixed gamma        <H0>
//   repulsive, fixed gamma     <H0 + lambda/2 |psi|^2>
//   attractive, gamma_c(t)     <H0 at gamma = 1/n>
// The last one is <H(t)> / (gamma_c(t) n) once the lambda |beta|^2/(n-1)
// identity shift is removed from H(t). Including the shift makes the quotient
// time dependent, so the monitor evaluates the gamma = 1/n form directly. It
// is the time derivative of this quotient that vanishes; its value is not
// zero (-1/n for the uniform initial state).

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qwsearch/model.hpp"
#include "qwsearch/trajectory.hpp"

namespace qwsearch::conservation {

/// Imaginary part allowed in a Hermitian expectation value before it is
/// reported as a HermiticityViolationError.
inline constexpr double kImaginaryResidueTolerance = 1e-12;
/// Normalization required of states passed to the evaluators.
inline constexpr double kEvaluationNormTolerance = 1e-6;

double expected_h0(const StateVector& state, double gamma, std::size_t marked);
double expected_h0(const SubspaceState& state, std::size_t n, double gamma);

/// <H0> + (lambda/2) sum_i |psi_i|^4.
double gp_energy(const StateVector& state, double gamma, double lambda, std::size_t marked);
double gp_energy(const SubspaceState& state, std::size_t n, double gamma, double lambda);

/// <H0 + lambda diag(|psi_i|^2)>.
double expected_heff(const StateVector& state, double gamma, double lambda, std::size_t marked);
double expected_heff(const SubspaceState& state, std::size_t n, double gamma, double lambda);

/// <-(1/n) L - |a><a|>.
double rescaled_attractive_energy(const StateVector& state, std::size_t marked);
double rescaled_attractive_energy(const SubspaceState& state, std::size_t n);

enum class Observable { H0, GP, Heff, Rescaled };

/// "h0", "gp", "heff", "rescaled".
std::string_view name(Observable o) noexcept;
/// Throws UnknownObservableError.
Observable parse_observable(std::string_view name);
/// Comma separated list; empty string gives an empty list.
std::vector<Observable> parse_observable_list(std::string_view csv);

/// `gamma` is the jumping rate in force at this state (gamma_c(t) for the
/// attractive policy).
double evaluate(Observable o, const StateVector& state, double gamma, double lambda,
                std::size_t marked);
double evaluate(Observable o, const SubspaceState& state, std::size_t n, double gamma,
                double lambda);

struct ObservableSeries {
  std::string name;
  std::vector<double> values;
  /// max_k |values[k] - values[0]|.
  double drift = 0.0;
  /// drift / max(|values[0]|, 1e-300).
  double relative_drift = 0.0;
};

ObservableSeries make_series(std::string name, std::vector<double> values);

/// Throws UnknownObservableError if `name` was not monitored during evolve.
ObservableSeries drift_report(const Trajectory& trajectory, std::string_view name);

}  // namespace qwsearch::conservation
