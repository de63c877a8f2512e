#include "qwsearch/conservation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwsearch/errors.hpp"

namespace qwsearch::conservation {

namespace {

void require_normalized(double norm_sq) {
  if (!(std::abs(norm_sq - 1.0) <= kEvaluationNormTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "expectation value needs a normalized state, got |psi|^2 = " << norm_sq;
    throw NormalizationError(msg.str());
  }
}

double real_part_checked(Complex value) {
  if (std::abs(value.imag()) > kImaginaryResidueTolerance) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "expectation value of a Hermitian operator has imaginary residue " << value.imag();
    throw HermiticityViolationError(msg.str());
  }
  return value.real();
}

// <psi|H0|psi> with the raw complex inner product, so that asymmetric
// round-off shows up as an imaginary residue.
Complex h0_form(const Eigen::VectorXcd& psi, double gamma, std::size_t marked) {
  return psi.dot(apply_linear_hamiltonian(psi, gamma, marked));
}

Complex h0_form(const SubspaceState& s, std::size_t n, double gamma) {
  const SubspaceHamiltonian h = subspace_hamiltonian_linear(n, gamma);
  const Complex alpha = s.alpha();
  const Complex beta = s.beta();
  return h.a * std::conj(alpha) * alpha + h.b * std::conj(alpha) * beta +
         std::conj(h.b) * std::conj(beta) * alpha + h.d * std::conj(beta) * beta;
}

double quartic_sum(const Eigen::VectorXcd& psi) { return psi.array().abs2().square().sum(); }

// f|alpha|^4 + g|beta|^4 with f = 1 and g = 1/(n-1); equals sum_i |psi_i|^4
// of the embedded state.
double quartic_sum(const SubspaceState& s, std::size_t n) {
  const double a2 = std::norm(s.alpha());
  const double b2 = std::norm(s.beta());
  return a2 * a2 + b2 * b2 / static_cast<double>(n - 1);
}

}  // namespace

double expected_h0(const StateVector& state, double gamma, std::size_t marked) {
  require_normalized(state.norm_squared());
  return real_part_checked(h0_form(state.amplitudes(), gamma, marked));
}

double expected_h0(const SubspaceState& state, std::size_t n, double gamma) {
  detail::require_dimension(n);
  require_normalized(state.norm_squared());
  return real_part_checked(h0_form(state, n, gamma));
}

double gp_energy(const StateVector& state, double gamma, double lambda, std::size_t marked) {
  return expected_h0(state, gamma, marked) + 0.5 * lambda * quartic_sum(state.amplitudes());
}

double gp_energy(const SubspaceState& state, std::size_t n, double gamma, double lambda) {
  return expected_h0(state, n, gamma) + 0.5 * lambda * quartic_sum(state, n);
}

double expected_heff(const StateVector& state, double gamma, double lambda, std::size_t marked) {
  return expected_h0(state, gamma, marked) + lambda * quartic_sum(state.amplitudes());
}

double expected_heff(const SubspaceState& state, std::size_t n, double gamma, double lambda) {
  return expected_h0(state, n, gamma) + lambda * quartic_sum(state, n);
}

double rescaled_attractive_energy(const StateVector& state, std::size_t marked) {
  return expected_h0(state, 1.0 / static_cast<double>(state.n()), marked);
}

double rescaled_attractive_energy(const SubspaceState& state, std::size_t n) {
  detail::require_dimension(n);
  return expected_h0(state, n, 1.0 / static_cast<double>(n));
}

std::string_view name(Observable o) noexcept {
  switch (o) {
    case Observable::H0:
      return "h0";
    case Observable::GP:
      return "gp";
    case Observable::Heff:
      return "heff";
    case Observable::Rescaled:
      return "rescaled";
  }
  return "?";
}

Observable parse_observable(std::string_view text) {
  for (Observable o : {Observable::H0, Observable::GP, Observable::Heff, Observable::Rescaled}) {
    if (text == name(o)) return o;
  }
  throw UnknownObservableError("unknown observable '" + std::string(text) +
                               "' (expected one of h0, gp, heff, rescaled)");
}

std::vector<Observable> parse_observable_list(std::string_view csv) {
  std::vector<Observable> out;
  while (!csv.empty()) {
    const auto comma = csv.find(',');
    const std::string_view item = csv.substr(0, comma);
    if (!item.empty()) {
      const Observable o = parse_observable(item);
      if (std::find(out.begin(), out.end(), o) == out.end()) out.push_back(o);
    }
    if (comma == std::string_view::npos) break;
    csv.remove_prefix(comma + 1);
  }
  return out;
}

double evaluate(Observable o, const StateVector& state, double gamma, double lambda,
                std::size_t marked) {
  switch (o) {
    case Observable::H0:
      return expected_h0(state, gamma, marked);
    case Observable::GP:
      return gp_energy(state, gamma, lambda, marked);
    case Observable::Heff:
      return expected_heff(state, gamma, lambda, marked);
    case Observable::Rescaled:
      return rescaled_attractive_energy(state, marked);
  }
  throw UnknownObservableError("unknown observable");
}

double evaluate(Observable o, const SubspaceState& state, std::size_t n, double gamma,
                double lambda) {
  switch (o) {
    case Observable::H0:
      return expected_h0(state, n, gamma);
    case Observable::GP:
      return gp_energy(state, n, gamma, lambda);
    case Observable::Heff:
      return expected_heff(state, n, gamma, lambda);
    case Observable::Rescaled:
      return rescaled_attractive_energy(state, n);
  }
  throw UnknownObservableError("unknown observable");
}

ObservableSeries make_series(std::string series_name, std::vector<double> values) {
  ObservableSeries series{std::move(series_name), std::move(values), 0.0, 0.0};
  if (series.values.empty()) return series;
  const double initial = series.values.front();
  for (double v : series.values) series.drift = std::max(series.drift, std::abs(v - initial));
  series.relative_drift = series.drift / std::max(std::abs(initial), 1e-300);
  return series;
}

ObservableSeries drift_report(const Trajectory& trajectory, std::string_view series_name) {
  return make_series(std::string(series_name), trajectory.observable(series_name));
}

}  // namespace qwsearch::conservation
