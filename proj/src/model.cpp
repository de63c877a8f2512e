#include "qwsearch/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "qwsearch/errors.hpp"

namespace qwsearch {

namespace detail {

void require_dimension(std::size_t n) {
  if (n < 2) {
    throw InvalidDimensionError("vertex count must be at least 2, got " + std::to_string(n));
  }
}

void require_marked(std::size_t n, std::size_t marked) {
  if (marked >= n) {
    throw IndexError("marked vertex " + std::to_string(marked) + " out of range [0, " +
                     std::to_string(n) + ")");
  }
}

}  // namespace detail

namespace {

void require_normalized(double norm_sq, double tolerance) {
  if (!(std::abs(norm_sq - 1.0) <= tolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "state is not normalized: |psi|^2 = " << norm_sq << " (tolerance " << tolerance << ")";
    throw NormalizationError(msg.str());
  }
}

}  // namespace

StateVector::StateVector(Eigen::VectorXcd amplitudes, double norm_tolerance)
    : amplitudes_(std::move(amplitudes)) {
  detail::require_dimension(static_cast<std::size_t>(amplitudes_.size()));
  require_normalized(amplitudes_.squaredNorm(), norm_tolerance);
}

double StateVector::probability(std::size_t vertex) const {
  detail::require_marked(n(), vertex);
  return std::norm(amplitudes_[static_cast<Eigen::Index>(vertex)]);
}

SubspaceState::SubspaceState(Complex alpha, Complex beta, double norm_tolerance)
    : alpha_(alpha), beta_(beta) {
  require_normalized(norm_squared(), norm_tolerance);
}

DenseHamiltonian::DenseHamiltonian(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionMismatchError("Hamiltonian must be square");
  }
  detail::require_dimension(static_cast<std::size_t>(entries_.rows()));
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = i; j < entries_.cols(); ++j) {
      if (entries_(i, j) != std::conj(entries_(j, i))) {
        throw HermiticityViolationError("Hamiltonian entry (" + std::to_string(i) + ", " +
                                        std::to_string(j) + ") breaks hermiticity");
      }
    }
  }
}

Eigen::VectorXcd DenseHamiltonian::apply(const Eigen::VectorXcd& v) const {
  if (v.size() != entries_.cols()) {
    throw DimensionMismatchError("vector dimension " + std::to_string(v.size()) +
                                 " does not match Hamiltonian dimension " +
                                 std::to_string(entries_.cols()));
  }
  return entries_ * v;
}

Eigen::Matrix2cd SubspaceHamiltonian::matrix() const {
  Eigen::Matrix2cd m;
  m << Complex(a, 0.0), b, std::conj(b), Complex(d, 0.0);
  return m;
}

Eigen::Vector2d SubspaceHamiltonian::eigenvalues() const {
  // Real eigenvalues of a 2x2 Hermitian matrix.
  const double mean = 0.5 * (a + d);
  const double half_diff = 0.5 * (a - d);
  const double r = std::sqrt(half_diff * half_diff + std::norm(b));
  return {mean - r, mean + r};
}

void SearchConfig::validate() const {
  if (n < 2) throw InvalidConfigError("n must be at least 2");
  if (marked >= n) throw InvalidConfigError("marked vertex out of range");
  if (!std::isfinite(lambda)) throw InvalidConfigError("lambda must be finite");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InvalidConfigError("t_max must be >= 0");
  if (t_max > 0.0 && !(dt > 0.0 && std::isfinite(dt))) {
    throw InvalidConfigError("dt must be > 0");
  }
  if (sample_every < 1) throw InvalidConfigError("sample_every must be >= 1");
  if (const auto* fixed = std::get_if<FixedGamma>(&gamma_policy)) {
    if (!std::isfinite(fixed->gamma)) throw InvalidConfigError("gamma must be finite");
  } else if (std::holds_alternative<RepulsiveCritical>(gamma_policy)) {
    if (!(lambda > 0.0)) throw InvalidConfigError("repulsive critical gamma requires lambda > 0");
  } else if (!(lambda < 0.0)) {
    throw InvalidConfigError("attractive critical gamma requires lambda < 0");
  }
}

double default_t_max(std::size_t n) {
  return 1.5 * std::numbers::pi * std::sqrt(static_cast<double>(n));
}

SearchConfig SearchConfig::with_defaults(std::size_t n, GammaPolicy policy, double lambda) {
  SearchConfig cfg;
  cfg.n = n;
  cfg.gamma_policy = policy;
  cfg.lambda = lambda;
  cfg.t_max = default_t_max(n);
  cfg.dt = default_dt(cfg.t_max);
  return cfg;
}

Eigen::MatrixXd laplacian_complete(std::size_t n) {
  detail::require_dimension(n);
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Ones(size, size);
  laplacian.diagonal().setConstant(-static_cast<double>(n - 1));
  return laplacian;
}

DenseHamiltonian linear_hamiltonian(std::size_t n, double gamma, std::size_t marked) {
  detail::require_dimension(n);
  detail::require_marked(n, marked);
  Eigen::MatrixXcd h = (-gamma * laplacian_complete(n)).cast<Complex>();
  const auto a = static_cast<Eigen::Index>(marked);
  h(a, a) -= 1.0;
  return DenseHamiltonian(std::move(h));
}

Eigen::VectorXcd apply_linear_hamiltonian(const Eigen::VectorXcd& psi, double gamma,
                                          std::size_t marked) {
  const auto n = static_cast<std::size_t>(psi.size());
  detail::require_dimension(n);
  detail::require_marked(n, marked);
  const Complex total = psi.sum();
  // -gamma (J - nI) psi = gamma (n psi - sum(psi))
  Eigen::VectorXcd out = gamma * (static_cast<double>(n) * psi.array() - total).matrix();
  out[static_cast<Eigen::Index>(marked)] -= psi[static_cast<Eigen::Index>(marked)];
  return out;
}

SubspaceHamiltonian subspace_hamiltonian_linear(std::size_t n, double gamma) {
  detail::require_dimension(n);
  const double nd = static_cast<double>(n);
  return {gamma * (nd - 1.0) - 1.0, Complex(-gamma * std::sqrt(nd - 1.0), 0.0), gamma};
}

DenseHamiltonian effective_hamiltonian(const StateVector& state, std::size_t n, double gamma,
                                       double lambda, std::size_t marked) {
  if (state.n() != n) {
    throw DimensionMismatchError("state dimension " + std::to_string(state.n()) +
                                 " does not match n = " + std::to_string(n));
  }
  Eigen::MatrixXcd h = linear_hamiltonian(n, gamma, marked).entries();
  if (lambda != 0.0) {
    h.diagonal().array() += lambda * state.amplitudes().array().abs2().cast<Complex>();
  }
  return DenseHamiltonian(std::move(h));
}

SubspaceHamiltonian subspace_hamiltonian(const SubspaceState& state, std::size_t n, double gamma,
                                         double lambda) {
  SubspaceHamiltonian h = subspace_hamiltonian_linear(n, gamma);
  h.a += lambda * std::norm(state.alpha());
  h.d += lambda / static_cast<double>(n - 1) * std::norm(state.beta());
  return h;
}

StateVector uniform_state(std::size_t n) {
  detail::require_dimension(n);
  const auto size = static_cast<Eigen::Index>(n);
  return StateVector(
      Eigen::VectorXcd::Constant(size, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0)));
}

SubspaceState subspace_initial(std::size_t n) {
  detail::require_dimension(n);
  const double nd = static_cast<double>(n);
  return {Complex(1.0 / std::sqrt(nd), 0.0), Complex(std::sqrt((nd - 1.0) / nd), 0.0)};
}

StateVector embed(const SubspaceState& s, std::size_t n, std::size_t marked) {
  detail::require_dimension(n);
  detail::require_marked(n, marked);
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::VectorXcd v =
      Eigen::VectorXcd::Constant(size, s.beta() / std::sqrt(static_cast<double>(n - 1)));
  v[static_cast<Eigen::Index>(marked)] = s.alpha();
  return StateVector(std::move(v), std::abs(s.norm_squared() - 1.0) + kNormTolerance);
}

SubspaceState project(const StateVector& v, std::size_t marked, double tolerance) {
  const std::size_t n = v.n();
  detail::require_marked(n, marked);
  const auto& amp = v.amplitudes();
  const auto a = static_cast<Eigen::Index>(marked);

  Complex unmarked_sum{0.0, 0.0};
  for (Eigen::Index i = 0; i < amp.size(); ++i) {
    if (i != a) unmarked_sum += amp[i];
  }
  const Complex unmarked_mean = unmarked_sum / static_cast<double>(n - 1);

  double max_deviation = 0.0;
  for (Eigen::Index i = 0; i < amp.size(); ++i) {
    if (i != a) max_deviation = std::max(max_deviation, std::abs(amp[i] - unmarked_mean));
  }
  if (max_deviation > tolerance) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "state is not symmetric across unmarked vertices: max deviation " << max_deviation
        << " exceeds " << tolerance;
    throw SymmetryViolationError(msg.str(), max_deviation);
  }

  const Complex beta = unmarked_mean * std::sqrt(static_cast<double>(n - 1));
  return SubspaceState(amp[a], beta, std::abs(v.norm_squared() - 1.0) + kNormTolerance);
}

}  // namespace qwsearch
