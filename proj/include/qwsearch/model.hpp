// model.hpp
// Hamiltonians, initial states, and the map between the full N-vertex space
// and the invariant {|a>, |b>} subspace of search on the complete graph.
//
// Vertices are 0-indexed. |a> is the marked vertex and |b> is the uniform
// superposition of the N-1 unmarked vertices. Units have hbar = 1.

#pragma once

#include <complex>
#include <cstddef>
#include <variant>

#include <Eigen/Dense>

namespace qwsearch {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kSymmetryTolerance = 1e-10;

/// Unit-norm amplitude vector over the N vertices.
class StateVector {
 public:
  /// Throws InvalidDimensionError for fewer than 2 amplitudes and
  /// NormalizationError when |sum |psi_i|^2 - 1| exceeds `norm_tolerance`.
  explicit StateVector(Eigen::VectorXcd amplitudes,
                       double norm_tolerance = kNormTolerance);

  std::size_t n() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  double probability(std::size_t vertex) const;
  double norm_squared() const noexcept { return amplitudes_.squaredNorm(); }

 private:
  Eigen::VectorXcd amplitudes_;
};

/// alpha |a> + beta |b>, normalized.
class SubspaceState {
 public:
  SubspaceState(Complex alpha, Complex beta, double norm_tolerance = kNormTolerance);
  explicit SubspaceState(const Eigen::Vector2cd& v, double norm_tolerance = kNormTolerance)
      : SubspaceState(v[0], v[1], norm_tolerance) {}

  Complex alpha() const noexcept { return alpha_; }
  Complex beta() const noexcept { return beta_; }
  Eigen::Vector2cd vector() const { return {alpha_, beta_}; }

  double success_probability() const noexcept { return std::norm(alpha_); }
  double norm_squared() const noexcept { return std::norm(alpha_) + std::norm(beta_); }

 private:
  Complex alpha_;
  Complex beta_;
};

/// Dense N x N Hermitian matrix. The constructor rejects any matrix that is
/// not exactly equal to its conjugate transpose.
class DenseHamiltonian {
 public:
  explicit DenseHamiltonian(Eigen::MatrixXcd entries);

  std::size_t n() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

 private:
  Eigen::MatrixXcd entries_;
};

/// The 2x2 Hermitian matrix [[a, b], [conj(b), d]] in the {|a>, |b>} basis.
struct SubspaceHamiltonian {
  double a = 0.0;
  Complex b{0.0, 0.0};
  double d = 0.0;

  Eigen::Matrix2cd matrix() const;
  /// Ascending eigenvalues.
  Eigen::Vector2d eigenvalues() const;
};

enum class Space { Subspace, Full };

struct FixedGamma {
  double gamma = 0.0;
};
/// gamma = (2 - lambda) / (2N), constant in time; needs lambda > 0.
struct RepulsiveCritical {};
/// gamma_c(t) = (1/N)[1 - lambda(|alpha|^2 - |beta|^2/(N-1))], re-evaluated
/// from the state; needs lambda < 0.
struct AttractiveCritical {};

using GammaPolicy = std::variant<FixedGamma, RepulsiveCritical, AttractiveCritical>;

struct SearchConfig {
  std::size_t n = 2;
  std::size_t marked = 0;
  double lambda = 0.0;
  GammaPolicy gamma_policy = FixedGamma{};
  double t_max = 0.0;
  double dt = 0.0;
  std::size_t sample_every = 1;
  Space space = Space::Subspace;
  bool keep_states = true;

  /// Throws InvalidConfigError on any violated invariant.
  void validate() const;

  /// Config with t_max = 3 pi sqrt(n) / 2 and dt = t_max / 20000.
  static SearchConfig with_defaults(std::size_t n, GammaPolicy policy, double lambda = 0.0);
};

double default_t_max(std::size_t n);
inline constexpr double kDefaultStepsPerRun = 20000.0;
inline double default_dt(double t_max) { return t_max / kDefaultStepsPerRun; }

/// L with 1 off the diagonal and -(n-1) on it.
Eigen::MatrixXd laplacian_complete(std::size_t n);

/// H0 = -gamma L - |a><a|.
DenseHamiltonian linear_hamiltonian(std::size_t n, double gamma, std::size_t marked);

/// H0 psi in O(n), using L = J - n I where J is the all-ones matrix.
Eigen::VectorXcd apply_linear_hamiltonian(const Eigen::VectorXcd& psi, double gamma,
                                          std::size_t marked);

SubspaceHamiltonian subspace_hamiltonian_linear(std::size_t n, double gamma);

/// H0 plus the state-dependent diagonal lambda |psi_i|^2.
DenseHamiltonian effective_hamiltonian(const StateVector& state, std::size_t n, double gamma,
                                       double lambda, std::size_t marked);

/// 2x2 form of the effective Hamiltonian: a + lambda|alpha|^2 and
/// d + lambda|beta|^2/(n-1) on the diagonal.
SubspaceHamiltonian subspace_hamiltonian(const SubspaceState& state, std::size_t n, double gamma,
                                         double lambda);

StateVector uniform_state(std::size_t n);
SubspaceState subspace_initial(std::size_t n);

StateVector embed(const SubspaceState& s, std::size_t n, std::size_t marked);

/// Inverse of embed(). The unmarked amplitudes must agree to within
/// `tolerance`; otherwise throws SymmetryViolationError carrying the largest
/// deviation. No averaging is performed.
SubspaceState project(const StateVector& v, std::size_t marked,
                      double tolerance = kSymmetryTolerance);

namespace detail {
void require_dimension(std::size_t n);
void require_marked(std::size_t n, std::size_t marked);
}  // namespace detail

}  // namespace qwsearch
