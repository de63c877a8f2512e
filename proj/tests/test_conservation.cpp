#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qwsearch/conservation.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/integrator.hpp"

namespace qwsearch::conservation {
namespace {

constexpr Observable kAll[] = {Observable::H0, Observable::GP, Observable::Heff,
                               Observable::Rescaled};

double drift_of(const Trajectory& traj, std::string_view name) {
  return drift_report(traj, name).drift;
}

Trajectory run(SearchConfig cfg) {
  cfg.keep_states = false;
  return integrator::evolve(cfg, kAll);
}

TEST(ExpectedH0, UniformState) {
  EXPECT_NEAR(expected_h0(uniform_state(100), 0.01, 0), -0.01, 1e-15);
  EXPECT_NEAR(expected_h0(subspace_initial(100), 100, 0.01), -0.01, 1e-15);
}

TEST(ExpectedH0, MarkedBasisState) {
  const SubspaceState a(Complex(1.0), Complex(0.0));
  for (double gamma : {0.0, 0.01, 0.3}) {
    EXPECT_NEAR(expected_h0(a, 100, gamma), gamma * 99.0 - 1.0, 1e-14);
    EXPECT_NEAR(expected_h0(embed(a, 100, 5), gamma, 5), gamma * 99.0 - 1.0, 1e-14);
  }
}

TEST(ExpectedH0, SubspaceMatchesFullSpace) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    Complex alpha{g(rng), g(rng)};
    Complex beta{g(rng), g(rng)};
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    const SubspaceState s(alpha / norm, beta / norm);
    const StateVector v = embed(s, 23, 3);
    for (Observable o : kAll) {
      EXPECT_NEAR(evaluate(o, s, 23, 0.04, -1.5), evaluate(o, v, 0.04, -1.5, 3), 1e-14);
    }
  }
}

TEST(GpEnergy, LinearLimitAndUniformShift) {
  const SubspaceState s(Complex(0.6), Complex(0.0, 0.8));
  EXPECT_EQ(gp_energy(s, 10, 0.1, 0.0), expected_h0(s, 10, 0.1));
  EXPECT_EQ(expected_heff(s, 10, 0.1, 0.0), expected_h0(s, 10, 0.1));
  const double lambda = 0.7;
  EXPECT_NEAR(gp_energy(uniform_state(50), 0.02, lambda, 0),
              expected_h0(uniform_state(50), 0.02, 0) + 0.5 * lambda / 50.0, 1e-15);
}

TEST(GpEnergy, MidpointIdentity) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> lam(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    Complex alpha{g(rng), g(rng)};
    Complex beta{g(rng), g(rng)};
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    const SubspaceState s(alpha / norm, beta / norm);
    const double lambda = lam(rng);
    EXPECT_NEAR(gp_energy(s, 64, 0.02, lambda),
                0.5 * (expected_heff(s, 64, 0.02, lambda) + expected_h0(s, 64, 0.02)), 1e-12);
  }
}

TEST(RescaledEnergy, EndpointsAgree) {
  EXPECT_NEAR(rescaled_attractive_energy(subspace_initial(100), 100), -0.01, 1e-15);
  EXPECT_NEAR(rescaled_attractive_energy(SubspaceState(Complex(1.0), Complex(0.0)), 100), -0.01,
              1e-15);
}

TEST(Observables, Parsing) {
  EXPECT_EQ(parse_observable("gp"), Observable::GP);
  EXPECT_THROW(parse_observable("energy"), UnknownObservableError);
  const std::vector<Observable> list = parse_observable_list("heff,h0,heff");
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[0], Observable::Heff);
  EXPECT_EQ(list[1], Observable::H0);
  for (Observable o : kAll) EXPECT_EQ(parse_observable(name(o)), o);
}

TEST(Series, Drift) {
  const ObservableSeries constant = make_series("c", {2.5, 2.5, 2.5});
  EXPECT_EQ(constant.drift, 0.0);
  const ObservableSeries moving = make_series("m", {-2.0, -1.0, -2.5});
  EXPECT_EQ(moving.drift, 1.0);
  EXPECT_EQ(moving.relative_drift, 0.5);
  const ObservableSeries zero = make_series("z", {0.0, 1e-3});
  EXPECT_GT(zero.relative_drift, 1e290);
}

TEST(Series, TrajectoryLengthMatches) {
  const Trajectory traj = run(SearchConfig::with_defaults(16, FixedGamma{0.1}));
  EXPECT_EQ(drift_report(traj, "h0").values.size(), traj.size());
  EXPECT_THROW(drift_report(traj, "nope"), UnknownObservableError);
}

TEST(Conservation, LinearRunsConserveH0) {
  for (double gamma : {0.001, 0.005, 0.008, 0.009, 0.01, 0.011, 0.012, 0.015, 0.02, 0.03}) {
    const Trajectory traj = run(SearchConfig::with_defaults(100, FixedGamma{gamma}));
    EXPECT_LE(drift_of(traj, "h0"), 1e-9) << "gamma=" << gamma;
  }
}

TEST(Conservation, RepulsiveRunsConserveGpEnergy) {
  for (double lambda : {0.2, 0.4, 0.6}) {
    const Trajectory traj = run(SearchConfig::with_defaults(100, RepulsiveCritical{}, lambda));
    const double conserved = drift_of(traj, "gp");
    const double counterpart = drift_of(traj, "heff");
    EXPECT_LE(conserved, 1e-9) << "lambda=" << lambda;
    EXPECT_GE(counterpart, 100.0 * conserved) << "lambda=" << lambda;
    EXPECT_GT(counterpart, 1e-4) << "lambda=" << lambda;
  }
}

TEST(Conservation, AttractiveRunsConserveRescaledEnergy) {
  for (double lambda : {-1.0, -2.0, -3.0}) {
    const Trajectory traj = run(SearchConfig::with_defaults(100, AttractiveCritical{}, lambda));
    const double conserved = drift_of(traj, "rescaled");
    const double counterpart = drift_of(traj, "gp");
    EXPECT_LE(conserved, 1e-9) << "lambda=" << lambda;
    EXPECT_GE(counterpart, 100.0 * conserved) << "lambda=" << lambda;
  }
}

TEST(Conservation, DriftShrinksWithStep) {
  // Drift is integration error: halving dt must shrink it by at least the
  // fourth-order factor: about 16x, and 32x for the linear energy, whose
  // per-step error is one order higher.
  auto drift_at = [](SearchConfig cfg, double dt, std::string_view name) {
    cfg.t_max = 30.0;
    cfg.dt = dt;
    return drift_of(run(cfg), name);
  };
  const SearchConfig linear = SearchConfig::with_defaults(100, FixedGamma{0.008});
  const SearchConfig repulsive = SearchConfig::with_defaults(100, RepulsiveCritical{}, 0.4);
  const SearchConfig attractive = SearchConfig::with_defaults(100, AttractiveCritical{}, -2.0);
  const std::pair<const SearchConfig*, std::string_view> cases[] = {
      {&linear, "h0"}, {&repulsive, "gp"}, {&attractive, "rescaled"}};
  for (const auto& [cfg, name] : cases) {
    const double ratio = drift_at(*cfg, 0.2, name) / drift_at(*cfg, 0.1, name);
    EXPECT_GE(ratio, 12.0) << name;
    EXPECT_LE(ratio, 40.0) << name;
  }
}

TEST(Conservation, MidpointIdentityAlongTrajectory) {
  const Trajectory traj = run(SearchConfig::with_defaults(100, RepulsiveCritical{}, 0.4));
  const auto& h0 = traj.observable("h0");
  const auto& gp = traj.observable("gp");
  const auto& heff = traj.observable("heff");
  for (std::size_t k = 0; k < traj.size(); k += 97) {
    EXPECT_NEAR(gp[k], 0.5 * (h0[k] + heff[k]), 1e-12);
  }
}

}  // namespace
}  // namespace qwsearch::conservation
