// trajectory.hpp
// Time-ordered samples produced by integrator::evolve.

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qwsearch/model.hpp"

namespace qwsearch {

struct ObservableColumn {
  std::string name;
  std::vector<double> values;
};

struct Trajectory {
  std::size_t n = 0;
  std::size_t marked = 0;
  std::vector<double> times;
  /// Empty when the run was configured with keep_states = false.
  std::variant<std::vector<SubspaceState>, std::vector<StateVector>> states;
  std::vector<double> success;
  std::vector<double> norm;
  /// In registration order.
  std::vector<ObservableColumn> observables;

  std::size_t size() const noexcept { return times.size(); }

  /// Throws UnknownObservableError.
  const std::vector<double>& observable(std::string_view name) const;
};

}  // namespace qwsearch
