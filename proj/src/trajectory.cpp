#include "qwsearch/trajectory.hpp"

#include <string>

#include "qwsearch/errors.hpp"

namespace qwsearch {

const std::vector<double>& Trajectory::observable(std::string_view name) const {
  for (const auto& column : observables) {
    if (column.name == name) return column.values;
  }
  throw UnknownObservableError("observable '" + std::string(name) +
                               "' was not monitored in this trajectory");
}

}  // namespace qwsearch
