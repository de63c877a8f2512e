#include "qwsearch/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "qwsearch/closed_form.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/integrator.hpp"

namespace qwsearch::experiments {

namespace {

// Runs fn over every item concurrently; results keep the input order.
template <typename T, typename Fn>
auto parallel_map(std::span<const T> items, Fn fn) {
  using Result = decltype(fn(items[0]));
  std::vector<std::future<Result>> pending;
  pending.reserve(items.size());
  for (const T& item : items) pending.push_back(std::async(std::launch::async, fn, item));
  std::vector<Result> out;
  out.reserve(items.size());
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

double crossing_time(double t0, double p0, double t1, double p1, double level) {
  return t0 + (level - p0) / (p1 - p0) * (t1 - t0);
}

SearchConfig attractive_config(std::size_t n, double lambda) {
  if (lambda > 0.0) {
    throw InvalidConfigError("attractive runs need lambda <= 0, got " + std::to_string(lambda));
  }
  if (lambda == 0.0) {
    return SearchConfig::with_defaults(n, FixedGamma{closed_form::critical_gamma(n)}, 0.0);
  }
  return SearchConfig::with_defaults(n, AttractiveCritical{}, lambda);
}

SearchConfig repulsive_config(std::size_t n, double lambda, double horizon) {
  SearchConfig cfg;
  cfg.n = n;
  cfg.lambda = lambda;
  cfg.gamma_policy = RepulsiveCritical{};
  cfg.t_max = horizon;
  cfg.dt = default_dt(horizon);
  return cfg;
}

}  // namespace

PeakReport detect_peak(std::span<const double> times, std::span<const double> success) {
  if (times.size() != success.size()) {
    throw DimensionMismatchError("times and success columns differ in length");
  }
  if (success.size() < 3) throw NoPeakError("peak detection needs at least 3 samples");

  const double p0 = success[0];
  const std::size_t last = success.size() - 1;
  std::size_t i = 1;
  for (; i < last; ++i) {
    if (success[i] > success[i - 1] && success[i] >= success[i + 1] &&
        success[i] > p0 + kPeakThreshold) {
      break;
    }
  }
  if (i == last) throw NoPeakError("no local maximum of the success probability above p(0)");

  // Parabola p1 + b x + c x^2 through the three samples, x = t - t_i.
  const double h_left = times[i - 1] - times[i];
  const double h_right = times[i + 1] - times[i];
  const double d_left = (success[i - 1] - success[i]) / h_left;
  const double d_right = (success[i + 1] - success[i]) / h_right;
  const double c = (d_right - d_left) / (h_right - h_left);
  const double b = d_left - c * h_left;

  PeakReport report{times[i], success[i], 0.0};
  if (c < 0.0) {
    const double x = std::clamp(-b / (2.0 * c), h_left, h_right);
    report.t_star = times[i] + x;
    report.p_star = success[i] + b * x + c * x * x;
  }
  // A probability; interpolation overshoot above 1 is round-off.
  report.p_star = std::min(report.p_star, 1.0);

  const double half = p0 + 0.5 * (report.p_star - p0);
  std::size_t left = i;
  while (left > 0 && success[left] > half) --left;
  std::size_t right = i;
  while (right <= last && success[right] > half) ++right;
  if (right > last) {
    throw NoPeakError("success probability does not fall below half prominence after the peak; "
                      "extend t_max");
  }
  const double t_left =
      crossing_time(times[left], success[left], times[left + 1], success[left + 1], half);
  const double t_right =
      crossing_time(times[right - 1], success[right - 1], times[right], success[right], half);
  report.width = t_right - t_left;
  return report;
}

PeakReport detect_peak(const Trajectory& trajectory) {
  return detect_peak(trajectory.times, trajectory.success);
}

double lambda_c(std::size_t n) {
  qwsearch::detail::require_dimension(n);
  return 4.0 / (2.0 + std::sqrt(static_cast<double>(n)));
}

bool repulsive_succeeds(std::size_t n, double lambda, double target, double horizon) {
  SearchConfig cfg = repulsive_config(n, lambda, horizon);
  cfg.keep_states = false;
  const Trajectory traj = integrator::evolve(cfg);
  return *std::max_element(traj.success.begin(), traj.success.end()) >= target;
}

ThresholdReport repulsive_threshold(std::size_t n, double resolution, double target,
                                    double horizon) {
  if (!(resolution > 0.0)) throw InvalidConfigError("resolution must be > 0");
  if (!(target > 0.0 && target <= 1.0)) throw InvalidConfigError("target must lie in (0, 1]");
  if (!(horizon > 0.0)) throw InvalidConfigError("horizon must be > 0");

  ThresholdReport report{0.999 * lambda_c(n), 2.0, target, horizon, resolution, 0};
  auto succeeds = [&](double lambda) {
    ++report.evaluations;
    return repulsive_succeeds(n, lambda, target, horizon);
  };

  if (!succeeds(report.lambda_low)) {
    throw InconsistencyError("lambda = " + std::to_string(report.lambda_low) +
                             " lies below lambda_c(n) = " + std::to_string(lambda_c(n)) +
                             " but did not reach the target; the integrator is suspect");
  }
  if (succeeds(report.lambda_high)) {
    throw ThresholdNotFoundError("lambda = 2 still reaches the target; no threshold in (0, 2)");
  }
  while (report.lambda_high - report.lambda_low > resolution) {
    const double mid = 0.5 * (report.lambda_low + report.lambda_high);
    (succeeds(mid) ? report.lambda_low : report.lambda_high) = mid;
  }
  return report;
}

std::vector<PeakReport> attractive_runtime_table(std::size_t n, std::span<const double> lambdas) {
  std::vector<SearchConfig> configs;
  for (double lambda : lambdas) {
    SearchConfig cfg = attractive_config(n, lambda);
    cfg.keep_states = false;
    configs.push_back(cfg);
  }
  return parallel_map(std::span<const SearchConfig>(configs), [](const SearchConfig& cfg) {
    return detect_peak(integrator::evolve(cfg));
  });
}

std::string_view name(FigureId id) noexcept {
  switch (id) {
    case FigureId::Fig2a:
      return "fig2a";
    case FigureId::Fig2b:
      return "fig2b";
    case FigureId::Fig3:
      return "fig3";
    case FigureId::Fig4:
      return "fig4";
  }
  return "?";
}

FigureId parse_figure_id(std::string_view text) {
  for (FigureId id : {FigureId::Fig2a, FigureId::Fig2b, FigureId::Fig3, FigureId::Fig4}) {
    if (text == name(id)) return id;
  }
  throw UnknownFigureError("unknown figure id '" + std::string(text) +
                           "' (expected fig2a, fig2b, fig3 or fig4)");
}

std::string_view parameter_name(FigureId id) noexcept {
  return id == FigureId::Fig2a || id == FigureId::Fig2b ? "gamma" : "lambda";
}

std::vector<double> parameter_grid(FigureId id) {
  switch (id) {
    case FigureId::Fig2a:
      return {0.001, 0.005, 0.008, 0.009, 0.01};
    case FigureId::Fig2b:
      return {0.011, 0.012, 0.015, 0.02, 0.03};
    case FigureId::Fig3:
      return {0.2, 0.6, 0.611, 0.612, 0.8};
    case FigureId::Fig4:
      return {0.0, -1.0, -2.0, -3.0};
  }
  return {};
}

FigureTable figure_curves(FigureId id, std::size_t n, const FigureSettings& settings) {
  qwsearch::detail::require_dimension(n);
  FigureTable table;
  table.id = id;
  table.n = n;
  table.t_max = id == FigureId::Fig3 ? settings.fig3_horizon : default_t_max(n);
  table.dt = default_dt(table.t_max);
  table.sample_every = settings.sample_every;

  const std::vector<double> grid = parameter_grid(id);
  auto linear_curve = [&](double gamma) {
    FigureCurve curve{gamma, integrator::sample_times(table.t_max, table.dt, table.sample_every),
                      {}, {}};
    for (double t : curve.times) {
      const SubspaceState s = closed_form::state_at(n, gamma, t);
      curve.success.push_back(s.success_probability());
      curve.norm.push_back(s.norm_squared());
    }
    return curve;
  };
  auto integrated_curve = [&](double lambda) {
    SearchConfig cfg = id == FigureId::Fig3 ? repulsive_config(n, lambda, table.t_max)
                                            : attractive_config(n, lambda);
    cfg.t_max = table.t_max;
    cfg.dt = table.dt;
    cfg.sample_every = table.sample_every;
    cfg.keep_states = false;
    Trajectory traj = integrator::evolve(cfg);
    return FigureCurve{lambda, std::move(traj.times), std::move(traj.success),
                       std::move(traj.norm)};
  };

  if (id == FigureId::Fig2a || id == FigureId::Fig2b) {
    table.curves = parallel_map(std::span<const double>(grid), linear_curve);
  } else {
    table.curves = parallel_map(std::span<const double>(grid), integrated_curve);
  }
  return table;
}

}  // namespace qwsearch::experiments
