// experiments.hpp
// Peak detection, the repulsive lambda threshold search, attractive runtime
// tables, and the success-probability curves of the reference figures.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qwsearch/trajectory.hpp"

namespace qwsearch::experiments {

/// Default success target for "reaches 1".
inline constexpr double kDefaultTarget = 0.999;
/// Default horizon of the repulsive threshold search and of fig3.
inline constexpr double kDefaultHorizon = 200.0;
/// A local maximum must clear p(0) by this much to count as a peak.
inline constexpr double kPeakThreshold = 1e-6;

struct PeakReport {
  double t_star = 0.0;
  double p_star = 0.0;
  /// Full width at half prominence above p(0).
  double width = 0.0;
};

/// First local maximum of `success` exceeding success[0] + 1e-6. t_star and
/// p_star come from the parabola through the three samples around the
/// maximum; the width from linear interpolation of the two crossings of
/// p(0) + (p_star - p(0))/2.
///
/// Throws NoPeakError when there is no such maximum or the curve does not
/// fall back below half prominence before the last sample. Needs at least
/// three samples.
PeakReport detect_peak(std::span<const double> times, std::span<const double> success);
PeakReport detect_peak(const Trajectory& trajectory);

struct ThresholdReport {
  /// Largest tested lambda that reached the target.
  double lambda_low = 0.0;
  /// Smallest tested lambda that did not.
  double lambda_high = 0.0;
  double target = 0.0;
  double horizon = 0.0;
  double resolution = 0.0;
  std::size_t evaluations = 0;
};

/// 4 / (2 + sqrt(n)).
double lambda_c(std::size_t n);

/// Whether the repulsive walk with gamma = (2 - lambda)/(2n) reaches success
/// >= target at some step within [0, horizon] (dt = horizon / 20000).
bool repulsive_succeeds(std::size_t n, double lambda, double target, double horizon);

/// Bisection over lambda in (0, 2) for the edge between runs that reach
/// `target` and runs that do not. Starts from [0.999 lambda_c(n), 2]. Throws
/// InconsistencyError if the guaranteed region below lambda_c fails, and
/// ThresholdNotFoundError if lambda = 2 still succeeds.
ThresholdReport repulsive_threshold(std::size_t n, double resolution, double target = kDefaultTarget,
                                    double horizon = kDefaultHorizon);

/// One attractive-critical run per lambda (lambda = 0 runs at the fixed
/// gamma = 1/n, which is the same dynamics), with default t_max and dt.
/// Results are in the order of `lambdas`.
std::vector<PeakReport> attractive_runtime_table(std::size_t n, std::span<const double> lambdas);

enum class FigureId { Fig2a, Fig2b, Fig3, Fig4 };

std::string_view name(FigureId id) noexcept;
/// Throws UnknownFigureError.
FigureId parse_figure_id(std::string_view text);

/// "gamma" for the linear figures, "lambda" for the nonlinear ones.
std::string_view parameter_name(FigureId id) noexcept;
std::vector<double> parameter_grid(FigureId id);

struct FigureSettings {
  double fig3_horizon = kDefaultHorizon;
  std::size_t sample_every = 10;
};

struct FigureCurve {
  double parameter = 0.0;
  std::vector<double> times;
  std::vector<double> success;
  std::vector<double> norm;
};

struct FigureTable {
  FigureId id = FigureId::Fig2a;
  std::size_t n = 0;
  double t_max = 0.0;
  double dt = 0.0;
  std::size_t sample_every = 1;
  std::vector<FigureCurve> curves;
};

/// fig2a/fig2b are evaluated from the closed form, fig3/fig4 by integration.
/// fig2a, fig2b and fig4 span [0, 3 pi sqrt(n)/2]; fig3 spans
/// [0, settings.fig3_horizon]. dt is t_max / 20000 in every case.
FigureTable figure_curves(FigureId id, std::size_t n, const FigureSettings& settings = {});

}  // namespace qwsearch::experiments
