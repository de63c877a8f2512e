#include "qwsearch/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qwsearch/closed_form.hpp"
#include "qwsearch/conservation.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/experiments.hpp"
#include "qwsearch/integrator.hpp"
#include "qwsearch/report.hpp"

namespace qwsearch::cli {

namespace {

using report::format_double;
using Clock = std::chrono::steady_clock;

class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

struct SimulateOptions {
  std::size_t n = 0;
  std::string gamma;
  double lambda = 0.0;
  std::size_t marked = 0;
  double t_max = 0.0;
  double dt = 0.0;
  std::size_t sample_every = 1;
  std::string observables;
  std::string space = "subspace";
  std::string out;
  std::string manifest;
  CLI::Option* t_max_opt = nullptr;
  CLI::Option* dt_opt = nullptr;
};

struct FigureOptions {
  std::string id;
  std::size_t n = 0;
  std::string out_dir = ".";
  std::size_t sample_every = 10;
  double horizon = experiments::kDefaultHorizon;
};

struct CriticalOptions {
  std::size_t n = 0;
  std::string mode;
  double resolution = 1e-3;
  double target = experiments::kDefaultTarget;
  double horizon = experiments::kDefaultHorizon;
  std::string manifest;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

GammaPolicy parse_gamma(const std::string& text) {
  if (text == "repulsive") return RepulsiveCritical{};
  if (text == "attractive") return AttractiveCritical{};
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("--gamma expects a number, 'repulsive' or 'attractive', got '" + text + "'");
  }
  return FixedGamma{value};
}

std::string gamma_text(const GammaPolicy& policy) {
  if (const auto* fixed = std::get_if<FixedGamma>(&policy)) return format_double(fixed->gamma);
  return std::holds_alternative<RepulsiveCritical>(policy) ? "repulsive" : "attractive";
}

Space parse_space(const std::string& text) {
  if (text == "subspace") return Space::Subspace;
  if (text == "full") return Space::Full;
  throw UsageError("--space expects 'subspace' or 'full', got '" + text + "'");
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  return file;
}

void write_manifest(const report::RunManifest& manifest, const std::filesystem::path& path) {
  std::ofstream file = open_output(path);
  manifest.write(file);
}

int simulate(const SimulateOptions& opt, std::ostream& out) {
  const auto start = Clock::now();
  SearchConfig cfg;
  cfg.n = opt.n;
  cfg.marked = opt.marked;
  cfg.lambda = opt.lambda;
  cfg.gamma_policy = parse_gamma(opt.gamma);
  cfg.space = parse_space(opt.space);
  cfg.sample_every = opt.sample_every;
  cfg.t_max = opt.t_max_opt->count() ? opt.t_max : default_t_max(opt.n);
  cfg.dt = opt.dt_opt->count() ? opt.dt : default_dt(cfg.t_max);
  cfg.keep_states = false;
  try {
    cfg.validate();
  } catch (const InvalidConfigError& e) {
    throw UsageError(e.what());
  }

  std::vector<conservation::Observable> monitors;
  try {
    monitors = conservation::parse_observable_list(opt.observables);
  } catch (const UnknownObservableError& e) {
    throw UsageError(e.what());
  }
  std::sort(monitors.begin(), monitors.end());

  const Trajectory traj = integrator::evolve(cfg, monitors);

  std::vector<report::CsvColumn> columns{
      {"t", traj.times}, {"p", traj.success}, {"norm", traj.norm}};
  for (const auto& obs : traj.observables) columns.push_back({obs.name, obs.values});

  std::string observables_text;
  for (auto o : monitors) {
    if (!observables_text.empty()) observables_text += ',';
    observables_text += conservation::name(o);
  }
  const double dt_effective = integrator::effective_dt(cfg.t_max, cfg.dt);

  report::RunManifest manifest;
  manifest.command = "simulate";
  manifest.argv = {"simulate",        "--n",           std::to_string(cfg.n),
                   "--gamma",         gamma_text(cfg.gamma_policy),
                   "--lambda",        format_double(cfg.lambda),
                   "--marked",        std::to_string(cfg.marked),
                   "--tmax",          format_double(cfg.t_max),
                   "--dt",            format_double(cfg.dt),
                   "--sample-every",  std::to_string(cfg.sample_every),
                   "--space",         opt.space};
  if (!observables_text.empty()) {
    manifest.argv.push_back("--observables");
    manifest.argv.push_back(observables_text);
  }
  manifest.config = {{"n", std::to_string(cfg.n)},
                     {"gamma", gamma_text(cfg.gamma_policy)},
                     {"lambda", format_double(cfg.lambda)},
                     {"marked", std::to_string(cfg.marked)},
                     {"tmax", format_double(cfg.t_max)},
                     {"dt", format_double(cfg.dt)},
                     {"dt_effective", format_double(dt_effective)},
                     {"sample_every", std::to_string(cfg.sample_every)},
                     {"observables", observables_text},
                     {"space", opt.space},
                     {"rows", std::to_string(traj.size())},
                     {"out", opt.out.empty() ? "-" : opt.out}};
  manifest.tool_version = std::string(kToolVersion);

  if (opt.out.empty() || opt.out == "-") {
    report::write_csv(out, columns);
  } else {
    std::ofstream file = open_output(opt.out);
    report::write_csv(file, columns);
  }
  manifest.wall_time = seconds_since(start);
  if (!opt.manifest.empty()) {
    write_manifest(manifest, opt.manifest);
  } else if (!opt.out.empty() && opt.out != "-") {
    write_manifest(manifest, opt.out + ".manifest");
  }
  return kOk;
}

int figure(const FigureOptions& opt, std::ostream& out) {
  const auto start = Clock::now();
  experiments::FigureId id;
  try {
    id = experiments::parse_figure_id(opt.id);
  } catch (const UnknownFigureError& e) {
    throw UsageError(e.what());
  }
  if (opt.n < 2) throw UsageError("--n must be at least 2");
  if (opt.sample_every < 1) throw UsageError("--sample-every must be >= 1");
  if (!(opt.horizon > 0.0)) throw UsageError("--horizon must be > 0");

  const experiments::FigureTable table =
      experiments::figure_curves(id, opt.n, {opt.horizon, opt.sample_every});

  const std::filesystem::path dir(opt.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + opt.out_dir + "': " + ec.message());

  const std::string param(experiments::parameter_name(id));
  std::string files;
  for (const auto& curve : table.curves) {
    const std::string file_name =
        std::string(experiments::name(id)) + "_" + param + "=" + format_double(curve.parameter) + ".csv";
    std::ofstream file = open_output(dir / file_name);
    const std::vector<report::CsvColumn> columns{
        {"t", curve.times}, {"p", curve.success}, {"norm", curve.norm}};
    report::write_csv(file, columns);
    if (!files.empty()) files += ',';
    files += file_name;
    out << (dir / file_name).string() << '\n';
  }

  report::RunManifest manifest;
  manifest.command = "figure";
  manifest.argv = {"figure", "--id", opt.id, "--n", std::to_string(opt.n), "--sample-every",
                   std::to_string(opt.sample_every), "--horizon", format_double(opt.horizon)};
  manifest.config = {{"id", opt.id},
                     {"n", std::to_string(opt.n)},
                     {"parameter", param},
                     {"tmax", format_double(table.t_max)},
                     {"dt", format_double(table.dt)},
                     {"sample_every", std::to_string(table.sample_every)},
                     {"horizon", format_double(opt.horizon)},
                     {"files", files},
                     {"out_dir", opt.out_dir}};
  manifest.tool_version = std::string(kToolVersion);
  manifest.wall_time = seconds_since(start);
  write_manifest(manifest, dir / (std::string(experiments::name(id)) + "_manifest.txt"));
  return kOk;
}

int critical(const CriticalOptions& opt, std::ostream& out) {
  const auto start = Clock::now();
  if (opt.n < 2) throw UsageError("--n must be at least 2");
  std::vector<std::pair<std::string, std::string>> results;
  std::vector<std::string> argv{"critical", "--n", std::to_string(opt.n), "--mode", opt.mode};

  if (opt.mode == "gamma") {
    const double gamma_c = closed_form::critical_gamma(opt.n);
    results = {{"gamma_c", format_double(gamma_c)},
               {"delta_e_c", format_double(closed_form::critical_energy_gap(opt.n))},
               {"t_star_c", format_double(closed_form::peak_time(opt.n, gamma_c))},
               {"p_star_c", format_double(closed_form::peak_probability(opt.n, gamma_c))}};
  } else if (opt.mode == "lambda") {
    if (!(opt.resolution > 0.0)) throw UsageError("--resolution must be > 0");
    if (!(opt.target > 0.0 && opt.target <= 1.0)) throw UsageError("--target must lie in (0, 1]");
    if (!(opt.horizon > 0.0)) throw UsageError("--horizon must be > 0");
    const auto r = experiments::repulsive_threshold(opt.n, opt.resolution, opt.target, opt.horizon);
    results = {{"lambda_low", format_double(r.lambda_low)},
               {"lambda_high", format_double(r.lambda_high)},
               {"lambda_c", format_double(experiments::lambda_c(opt.n))},
               {"target", format_double(r.target)},
               {"horizon", format_double(r.horizon)},
               {"resolution", format_double(r.resolution)},
               {"evaluations", std::to_string(r.evaluations)}};
    argv.insert(argv.end(), {"--resolution", format_double(opt.resolution), "--target",
                             format_double(opt.target), "--horizon", format_double(opt.horizon)});
  } else {
    throw UsageError("--mode expects 'gamma' or 'lambda', got '" + opt.mode + "'");
  }

  out << "n = " << opt.n << '\n' << "mode = " << opt.mode << '\n';
  for (const auto& [key, value] : results) out << key << " = " << value << '\n';

  if (!opt.manifest.empty()) {
    report::RunManifest manifest;
    manifest.command = "critical";
    manifest.argv = argv;
    manifest.config = {{"n", std::to_string(opt.n)}, {"mode", opt.mode}};
    manifest.config.insert(manifest.config.end(), results.begin(), results.end());
    manifest.tool_version = std::string(kToolVersion);
    manifest.wall_time = seconds_since(start);
    write_manifest(manifest, opt.manifest);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous-time quantum-walk search on the complete graph", "qwsearch"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Integrate one search run and emit a CSV");
  sim_cmd->add_option("--n", sim.n, "Vertex count")->required();
  sim_cmd->add_option("--gamma", sim.gamma, "Jumping rate: a number, 'repulsive' or 'attractive'")
      ->required();
  sim_cmd->add_option("--lambda", sim.lambda, "Nonlinearity coefficient");
  sim_cmd->add_option("--marked", sim.marked, "Marked vertex index");
  sim.t_max_opt = sim_cmd->add_option("--tmax", sim.t_max, "End time (default 3 pi sqrt(n)/2)");
  sim.dt_opt = sim_cmd->add_option("--dt", sim.dt, "Step size (default tmax/20000)");
  sim_cmd->add_option("--sample-every", sim.sample_every, "Sampling stride in steps");
  sim_cmd->add_option("--observables", sim.observables, "Comma list from h0,gp,heff,rescaled");
  sim_cmd->add_option("--space", sim.space, "subspace or full");
  sim_cmd->add_option("--out", sim.out, "CSV path (default standard output)");
  sim_cmd->add_option("--manifest", sim.manifest, "Manifest path (default <out>.manifest)");

  FigureOptions fig;
  auto* fig_cmd = app.add_subcommand("figure", "Emit the curves of one reference figure");
  fig_cmd->add_option("--id", fig.id, "fig2a, fig2b, fig3 or fig4")->required();
  fig_cmd->add_option("--n", fig.n, "Vertex count")->required();
  fig_cmd->add_option("--out-dir", fig.out_dir, "Output directory");
  fig_cmd->add_option("--sample-every", fig.sample_every, "Sampling stride in steps");
  fig_cmd->add_option("--horizon", fig.horizon, "End time of fig3");

  CriticalOptions crit;
  auto* crit_cmd = app.add_subcommand("critical", "Report critical parameters");
  crit_cmd->add_option("--n", crit.n, "Vertex count")->required();
  crit_cmd->add_option("--mode", crit.mode, "gamma or lambda")->required();
  crit_cmd->add_option("--resolution", crit.resolution, "Bracket width of the lambda search");
  crit_cmd->add_option("--target", crit.target, "Success probability counted as reaching 1");
  crit_cmd->add_option("--horizon", crit.horizon, "Time horizon of each lambda trial");
  crit_cmd->add_option("--manifest", crit.manifest, "Manifest path");

  std::vector<std::string> argv_storage{"qwsearch"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*sim_cmd) return simulate(sim, out);
    if (*fig_cmd) return figure(fig, out);
    return critical(crit, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const InvalidConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
}

}  // namespace qwsearch::cli
