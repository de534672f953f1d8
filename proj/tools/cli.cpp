// Copyright 2026 The Randentropy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "randentropy/randentropy.hpp"

namespace randentropy::cli {

namespace {

int worker_count(const std::optional<int>& requested) {
  if (requested) {
    if (*requested < 1) throw Error(ErrorCode::InvalidArgument, "--threads must be at least 1");
    return *requested;
  }
  if (const char* env = std::getenv("RANDENTROPY_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 1)
      throw Error(ErrorCode::InvalidArgument,
                  std::string("RANDENTROPY_THREADS must be a positive integer, got '") + env + "'");
    return static_cast<int>(value);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

CommunityTrajectories load_trajectories(const std::string& path, const std::string& name,
                                        bool transpose, const std::optional<int>& communities) {
  const Orientation orientation =
      transpose ? Orientation::time_by_individuals : Orientation::individuals_by_time;
  const Eigen::MatrixXi raw = to_label_matrix(load_matrix({path, name, orientation}));
  const int d = communities ? *communities : std::max(2, raw.size() > 0 ? raw.maxCoeff() : 0);
  return validate_trajectories(raw, d);
}

TimeInterval parse_range(const std::string& text, int which) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_start = 0;
    std::size_t used_stop = 0;
    const std::string start = text.substr(0, colon);
    const std::string stop = text.substr(colon + 1);
    TimeInterval interval{std::stoi(start, &used_start), std::stoi(stop, &used_stop)};
    if (used_start != start.size() || used_stop != stop.size()) throw std::invalid_argument(text);
    return interval;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "--cp" + std::to_string(which) +
                                                "-range expects start:stop, got '" + text + "'");
  }
}

void print_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << "  ";
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << std::fixed << std::setprecision(6) << std::setw(10) << m(i, j);
    out << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

CopulaSpec make_copula(const RunArgs& args) {
  if (args.copula == "independence") return CopulaSpec::independence();
  if (!args.theta)
    throw Error(ErrorCode::InvalidTheta, "--copula " + args.copula + " requires --theta");
  if (args.copula == "clayton") return CopulaSpec::clayton(*args.theta);
  return CopulaSpec::gaussian(*args.theta);
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw Error(ErrorCode::WriteError, "cannot create output directory " + dir.string());
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error[" << to_string(e.code()) << "]: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error[Internal]: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(args.bin_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "-s must be positive");
    if (args.horizon < 1) throw Error(ErrorCode::InvalidArgument, "-t must be at least 1");
    if (args.iterations < 1) throw Error(ErrorCode::InvalidArgument, "-n must be at least 1");

    const CommunityTrajectories trajectories =
        load_trajectories(args.community_file, args.community_name, args.transpose,
                          args.communities);
    const Orientation orientation =
        args.transpose ? Orientation::time_by_individuals : Orientation::individuals_by_time;
    const AttributeObservations attributes = validate_attributes(
        load_matrix({args.attribute_file, args.attribute_name, orientation}), trajectories);

    // The forecast starts after the last observation, so the regime in force
    // there (the last segment) drives the simulation.
    const int n_transitions = trajectories.n_times() - 1;
    std::vector<int> bounds{0};
    for (int tau : args.change_points) {
      if (tau <= bounds.back() || tau >= n_transitions)
        throw Error(ErrorCode::InvalidArgument,
                    "--change-points must be strictly increasing within [1, " +
                        std::to_string(n_transitions - 1) + "]");
      bounds.push_back(tau);
    }
    bounds.push_back(n_transitions);
    std::vector<TransitionMatrix> segments;
    for (std::size_t l = 0; l + 1 < bounds.size(); ++l)
      segments.push_back(estimate_transition_matrix(
          count_transitions(trajectories, bounds[l], bounds[l + 1])));
    const SegmentedChain chain(segments.back());

    SimulationConfig config;
    config.horizon = args.horizon;
    config.replications = args.iterations;
    config.initial_mode = args.stationary ? InitialMode::stationary : InitialMode::last_observed;
    config.copula = make_copula(args);
    config.bin_width = args.bin_width;
    config.interpolation =
        args.interpolation == "step" ? Interpolation::step : Interpolation::linear;
    config.pooled_fallback = args.pooled_fallback;
    config.threads = worker_count(args.threads);
    config.seed = args.seed;
    config.seed = resolve_seed(config);
    validate_copula(config.copula, trajectories.n_individuals());

    const DistributionFamily family = fit_family(trajectories, attributes, args.bin_width);
    if (args.pooled_fallback)
      for (CommunityLabel x : family.empty_communities())
        err << "warning: community " << x.one_based()
            << " has no attribute observations; using the pooled distribution\n";

    std::vector<CommunityLabel> initial(trajectories.n_individuals());
    for (int c = 0; c < trajectories.n_individuals(); ++c)
      initial[c] = {trajectories(c, trajectories.n_times() - 1)};

    out << "individuals: " << trajectories.n_individuals()
        << ", time steps: " << trajectories.n_times()
        << ", communities: " << trajectories.n_communities() << '\n';
    out << "seed: " << *config.seed << '\n';
    if (args.verbose) {
      for (std::size_t l = 0; l < segments.size(); ++l) {
        out << "transition matrix, transitions [" << bounds[l] << ", " << bounds[l + 1] << "):\n";
        print_matrix(out, segments[l].matrix());
      }
      for (int x = 0; x < family.n_communities(); ++x) {
        out << "attribute histogram, community " << x + 1 << ":";
        if (family.is_empty({x})) {
          out << " no observations\n";
          continue;
        }
        out << '\n';
        const EmpiricalDistribution& dist = family.at({x});
        for (int m = 0; m < dist.n_bins(); ++m)
          if (dist.bin_counts()[m] > 0)
            out << "  [" << format_double(dist.bin_left(m)) << ", "
                << format_double(dist.bin_right(m)) << "): " << dist.bin_counts()[m] << '\n';
      }
    }
    if (args.stationary) {
      const StationaryDistribution pi = stationary_distribution(chain.matrices().front());
      if (!pi.unique)
        err << "warning: the chain has several stationary distributions; "
               "using the minimum-norm solution\n";
      if (args.verbose) {
        out << "stationary distribution:";
        for (Eigen::Index i = 0; i < pi.pi.size(); ++i) out << ' ' << format_double(pi.pi(i));
        out << " (residual " << format_double(pi.residual) << ")\n";
      }
    }

    EntropyTrajectory entropy = estimate_entropy(chain, family, config, initial);
    if (args.log_base) entropy = change_log_base(entropy, *args.log_base);

    const std::filesystem::path dir(args.output);
    ensure_directory(dir);
    write_entropy_csv(entropy, dir / "entropy.csv");

    PlotSpec plot;
    plot.title = "Random Theil entropy";
    plot.x_label = "forecast step h";
    plot.y_label = "E[DT(h)]";
    PlotSeries mean{"mean", {}, {}};
    PlotBand band{"mean +/- sigma", {}, {}, {}};
    for (int h = 0; h < entropy.horizon(); ++h) {
      mean.x.push_back(h + 1);
      mean.y.push_back(entropy.mean(h));
      band.x.push_back(h + 1);
      band.lower.push_back(entropy.mean(h) - entropy.sigma(h));
      band.upper.push_back(entropy.mean(h) + entropy.sigma(h));
    }
    plot.series.push_back(std::move(mean));
    plot.band = std::move(band);
    render_svg(plot, dir / "entropy.svg");

    out << "wrote " << (dir / "entropy.csv").string() << " and " << (dir / "entropy.svg").string()
        << '\n';
    return 0;
  });
}

int cmd_changepoint(const ChangePointArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CommunityTrajectories trajectories =
        load_trajectories(args.community_file, args.community_name, args.transpose,
                          args.communities);
    ChangePointQuery query;
    query.k = args.num_cps;
    for (std::size_t i = 0; i < args.ranges.size(); ++i) {
      if (args.ranges[i].empty()) {
        query.ranges.emplace_back();
        continue;
      }
      query.ranges.emplace_back(parse_range(args.ranges[i], static_cast<int>(i) + 1));
    }
    while (query.ranges.size() > static_cast<std::size_t>(query.k)) {
      if (query.ranges.back())
        throw Error(ErrorCode::InvalidArgument,
                    "--cp" + std::to_string(query.ranges.size()) + "-range given but -c is " +
                        std::to_string(query.k));
      query.ranges.pop_back();
    }
    query.delta = args.delta;

    const ChangePointResult result =
        detect_change_points(trajectories, query, worker_count(args.threads));

    out << "change points:";
    for (std::size_t i = 0; i < result.positions.size(); ++i)
      out << (i ? "," : " ") << result.positions[i];
    out << '\n';
    out << "log-likelihood (piecewise): " << format_double(result.loglik_piecewise) << '\n';
    out << "log-likelihood (homogeneous): " << format_double(result.loglik_homogeneous) << '\n';
    out << "lambda: " << format_double(result.lambda_stat) << '\n';
    out << "approximate chi-square p-value (df " << result.degrees_of_freedom
        << "): " << format_double(result.approx_p_value) << '\n';
    for (std::size_t l = 0; l < result.segment_matrices.size(); ++l) {
      out << "segment " << l << " transition matrix:\n";
      print_matrix(out, result.segment_matrices[l].matrix());
    }

    const std::filesystem::path dir(args.output);
    ensure_directory(dir);
    write_profile_csv(result.likelihood_profile, dir / "profile.csv");
    PlotSpec plot;
    plot.title = "Change-point log-likelihood";
    plot.x_label = query.k == 1 ? "change point position" : "first change point position";
    plot.y_label = "log-likelihood";
    PlotSeries curve{query.k == 1 ? "log-likelihood" : "profile log-likelihood", {}, {}};
    for (const auto& [position, loglik] : result.likelihood_profile) {
      curve.x.push_back(position);
      curve.y.push_back(loglik);
    }
    plot.series.push_back(std::move(curve));
    render_svg(plot, dir / "profile.svg");
    out << "wrote " << (dir / "profile.csv").string() << " and " << (dir / "profile.svg").string()
        << '\n';
    return 0;
  });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random Theil entropy of a multi-individual Markov system", "randentropy"};
  app.require_subcommand(1);

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Forecast the expected Random Theil entropy");
  run_cmd->add_option("-m,--community-file", run.community_file, "CSV with the community matrix")
      ->required();
  run_cmd->add_option("-M,--community-name", run.community_name, "Name of the community matrix")
      ->capture_default_str();
  run_cmd->add_option("-b,--attribute-file", run.attribute_file, "CSV with the attribute matrix")
      ->required();
  run_cmd->add_option("-B,--attribute-name", run.attribute_name, "Name of the attribute matrix")
      ->capture_default_str();
  run_cmd->add_option("-s,--bin-width", run.bin_width, "Histogram bin width")->required();
  run_cmd->add_option("-t,--horizon", run.horizon, "Simulated period (time steps)")
      ->capture_default_str();
  run_cmd->add_option("-n,--iterations", run.iterations, "Monte Carlo iterations")
      ->capture_default_str();
  run_cmd->add_flag("-i,--stationary", run.stationary,
                    "Start from the stationary distribution of the chain");
  run_cmd->add_option("--seed", run.seed, "Random seed");
  run_cmd->add_option("--copula", run.copula, "Copula family")
      ->check(CLI::IsMember({"independence", "clayton", "gaussian"}))
      ->capture_default_str();
  run_cmd->add_option("--theta", run.theta, "Copula dependence parameter");
  run_cmd->add_option("-o,--output", run.output, "Output directory")->capture_default_str();
  run_cmd->add_flag("-v,--verbose", run.verbose, "Print the fitted model");
  run_cmd->add_option("--threads", run.threads, "Worker threads (default: RANDENTROPY_THREADS or all cores)");
  run_cmd->add_flag("--transpose", run.transpose, "Input matrices are time x individuals");
  run_cmd->add_option("-D,--communities", run.communities,
                      "Number of communities (default: largest label)");
  run_cmd->add_option("--change-points", run.change_points,
                      "Change points; the last segment drives the forecast")
      ->delimiter(',');
  run_cmd->add_option("--interpolation", run.interpolation, "Within-bin quantile interpolation")
      ->check(CLI::IsMember({"linear", "step"}))
      ->capture_default_str();
  run_cmd->add_flag("--pooled-fallback", run.pooled_fallback,
                    "Use the pooled distribution for communities without observations");
  run_cmd->add_option("--log-base", run.log_base, "Logarithm base of the output (default e)");

  ChangePointArgs cp;
  std::string cp_ranges[3];
  CLI::App* cp_cmd = app.add_subcommand("changepoint", "Detect change points of the chain");
  cp_cmd->add_option("-m,--community-file", cp.community_file, "CSV with the community matrix")
      ->required();
  cp_cmd->add_option("-M,--community-name", cp.community_name, "Name of the community matrix")
      ->capture_default_str();
  cp_cmd->add_option("-c,--num-cps", cp.num_cps, "Number of change points (1-3)")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  cp_cmd->add_option("-o,--output", cp.output, "Output directory")->capture_default_str();
  const CLI::Validator range_form(
      [](std::string& text) -> std::string {
        static const std::regex form(R"(\s*\d+\s*:\s*\d+\s*)");
        return std::regex_match(text, form) ? "" : "expected start:stop, got '" + text + "'";
      },
      "START:STOP");
  for (int i = 0; i < 3; ++i)
    cp_cmd->add_option("--cp" + std::to_string(i + 1) + "-range", cp_ranges[i],
                       "Search window start:stop for change point " + std::to_string(i + 1))
        ->check(range_form);
  cp_cmd->add_option("--delta", cp.delta, "Minimum spacing between change points");
  cp_cmd->add_option("--threads", cp.threads, "Worker threads (default: RANDENTROPY_THREADS or all cores)");
  cp_cmd->add_flag("--transpose", cp.transpose, "Input matrix is time x individuals");
  cp_cmd->add_option("-D,--communities", cp.communities,
                     "Number of communities (default: largest label)");
  cp_cmd->add_flag("-v,--verbose", cp.verbose, "Verbose output");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error[ArgumentError]: " << e.what() << '\n';
    return 2;
  }

  if (run_cmd->parsed()) return cmd_run(run, out, err);
  for (const auto& r : cp_ranges) cp.ranges.push_back(r);
  while (!cp.ranges.empty() && cp.ranges.back().empty()) cp.ranges.pop_back();
  return cmd_changepoint(cp, out, err);
}

}  // namespace randentropy::cli
