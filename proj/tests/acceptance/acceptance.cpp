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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails its tolerance or its runtime limit.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "../../tools/cli.hpp"
#include "randentropy/randentropy.hpp"

using namespace randentropy;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = RANDENTROPY_SOURCE_DIR;

struct Verdict {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& id, const std::string& title, double limit_seconds,
               const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict verdict{false, ""};
  try {
    verdict = body();
  } catch (const std::exception& e) {
    verdict = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed < limit_seconds;
  const bool pass = verdict.ok && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %s %s: %s; runtime %.3f s (limit %.0f s%s)\n", pass ? "PASS" : "FAIL",
              id.c_str(), title.c_str(), verdict.detail.c_str(), elapsed, limit_seconds,
              in_time ? "" : ", exceeded");
  std::fflush(stdout);
}

std::string fmt(const char* format, auto... values) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, values...);
  return buffer;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TransitionMatrix matrix2(double a, double b, double c, double d) {
  Eigen::MatrixXd p(2, 2);
  p << a, b, c, d;
  return TransitionMatrix(p);
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "randentropy");
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

fs::path scratch_dir(const std::string& name) {
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() /
                       ("randentropy_acceptance_" + std::to_string(rd()) + "_" + name);
  fs::create_directories(dir);
  return dir;
}

Verdict theil_exactness() {
  double worst = 0.0;
  bool uniform_exact = true;
  for (int n : {2, 10, 1000}) {
    uniform_exact &= theil_entropy(shares_from_attributes(Eigen::VectorXd::Ones(n))) == 0.0;
    uniform_exact &=
        theil_entropy(shares_from_attributes(Eigen::VectorXd::Constant(n, 0.37))) == 0.0;
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
    unit(n / 2) = 1.0;
    worst = std::max(worst, std::abs(theil_entropy(shares_from_attributes(unit)) - std::log(n)));
  }
  return {uniform_exact && worst <= 1e-15,
          fmt("uniform shares %s 0, max |DT(unit) - ln N| = %.3g (tol 1e-15)",
              uniform_exact ? "==" : "!=", worst)};
}

Verdict enumeration_oracle() {
  // Two-point laws (step mode puts bin mass on the midpoints):
  // community 1 at 0.5 w.p. 1/4 or 2.5 w.p. 3/4; community 2 at 1.5 or 3.5, 1/2 each.
  const Eigen::Matrix2d p = (Eigen::Matrix2d() << 0.8, 0.2, 0.3, 0.7).finished();
  const DistributionFamily family(
      {EmpiricalDistribution(1.0, 0.0, {1, 0, 3}), EmpiricalDistribution(1.0, 0.0, {0, 2, 0, 2})},
      EmpiricalDistribution(1.0, 0.0, {1, 2, 3, 2}));
  const std::vector<std::vector<oracle::Atom>> atoms{{{0.5, 0.25}, {2.5, 0.75}},
                                                     {{1.5, 0.5}, {3.5, 0.5}}};
  const int horizon = 12;
  const int replications = 10000;
  SimulationConfig cfg;
  cfg.horizon = horizon;
  cfg.replications = replications;
  cfg.seed = 20240101;
  cfg.interpolation = Interpolation::step;
  const auto estimate =
      estimate_entropy(SegmentedChain(TransitionMatrix(p)), family, cfg, {{0}, {1}});
  const auto exact = oracle::exact_expected_theil(p, {0, 1}, atoms, horizon);
  double worst_ratio = 0.0;
  for (int h = 0; h < horizon; ++h) {
    const double bound = 3.0 * estimate.sigma(h) / std::sqrt(replications);
    worst_ratio = std::max(worst_ratio, std::abs(estimate.mean(h) - exact[h]) / bound);
  }
  return {worst_ratio <= 1.0,
          fmt("max |mean - exact| / (3 sigma/sqrt L) = %.3f over h<=12, L=1e4 (need <= 1)",
              worst_ratio)};
}

Verdict changepoint_recovery() {
  const SegmentedChain chain({120},
                             {matrix2(0.95, 0.05, 0.05, 0.95), matrix2(0.05, 0.95, 0.95, 0.05)});
  int hits = 0;
  std::string positions;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RngStream rng(seed);
    const auto x =
        simulate_phmc(chain, draw_labels(Eigen::Vector2d(0.5, 0.5), 30, rng), 199, rng);
    const int tau = detect_change_points(x, {.k = 1}).positions[0];
    hits += std::abs(tau - 120) <= 5;
    positions += (seed > 1 ? "," : "") + std::to_string(tau);
  }
  return {hits >= 19, fmt("%d/20 within 120+-5 (need >= 19); detected %s", hits, positions.c_str())};
}

Verdict search_oracle() {
  std::mt19937 gen(4242);
  int matches = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = std::uniform_int_distribution<>(1, 8)(gen);
    const int t = std::uniform_int_distribution<>(4, 60)(gen);
    const int d = std::uniform_int_distribution<>(2, 4)(gen);
    const int k = 1 + trial % 2;
    const double stay = std::uniform_real_distribution<>(0.0, 0.95)(gen);
    Eigen::MatrixXi raw(n, t);
    for (int c = 0; c < n; ++c) {
      raw(c, 0) = std::uniform_int_distribution<>(1, d)(gen);
      for (int s = 1; s < t; ++s)
        raw(c, s) = std::uniform_real_distribution<>(0.0, 1.0)(gen) < stay
                        ? raw(c, s - 1)
                        : std::uniform_int_distribution<>(1, d)(gen);
    }
    const auto x = validate_trajectories(raw, d);
    const auto got = detect_change_points(x, {.k = k}, 2);
    const auto expected = oracle::brute_force_change_points(x.labels(), d, k);
    const double gap = std::abs(got.loglik_piecewise - expected.loglik);
    worst = std::max(worst, gap);
    matches += got.positions == expected.positions && gap <= 1e-10;
  }
  return {matches == 50,
          fmt("%d/50 instances match (positions exact, max loglik gap %.3g, tol 1e-10)", matches,
              worst)};
}

Verdict stationary_solve() {
  std::mt19937 gen(55);
  std::uniform_real_distribution<> unif(0.0, 1.0);
  double worst_residual = 0.0, worst_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 5;
    // Irreducible: a positive cycle i -> i+1 plus random sparse mass.
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      p(i, (i + 1) % d) = 0.05 + unif(gen);
      for (int j = 0; j < d; ++j)
        if (unif(gen) < 0.5) p(i, j) += unif(gen);
      p.row(i) /= p.row(i).sum();
    }
    const auto s = stationary_distribution(TransitionMatrix(p));
    worst_residual = std::max(
        worst_residual, (s.pi.transpose() * p - s.pi.transpose()).lpNorm<Eigen::Infinity>());
    worst_gap = std::max(worst_gap, (s.pi - oracle::power_iteration(p)).lpNorm<Eigen::Infinity>());
  }
  return {worst_residual <= 1e-10 && worst_gap <= 1e-8,
          fmt("max ||pi P - pi||inf = %.3g (tol 1e-10), max |pi - power iteration| = %.3g (tol 1e-8)",
              worst_residual, worst_gap)};
}

Verdict copula_correctness() {
  std::mt19937 gen(606);
  std::uniform_real_distribution<> unif(0.01, 0.99);
  const std::vector<double> thetas{0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 0.25, 3.0};
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double theta = thetas[i % thetas.size()];
    std::vector<double> history(1 + (i / 8) % 5);  // b = 2..6
    for (auto& u : history) u = unif(gen);
    const double v = unif(gen);
    const double got = conditional_inverse(CopulaSpec::clayton(theta), v, history);
    worst = std::max(worst, std::abs(got - oracle::clayton_conditional_inverse(theta, history, v)));
  }

  const int draws = 100000;
  const int dim = 4;
  std::vector<std::vector<double>> columns(dim, std::vector<double>(draws));
  RngStream rng(2024);
  for (int i = 0; i < draws; ++i) {
    const Eigen::VectorXd u = sample_dependent_uniforms(CopulaSpec::clayton(2.0), dim, rng);
    for (int b = 0; b < dim; ++b) columns[b][i] = u(b);
  }
  const double tau = oracle::kendall_tau(columns[0], columns[1]);
  double worst_ks = 0.0;
  for (const auto& column : columns) worst_ks = std::max(worst_ks, oracle::ks_uniform(column));
  const double critical = oracle::ks_critical(draws, 0.001);
  return {worst <= 1e-8 && std::abs(tau - 0.5) <= 0.02 && worst_ks < critical,
          fmt("grid max error %.3g (tol 1e-8); Kendall tau %.4f (0.5 +- 0.02); "
              "max KS D %.5f < %.5f (alpha 0.001, %d marginals)",
              worst, tau, worst_ks, critical, dim)};
}

Verdict parallel_determinism() {
  const std::string data = (kSource / "data" / "synthetic_ratings.csv").string();
  std::vector<std::string> outputs;
  for (int threads : {1, 2, 8}) {
    const fs::path dir = scratch_dir("threads" + std::to_string(threads));
    const int code = run_cli({"run", "-m", data, "-b", data, "-s", "0.25", "-t", "36", "-n", "1000",
                              "--seed", "777", "--copula", "clayton", "--theta", "1.0",
                              "--threads", std::to_string(threads), "-o", dir.string()});
    outputs.push_back(code == 0 ? slurp(dir / "entropy.csv") : "");
    fs::remove_all(dir);
  }
  const bool same = !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
  return {same, fmt("entropy.csv byte-identical across 1/2/8 workers: %s (%zu bytes)",
                    same ? "yes" : "no", outputs[0].size())};
}

Verdict bounds_invariant() {
  std::mt19937 gen(8080);
  std::uniform_real_distribution<> unif(0.0, 1.0);
  long long draws = 0, violations = 0, negative_means = 0;
  for (int scenario = 0; scenario < 1000; ++scenario) {
    const int d = std::uniform_int_distribution<>(2, 5)(gen);
    const int n = std::uniform_int_distribution<>(1, 30)(gen);
    Eigen::MatrixXd p(d, d);
    for (auto& v : p.reshaped()) v = unif(gen) < 0.3 ? 0.0 : unif(gen);
    for (int i = 0; i < d; ++i) {
      p(i, i) += 1e-3;
      p.row(i) /= p.row(i).sum();
    }
    std::vector<std::optional<EmpiricalDistribution>> per;
    std::vector<std::int64_t> pooled;
    for (int x = 0; x < d; ++x) {
      std::vector<std::int64_t> counts(std::uniform_int_distribution<>(1, 20)(gen));
      for (auto& c : counts) c = unif(gen) < 0.4 ? 0 : std::uniform_int_distribution<>(1, 50)(gen);
      counts.back() += 1;
      if (pooled.size() < counts.size()) pooled.resize(counts.size(), 0);
      for (std::size_t m = 0; m < counts.size(); ++m) pooled[m] += counts[m];
      per.emplace_back(EmpiricalDistribution(0.05 + unif(gen), 0.0, counts));
    }
    const DistributionFamily family(per, EmpiricalDistribution(1.0, 0.0, pooled));
    std::vector<CommunityLabel> start(n);
    for (auto& x : start) x.index = std::uniform_int_distribution<>(0, d - 1)(gen);

    SimulationConfig cfg;
    cfg.horizon = std::uniform_int_distribution<>(1, 12)(gen);
    cfg.replications = 20;
    cfg.seed = scenario;
    cfg.interpolation = scenario % 2 ? Interpolation::step : Interpolation::linear;
    switch (scenario % 3) {
      case 0: cfg.copula = CopulaSpec::independence(); break;
      case 1: cfg.copula = CopulaSpec::clayton(0.1 + 5.0 * unif(gen)); break;
      case 2:
        cfg.copula = CopulaSpec::gaussian(n > 1 ? -0.9 / (n - 1) + (0.9 + 0.9 / (n - 1)) * unif(gen)
                                                : 0.5);
        break;
    }
    const SegmentedChain chain{TransitionMatrix(p)};
    const double upper = std::log(static_cast<double>(n));
    for (int l = 0; l < cfg.replications; ++l) {
      RngStream rng(*cfg.seed, l);
      const Eigen::VectorXd dt = run_replication(chain, family, cfg, start, rng);
      draws += dt.size();
      violations += ((dt.array() < 0.0) || (dt.array() > upper)).count();
    }
    const auto estimate = estimate_entropy(chain, family, cfg, start);
    negative_means += (estimate.mean.array() < 0.0).count();
  }
  return {violations == 0 && negative_means == 0,
          fmt("%lld sampled DT(h) values, %lld outside [0, ln N], %lld negative means",
              draws, violations, negative_means)};
}

Verdict golden_cli() {
  const std::string data = (kSource / "data" / "synthetic_ratings.csv").string();
  const fs::path dir = scratch_dir("golden");
  const int code = run_cli({"run", "-m", data, "-b", data, "-s", "0.25", "-t", "36", "-n", "1000",
                            "--seed", "20240101", "-o", dir.string()});
  const std::string produced = code == 0 ? slurp(dir / "entropy.csv") : "";
  fs::remove_all(dir);
  const std::string golden = slurp(kSource / "tests" / "golden" / "entropy_seed20240101.csv");
  const bool same = !golden.empty() && produced == golden;
  return {same, fmt("exit %d; entropy.csv %s golden (%zu bytes)", code,
                    same ? "matches" : "differs from", golden.size())};
}

}  // namespace

int main() {
  criterion("AC1", "Theil exactness", 1, theil_exactness);
  criterion("AC2", "enumeration oracle", 10, enumeration_oracle);
  criterion("AC3", "change-point recovery", 30, changepoint_recovery);
  criterion("AC4", "search oracle equivalence", 20, search_oracle);
  criterion("AC5", "stationary solve", 5, stationary_solve);
  criterion("AC6", "copula correctness", 30, copula_correctness);
  criterion("AC7", "determinism and parallel safety", 30, parallel_determinism);
  criterion("AC8", "bounds invariant", 60, bounds_invariant);
  criterion("AC9", "CLI end-to-end golden", 60, golden_cli);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
