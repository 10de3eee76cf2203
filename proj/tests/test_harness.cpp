#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ucl/config.hpp"
#include "ucl/harness.hpp"

using namespace ucl;

namespace {

std::filesystem::path scratch_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ucl_harness_" + name);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const char* kFullConfig = R"(
# exercise every key once
algorithm = block_ucl
horizon = 500
replicates = 7
seed = 99
env.landscape = B
env.shape = grid10x10
env.noise = uniform_integer
env.noise_half_width = 5
env.costs = euclidean
env.graph = grid
prior.mean = 200
prior.variance = 1e6
prior.length_scale = 0
agent.sampling_variance = 10
agent.start_arm = 3
ucl.scale = 4.0
ucl.exponent = 1
ucl.temperature = deterministic
ucl.constant_temperature = 0
ucl.beta = 1.05
)";

}  // namespace

TEST_CASE("config parsing covers every key") {
  const ExperimentConfig c = parse_config(kFullConfig);
  CHECK(c.algorithm == Algorithm::block_ucl);
  CHECK(c.horizon == 500);
  CHECK(c.replicates == 7);
  CHECK(c.seed == 99);
  CHECK(c.has_landscape);
  CHECK(c.landscape == LandscapeId::B);
  CHECK(c.shape == LandscapeShape::grid10x10);
  CHECK(c.noise.kind == NoiseKind::uniform_integer);
  CHECK(c.noise.half_width == 5);
  CHECK(c.costs == CostKind::euclidean);
  CHECK(c.graph == GraphKind::grid);
  CHECK(c.prior_mean_scalar == 200.0);
  CHECK(c.prior.variance == 1e6);
  CHECK(c.prior.correlation_length == 0.0);
  CHECK(c.sampling_variance == 10.0);
  CHECK(c.start_arm == 2);  // 1-based in the file
  CHECK(c.ucl.credibility_scale == 4.0);
  CHECK(c.ucl.credibility_exponent == 1);
  CHECK(c.ucl.temperature == TemperatureMode::deterministic);
  CHECK(c.beta == 1.05);
}

TEST_CASE("config errors name the offending key") {
  CHECK_THROWS_WITH_AS(parse_config("bogus = 1\nenv.landscape = A\n"),
                       doctest::Contains("bogus"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("env.landscape = A\nhorizon = soon\n"),
                       doctest::Contains("horizon"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("env.landscape = C\n"), doctest::Contains("env.landscape"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(""), doctest::Contains("env.landscape"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("env.landscape = A\nenv.means = 1,2\n"),
                       doctest::Contains("exactly one"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("env.landscape = A\nucl.exponent = 3\n"),
                       doctest::Contains("ucl.exponent"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("env.landscape = A\nucl.beta = 1.0\n"),
                       doctest::Contains("ucl.beta"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("env.landscape = A\nreplicates = 0\n"),
                       doctest::Contains("replicates"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("env.landscape = A\nenv.noise = gaussian\nenv.noise_half_width = 3\n"),
                       doctest::Contains("env.noise_half_width"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("env.landscape = A\nprior.length_scale = 2\n"),
                       doctest::Contains("prior.length_scale"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("env.landscape = A\nagent.start_arm = 11\n"),
                       doctest::Contains("agent.start_arm"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("env.landscape = A\nalgorithm = graphical_block_ucl\n"),
                       doctest::Contains("env.graph"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("env.means = 1,2,3\nenv.graph = grid\n"),
                       doctest::Contains("grid"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("env.landscape = A\nenv.graph = file\n"),
                       doctest::Contains("env.graph_file"), ConfigError);
}

TEST_CASE("later keys win and defaults are sensible") {
  const ExperimentConfig c = parse_config("env.landscape = A\nseed = 1\nseed = 5\n");
  CHECK(c.seed == 5);
  CHECK(c.replicates == 1);
  CHECK(c.noise.kind == NoiseKind::gaussian);
  CHECK(c.noise.sd == 1.0);
  CHECK(c.prior.uninformative());
  CHECK(c.sampling_variance < 0);  // adopt environment noise
  CHECK(c.beta == 1.02);
  CHECK(c.start_arm == 0);
}

TEST_CASE("temperature default depends on the algorithm") {
  CHECK(parse_config("env.landscape = A\nalgorithm = stochastic_ucl\n").ucl.temperature ==
        TemperatureMode::cooling);
  CHECK(parse_config("env.landscape = A\nalgorithm = deterministic_ucl\n").ucl.temperature ==
        TemperatureMode::deterministic);
  CHECK(parse_config("env.landscape = A\nalgorithm = stochastic_ucl\nucl.temperature = constant\n"
                     "ucl.constant_temperature = 2\n")
            .ucl.temperature == TemperatureMode::constant);
}

TEST_CASE("means and graph files round-trip") {
  const auto means_path = scratch_file("means.txt");
  const auto graph_path = scratch_file("edges.txt");
  write_file(means_path, "# three arms\n1.5\n2.5\n4.0\n");
  write_file(graph_path, "1 2\n2 3\n3 1  # triangle\n");
  const std::string text = "env.means_file = " + means_path.string() +
                           "\nenv.graph = file\nenv.graph_file = " + graph_path.string() + "\n";
  const ExperimentConfig c = parse_config(text);
  const Environment env = build_environment(c);
  CHECK(env.num_arms() == 3);
  CHECK(env.means[2] == 4.0);
  CHECK(env.graph.has_edge(0, 2));
  CHECK(env.graph.has_edge(1, 2));

  CHECK_THROWS_WITH_AS(load_means_file("no_such_means_file.txt"), doctest::Contains("no_such"),
                       ConfigError);
  write_file(graph_path, "1 9\n");
  CHECK_THROWS_AS(load_graph_file(graph_path.string(), 3), ConfigError);
  std::filesystem::remove(means_path);
  std::filesystem::remove(graph_path);
}

TEST_CASE("environment assembly") {
  const ExperimentConfig c = parse_config(kFullConfig);
  const Environment env = build_environment(c);
  CHECK(env.num_arms() == 100);
  CHECK(env.costs.rows() == 100);
  CHECK(env.costs(0, 99) == doctest::Approx(std::sqrt(162.0)));
  CHECK(env.graph.num_nodes == 100);
  CHECK(env.graph.has_edge(0, 1));
  CHECK_FALSE(env.graph.has_edge(0, 11));  // no diagonal steps
  CHECK(env.noise.variance() == doctest::Approx(10.0));

  const ExperimentConfig plain = parse_config("env.means = 3, 1, 2\nenv.costs = manhattan\n");
  const Environment bare = build_environment(plain);
  CHECK(bare.num_arms() == 3);
  CHECK(bare.costs(0, 2) == doctest::Approx(2.0));  // unit-spaced line positions
  CHECK(bare.best_arm() == 0);
}

TEST_CASE("belief assembly follows the prior settings") {
  const Environment env = build_environment(parse_config("env.landscape = B\n"));

  ExperimentConfig flat = parse_config("env.landscape = B\n");
  const BeliefState uninformative = build_belief(flat, env);
  CHECK_FALSE(uninformative.is_full());
  CHECK(uninformative.variance(0) == std::numeric_limits<double>::infinity());

  ExperimentConfig informed =
      parse_config("env.landscape = B\nprior.mean = 40\nprior.variance = 25\n");
  const BeliefState diag = build_belief(informed, env);
  CHECK_FALSE(diag.is_full());
  CHECK(diag.mean(3) == 40.0);
  CHECK(diag.variance(3) == doctest::Approx(25.0));

  ExperimentConfig correlated = parse_config(
      "env.landscape = B\nprior.mean = 40\nprior.variance = 25\nprior.length_scale = 2\n");
  const BeliefState full = build_belief(correlated, env);
  CHECK(full.is_full());
  CHECK(full.covariance()(0, 0) == doctest::Approx(25.0));
  CHECK(full.covariance()(0, 1) == doctest::Approx(25.0 * std::exp(-0.5)));
}

TEST_CASE("agent sampling variance defaults to the environment noise") {
  const ExperimentConfig c =
      parse_config("env.landscape = A\nenv.noise = uniform_integer\nenv.noise_half_width = 5\n");
  const Environment env = build_environment(c);
  CHECK(agent_sampling_variance(c, env) == doctest::Approx(10.0));
  const ExperimentConfig forced = parse_config(
      "env.landscape = A\nagent.sampling_variance = 2.5\n");
  CHECK(agent_sampling_variance(forced, build_environment(forced)) == 2.5);
}

TEST_CASE("replicates reproduce bit-for-bit and differ across indices") {
  const ExperimentConfig c =
      parse_config("env.landscape = B\nalgorithm = stochastic_ucl\nhorizon = 120\nseed = 7\n");
  const Environment env = build_environment(c);
  const RunTrace a = run_single(c, env, nullptr, 4);
  const RunTrace b = run_single(c, env, nullptr, 4);
  CHECK(a.arms == b.arms);
  CHECK(a.rewards == b.rewards);
  const RunTrace other = run_single(c, env, nullptr, 5);
  CHECK(a.arms != other.arms);
}

TEST_CASE("zero-noise deterministic run is fully reproducible") {
  const ExperimentConfig zero_noise_needs_variance = parse_config(
      "env.landscape = B\nenv.noise = uniform_integer\nenv.noise_half_width = 0\n");
  CHECK_THROWS_WITH_AS(
      agent_sampling_variance(zero_noise_needs_variance, build_environment(zero_noise_needs_variance)),
      doctest::Contains("agent.sampling_variance"), ConfigError);

  const ExperimentConfig c = parse_config(
      "env.landscape = B\nenv.noise = uniform_integer\nenv.noise_half_width = 0\n"
      "agent.sampling_variance = 1\n"
      "algorithm = deterministic_ucl\nhorizon = 60\nreplicates = 1\n");
  const Environment env = build_environment(c);
  const RunTrace trace = run_single(c, env, nullptr, 0);
  for (std::int64_t k = 0; k < trace.horizon(); ++k)
    CHECK(trace.rewards[k] == env.means[trace.arms[k]]);
  const AggregateResult agg = run_experiment(c, 1);
  CHECK(agg.stderr_expected.cwiseAbs().maxCoeff() == 0.0);  // single replicate
  CHECK(agg.mean_expected[59] ==
        doctest::Approx(cumulative_expected_regret(env, trace)[59]).epsilon(1e-15));
}

TEST_CASE("aggregates are thread-count invariant") {
  const ExperimentConfig c = parse_config(
      "env.landscape = B\nenv.costs = euclidean\nalgorithm = block_ucl\n"
      "horizon = 200\nreplicates = 16\nseed = 11\n");
  const AggregateResult one = run_experiment(c, 1);
  const AggregateResult four = run_experiment(c, 4);
  const AggregateResult eight = run_experiment(c, 8);
  CHECK(one.mean_expected == four.mean_expected);
  CHECK(one.stderr_expected == four.stderr_expected);
  CHECK(one.mean_observed == eight.mean_observed);
  CHECK(one.mean_cost == eight.mean_cost);
  CHECK(one.stderr_cost == four.stderr_cost);
  CHECK(one.mean_pulls == eight.mean_pulls);
  CHECK(one.mean_entries == four.mean_entries);

  const auto csv_a = scratch_file("agg_one.csv");
  const auto csv_b = scratch_file("agg_four.csv");
  write_aggregate_csv(one, csv_a.string());
  write_aggregate_csv(four, csv_b.string());
  CHECK(read_file(csv_a) == read_file(csv_b));
  std::filesystem::remove(csv_a);
  std::filesystem::remove(csv_b);
}

TEST_CASE("stderr columns are zero only without replication") {
  const ExperimentConfig noisy = parse_config(
      "env.landscape = A\nalgorithm = ucb1\nhorizon = 50\nreplicates = 5\nseed = 3\n");
  const AggregateResult agg = run_experiment(noisy, 2);
  CHECK(agg.stderr_observed.maxCoeff() > 0.0);
  CHECK(agg.replicates == 5);
}

TEST_CASE("bound parameters inherit the config scale and beta") {
  const ExperimentConfig c = parse_config(
      "env.landscape = A\nucl.scale = 3.5\nucl.beta = 1.10\nagent.sampling_variance = 4\n");
  const Environment env = build_environment(c);
  const BoundParams p = bound_params(c, env);
  CHECK(p.credibility_scale == 3.5);
  CHECK(p.beta == 1.10);
  CHECK(p.sampling_sd == doctest::Approx(2.0));
}

TEST_CASE("bound tokens and the low-horizon clamp") {
  CHECK(parse_bound_kind("lai") == BoundKind::lower_reference);
  CHECK(parse_bound_kind("t2") == BoundKind::deterministic);
  CHECK(parse_bound_kind("t3") == BoundKind::stochastic);
  CHECK(parse_bound_kind("t5") == BoundKind::block);
  CHECK(parse_bound_kind("t6") == BoundKind::graphical);
  CHECK_THROWS_AS(parse_bound_kind("t4"), ConfigError);

  Environment env = build_environment(parse_config("env.landscape = B\nenv.costs = euclidean\n"));
  const BoundParams params;
  const double at3 = evaluate_bound(BoundKind::deterministic, false, env, 3.0, params);
  CHECK(evaluate_bound(BoundKind::deterministic, false, env, 1.0, params) == at3);
  CHECK(evaluate_bound(BoundKind::deterministic, false, env, 2.0, params) == at3);
  CHECK(evaluate_bound(BoundKind::deterministic, false, env, 10.0, params) > at3);
  CHECK(evaluate_bound(BoundKind::block, true, env, 100.0, params) > 0.0);
  CHECK_THROWS_AS(evaluate_bound(BoundKind::stochastic, true, env, 100.0, params), ConfigError);
}

TEST_CASE("csv schemas and the column reader") {
  const ExperimentConfig c = parse_config(
      "env.landscape = A\nenv.costs = euclidean\nhorizon = 5\nreplicates = 2\nseed = 21\n");
  const AggregateResult agg = run_experiment(c, 1);

  const auto agg_path = scratch_file("schema_agg.csv");
  write_aggregate_csv(agg, agg_path.string());
  std::ifstream in(agg_path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,mean_regret,stderr_regret,mean_observed,stderr_observed,mean_cost,stderr_cost");
  const Eigen::VectorXd round = read_csv_column(agg_path.string(), "mean_regret");
  CHECK(round.size() == 5);
  CHECK(round[4] == agg.mean_expected[4]);  // 17 digits: exact round trip
  CHECK_THROWS_WITH_AS(read_csv_column(agg_path.string(), "nope"), doctest::Contains("nope"),
                       ConfigError);

  const auto arm_path = scratch_file("schema_arms.csv");
  write_arm_csv(agg, arm_path.string());
  std::ifstream arms_in(arm_path);
  std::getline(arms_in, header);
  CHECK(header == "arm,mean_pulls,mean_entries");
  CHECK(read_csv_column(arm_path.string(), "mean_pulls").sum() == doctest::Approx(5.0));

  const Environment env = build_environment(c);
  const auto bound_path = scratch_file("schema_bound.csv");
  write_bound_csv(agg, BoundKind::block, true, env, bound_params(c, env), bound_path.string());
  std::ifstream bound_in(bound_path);
  std::getline(bound_in, header);
  CHECK(header == "t,mean_cost,stderr_cost,bound");

  Eigen::VectorXd series(6);
  series << 1, 2, 3, 4, 5, 6;
  const auto fit_path = scratch_file("schema_fit.csv");
  write_fit_csv(fit_phenotype(series), fit_path.string());
  std::ifstream fit_in(fit_path);
  std::getline(fit_in, header);
  CHECK(header == "model,a,b,ssr,selected");
  const Eigen::VectorXd selected = read_csv_column(fit_path.string(), "selected");
  CHECK(selected.sum() == 1.0);
  CHECK(selected[0] == 1.0);  // exact straight line picks the linear model

  const auto q_path = scratch_file("schema_quantile.csv");
  Eigen::VectorXd alphas(3);
  alphas << 0.01, 0.05, 0.2;
  write_quantile_csv(alphas, 1.02, q_path.string());
  std::ifstream q_in(q_path);
  std::getline(q_in, header);
  CHECK(header == "alpha,lower,exact,upper,sandwich_ok");
  CHECK(read_csv_column(q_path.string(), "sandwich_ok").minCoeff() == 1.0);

  for (const auto& p : {agg_path, arm_path, bound_path, fit_path, q_path})
    std::filesystem::remove(p);
}

TEST_CASE("csv column reader rejects missing files") {
  CHECK_THROWS_AS(read_csv_column("definitely_missing.csv", "x"), ConfigError);
}

TEST_CASE("phenotype demo runs both parameterizations") {
  const PhenotypeDemo demo = run_phenotype_demo(1);
  for (const PhenotypeDemoCase* c : {&demo.wide_independent, &demo.tight_correlated}) {
    CHECK(std::isfinite(c->report.linear.ssr));
    CHECK(std::isfinite(c->report.power.ssr));
    CHECK(std::isfinite(c->report.log.ssr));
    CHECK(std::isfinite(c->final_observed_regret));
  }
  const ExperimentConfig wide = phenotype_demo_config(false);
  CHECK(wide.ucl.constant_temperature == 4.0);
  CHECK(wide.prior.correlation_length == 0.0);
  const ExperimentConfig tight = phenotype_demo_config(true);
  CHECK(tight.ucl.constant_temperature == 1.0);
  CHECK(tight.prior.variance == 10.0);
  CHECK(build_belief(tight, build_environment(tight)).is_full());
}

TEST_CASE("graph-constrained experiments honor adjacency end to end") {
  const ExperimentConfig c = parse_config(
      "env.landscape = B\nalgorithm = graphical_block_ucl\nenv.graph = line\n"
      "horizon = 150\nseed = 13\nagent.start_arm = 1\n");
  const Environment env = build_environment(c);
  const ShortestPathTable paths(env.graph);
  const RunTrace trace = run_single(c, env, &paths, 0);
  int prev = c.start_arm;
  for (int arm : trace.arms) {
    CHECK((arm == prev || env.graph.has_edge(prev, arm)));
    prev = arm;
  }
}
