#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ucl/analysis.hpp"
#include "ucl/config.hpp"

namespace ucl {

// Replicate-averaged series (index = t - 1) and per-arm tallies.  Standard
// errors are across replicates and zero when there is a single replicate.
// Cost columns are all zero when the environment defines no costs.
struct AggregateResult {
  Eigen::VectorXd mean_expected, stderr_expected;
  Eigen::VectorXd mean_observed, stderr_observed;
  Eigen::VectorXd mean_cost, stderr_cost;
  Eigen::VectorXd mean_pulls, mean_entries;
  int replicates = 0;
};

// One full episode; replicate r draws from the stream seeded by (seed, r), so
// any replicate can be reproduced in isolation.  paths may be null except for
// the graph-constrained policy.
RunTrace run_single(const ExperimentConfig& config, const Environment& env,
                    const ShortestPathTable* paths, std::uint64_t replicate);

// Runs all replicates (threads = 0 picks the hardware count; the result is
// identical for every thread count) and aggregates with an index-ordered
// pairwise reduction.
AggregateResult run_experiment(const ExperimentConfig& config, int threads = 0);

// Closed-form curves matching the CLI bound tokens.
enum class BoundKind { lower_reference, deterministic, stochastic, block, graphical };
BoundKind parse_bound_kind(const std::string& token);  // lai | t2 | t3 | t5 | t6

BoundParams bound_params(const ExperimentConfig& config, const Environment& env);

// Single bound value; cost_metric selects the transition-cost ceiling of the
// block analysis.  The curve is frozen below t = 3 (evaluated at 3).
double evaluate_bound(BoundKind kind, bool cost_metric, const Environment& env, double t,
                      const BoundParams& params);

// CSV emission; floats carry 17 significant digits so identical runs produce
// byte-identical files.
void write_aggregate_csv(const AggregateResult& aggregate, const std::string& path);
void write_arm_csv(const AggregateResult& aggregate, const std::string& path);
void write_bound_csv(const AggregateResult& aggregate, BoundKind kind, bool cost_metric,
                     const Environment& env, const BoundParams& params, const std::string& path);
void write_fit_csv(const PhenotypeReport& report, const std::string& path);
void write_quantile_csv(const Eigen::VectorXd& alphas, double beta, const std::string& path);

// Column extraction from a CSV with a header row.
Eigen::VectorXd read_csv_column(const std::string& path, const std::string& column);

// Two softmax agents on the 100-arm landscape-B grid, horizon 90: a wide
// independent prior centered on the surface mean versus a tight spatially
// correlated prior.  Returns the shape classification of each observed-regret
// trajectory.
struct PhenotypeDemoCase {
  PhenotypeReport report;
  double final_observed_regret = 0;
};
struct PhenotypeDemo {
  PhenotypeDemoCase wide_independent;
  PhenotypeDemoCase tight_correlated;
};
PhenotypeDemo run_phenotype_demo(std::uint64_t seed);

// The two demo parameterizations as ready-to-run configs.
ExperimentConfig phenotype_demo_config(bool correlated);

}  // namespace ucl
