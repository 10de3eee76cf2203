#include "ucl/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

namespace ucl {

namespace {

struct ReplicateSummary {
  Eigen::VectorXd expected, observed, cost;
  Eigen::VectorXd pulls, entries;
};

ReplicateSummary summarize(const Environment& env, const RunTrace& trace) {
  ReplicateSummary s;
  s.expected = cumulative_expected_regret(env, trace);
  s.observed = cumulative_observed_regret(env, trace);
  s.cost = env.costs.size() != 0 ? cumulative_transition_cost(env, trace)
                                 : Eigen::VectorXd::Zero(trace.horizon());
  s.pulls = pull_counts(trace, env.num_arms()).cast<double>();
  s.entries = entry_counts(trace, env.num_arms()).cast<double>();
  return s;
}

// index-ordered pairwise reduction: independent of evaluation interleaving
template <typename Select>
Eigen::VectorXd pairwise_sum(const std::vector<ReplicateSummary>& rows, std::size_t lo,
                             std::size_t hi, const Select& select) {
  if (hi - lo == 1) return select(rows[lo]);
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(rows, lo, mid, select) + pairwise_sum(rows, mid, hi, select);
}

template <typename Select>
Eigen::VectorXd pairwise_mean(const std::vector<ReplicateSummary>& rows, const Select& select) {
  return pairwise_sum(rows, 0, rows.size(), select) / static_cast<double>(rows.size());
}

template <typename Select>
Eigen::VectorXd stderr_about(const std::vector<ReplicateSummary>& rows,
                             const Eigen::VectorXd& mean, const Select& select) {
  const auto n = static_cast<double>(rows.size());
  if (rows.size() < 2) return Eigen::VectorXd::Zero(mean.size());
  const Eigen::VectorXd ss =
      pairwise_sum(rows, 0, rows.size(), [&](const ReplicateSummary& r) -> Eigen::VectorXd {
        return (select(r) - mean).array().square().matrix();
      });
  return (ss / (n - 1.0) / n).cwiseSqrt();
}

void format_value(std::string& out, double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  out += buffer;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw ConfigError("cannot open output file '" + path + "'");
  }
  void row(const std::string& text) { out_ << text << "\n"; }

 private:
  std::ofstream out_;
};

}  // namespace

RunTrace run_single(const ExperimentConfig& config, const Environment& env,
                    const ShortestPathTable* paths, std::uint64_t replicate) {
  BeliefState belief = build_belief(config, env);
  std::unique_ptr<Policy> policy;
  if (config.algorithm == Algorithm::graphical_block_ucl) {
    if (paths == nullptr) throw std::invalid_argument("graph-constrained run needs a path table");
    policy = make_graphical_policy(std::move(belief), config.ucl, *paths, config.start_arm);
  } else {
    policy = make_policy(config.algorithm, std::move(belief), config.ucl);
  }
  RandomStream stream(config.seed, replicate);
  RunTrace trace;
  trace.arms.reserve(static_cast<std::size_t>(config.horizon));
  trace.rewards.resize(config.horizon);
  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    const int arm = policy->select(t, stream);
    const double reward = sample_reward(env, arm, stream);
    policy->observe(arm, reward);
    trace.arms.push_back(arm);
    trace.rewards[t - 1] = reward;
  }
  return trace;
}

AggregateResult run_experiment(const ExperimentConfig& config, int threads) {
  const Environment env = build_environment(config);
  std::optional<ShortestPathTable> paths;
  if (!env.graph.empty()) paths.emplace(env.graph);
  const ShortestPathTable* path_ptr = paths ? &*paths : nullptr;

  const int replicates = config.replicates;
  std::vector<ReplicateSummary> summaries(replicates);
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (workers > replicates) workers = replicates;

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_lock;
  auto work = [&]() {
    try {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= replicates || failed.load()) break;
        summaries[r] = summarize(env, run_single(config, env, path_ptr, r));
      }
    } catch (const std::exception& e) {
      const std::lock_guard<std::mutex> guard(error_lock);
      failed.store(true);
      if (error_message.empty()) error_message = e.what();
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  if (failed.load()) throw std::runtime_error("replicate failed: " + error_message);

  AggregateResult agg;
  agg.replicates = replicates;
  const auto expected = [](const ReplicateSummary& r) -> Eigen::VectorXd { return r.expected; };
  const auto observed = [](const ReplicateSummary& r) -> Eigen::VectorXd { return r.observed; };
  const auto cost = [](const ReplicateSummary& r) -> Eigen::VectorXd { return r.cost; };
  agg.mean_expected = pairwise_mean(summaries, expected);
  agg.stderr_expected = stderr_about(summaries, agg.mean_expected, expected);
  agg.mean_observed = pairwise_mean(summaries, observed);
  agg.stderr_observed = stderr_about(summaries, agg.mean_observed, observed);
  agg.mean_cost = pairwise_mean(summaries, cost);
  agg.stderr_cost = stderr_about(summaries, agg.mean_cost, cost);
  agg.mean_pulls =
      pairwise_mean(summaries, [](const ReplicateSummary& r) -> Eigen::VectorXd { return r.pulls; });
  agg.mean_entries = pairwise_mean(
      summaries, [](const ReplicateSummary& r) -> Eigen::VectorXd { return r.entries; });
  return agg;
}

BoundKind parse_bound_kind(const std::string& token) {
  if (token == "lai") return BoundKind::lower_reference;
  if (token == "t2") return BoundKind::deterministic;
  if (token == "t3") return BoundKind::stochastic;
  if (token == "t5") return BoundKind::block;
  if (token == "t6") return BoundKind::graphical;
  throw ConfigError("unknown bound token '" + token + "' (expected lai, t2, t3, t5, or t6)");
}

BoundParams bound_params(const ExperimentConfig& config, const Environment& env) {
  BoundParams params;
  params.beta = config.beta;
  params.sampling_sd = std::sqrt(agent_sampling_variance(config, env));
  params.credibility_scale = config.ucl.credibility_scale;
  return params;
}

double evaluate_bound(BoundKind kind, bool cost_metric, const Environment& env, double t,
                      const BoundParams& params) {
  const double horizon = t < 3.0 ? 3.0 : t;
  if (cost_metric && kind != BoundKind::block)
    throw ConfigError("the cost metric applies only to bound token t5");
  switch (kind) {
    case BoundKind::lower_reference:
      return bound_lai_robbins_regret(env, params.sampling_sd, horizon);
    case BoundKind::deterministic: return bound_deterministic_regret(env, horizon, params);
    case BoundKind::stochastic: return bound_stochastic_regret(env, horizon, params);
    case BoundKind::block: {
      const BlockBound b = bound_block(env, horizon, params);
      return cost_metric ? b.cost_total : b.regret_total;
    }
    case BoundKind::graphical: return bound_graphical(env, horizon, params).regret_total;
  }
  throw std::logic_error("unreachable bound kind");
}

void write_aggregate_csv(const AggregateResult& aggregate, const std::string& path) {
  CsvWriter csv(path);
  csv.row("t,mean_regret,stderr_regret,mean_observed,stderr_observed,mean_cost,stderr_cost");
  for (Eigen::Index k = 0; k < aggregate.mean_expected.size(); ++k) {
    std::string row = std::to_string(k + 1);
    for (double v : {aggregate.mean_expected[k], aggregate.stderr_expected[k],
                     aggregate.mean_observed[k], aggregate.stderr_observed[k],
                     aggregate.mean_cost[k], aggregate.stderr_cost[k]}) {
      row += ',';
      format_value(row, v);
    }
    csv.row(row);
  }
}

void write_arm_csv(const AggregateResult& aggregate, const std::string& path) {
  CsvWriter csv(path);
  csv.row("arm,mean_pulls,mean_entries");
  for (Eigen::Index i = 0; i < aggregate.mean_pulls.size(); ++i) {
    std::string row = std::to_string(i + 1);
    row += ',';
    format_value(row, aggregate.mean_pulls[i]);
    row += ',';
    format_value(row, aggregate.mean_entries[i]);
    csv.row(row);
  }
}

void write_bound_csv(const AggregateResult& aggregate, BoundKind kind, bool cost_metric,
                     const Environment& env, const BoundParams& params, const std::string& path) {
  CsvWriter csv(path);
  const bool use_cost = cost_metric;
  csv.row(use_cost ? "t,mean_cost,stderr_cost,bound" : "t,mean_regret,stderr_regret,bound");
  const Eigen::VectorXd& mean = use_cost ? aggregate.mean_cost : aggregate.mean_expected;
  const Eigen::VectorXd& err = use_cost ? aggregate.stderr_cost : aggregate.stderr_expected;
  for (Eigen::Index k = 0; k < mean.size(); ++k) {
    const double t = static_cast<double>(k + 1);
    std::string row = std::to_string(k + 1);
    row += ',';
    format_value(row, mean[k]);
    row += ',';
    format_value(row, err[k]);
    row += ',';
    format_value(row, evaluate_bound(kind, use_cost, env, t, params));
    csv.row(row);
  }
}

void write_fit_csv(const PhenotypeReport& report, const std::string& path) {
  CsvWriter csv(path);
  csv.row("model,a,b,ssr,selected");
  for (const PhenotypeFit* fit : {&report.linear, &report.power, &report.log}) {
    std::string row = phenotype_name(fit->model);
    for (double v : {fit->a, fit->b, fit->ssr}) {
      row += ',';
      format_value(row, v);
    }
    row += ',';
    row += fit->model == report.selected ? '1' : '0';
    csv.row(row);
  }
}

void write_quantile_csv(const Eigen::VectorXd& alphas, double beta, const std::string& path) {
  CsvWriter csv(path);
  csv.row("alpha,lower,exact,upper,sandwich_ok");
  for (Eigen::Index k = 0; k < alphas.size(); ++k) {
    const QuantileBounds q = evaluate_quantile_bounds(alphas[k], beta);
    std::string row;
    format_value(row, q.alpha);
    for (double v : {q.lower, q.exact, q.upper}) {
      row += ',';
      format_value(row, v);
    }
    row += ',';
    row += q.sandwich_ok ? '1' : '0';
    csv.row(row);
  }
}

Eigen::VectorXd read_csv_column(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV file '" + path + "'");
  std::string header;
  if (!std::getline(in, header)) throw ConfigError("CSV file '" + path + "' is empty");
  int target = -1;
  {
    std::stringstream fields(header);
    std::string name;
    int index = 0;
    while (std::getline(fields, name, ',')) {
      if (name == column) {
        target = index;
        break;
      }
      ++index;
    }
  }
  if (target < 0)
    throw ConfigError("CSV file '" + path + "' has no column named '" + column + "'");
  std::vector<double> values;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream fields(line);
    std::string cell;
    int index = 0;
    bool found = false;
    while (std::getline(fields, cell, ',')) {
      if (index == target) {
        try {
          values.push_back(std::stod(cell));
        } catch (const std::exception&) {
          throw ConfigError("CSV file '" + path + "' line " + std::to_string(line_no) +
                            ": cannot parse '" + cell + "'");
        }
        found = true;
        break;
      }
      ++index;
    }
    if (!found)
      throw ConfigError("CSV file '" + path + "' line " + std::to_string(line_no) +
                        ": missing column " + std::to_string(target + 1));
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

ExperimentConfig phenotype_demo_config(bool correlated) {
  ExperimentConfig config;
  config.algorithm = Algorithm::stochastic_ucl;
  config.horizon = 90;
  config.replicates = 1;
  config.has_landscape = true;
  config.landscape = LandscapeId::B;
  config.shape = LandscapeShape::grid10x10;
  config.noise = NoiseModel::make_uniform(5);
  config.ucl.temperature = TemperatureMode::constant;
  config.temperature_given = true;
  if (correlated) {
    config.prior_mean_scalar = 200.0;
    config.prior.variance = 10.0;
    config.prior.correlation_length = 4.0;
    config.ucl.constant_temperature = 1.0;
  } else {
    config.prior_mean_scalar = 30.0;
    config.prior.variance = 1000.0;
    config.prior.correlation_length = 0.0;
    config.ucl.constant_temperature = 4.0;
  }
  return config;
}

PhenotypeDemo run_phenotype_demo(std::uint64_t seed) {
  PhenotypeDemo demo;
  for (bool correlated : {false, true}) {
    ExperimentConfig config = phenotype_demo_config(correlated);
    config.seed = seed;
    const Environment env = build_environment(config);
    const RunTrace trace = run_single(config, env, nullptr, 0);
    const Eigen::VectorXd observed = cumulative_observed_regret(env, trace);
    PhenotypeDemoCase result;
    result.report = fit_phenotype(observed);
    result.final_observed_regret = observed[observed.size() - 1];
    (correlated ? demo.tight_correlated : demo.wide_independent) = result;
  }
  return demo;
}

}  // namespace ucl
