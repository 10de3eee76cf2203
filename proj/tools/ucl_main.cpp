#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "ucl/config.hpp"
#include "ucl/harness.hpp"
#include "ucl/normal.hpp"

namespace {

struct SimulateArgs {
  std::string config_path, out_path, arms_out;
  std::int64_t seed = 0, replicates = 0, horizon = 0;
  int threads = 0;
  bool seed_set = false, replicates_set = false, horizon_set = false;
};

struct BoundsArgs {
  std::string config_path, out_path, theorem, metric = "regret";
  int threads = 0;
};

struct FitArgs {
  std::string in_path, out_path, column = "regret";
};

struct QuantileArgs {
  std::string out_path;
  double alpha_min = 0, alpha_max = 0, beta = 1.02;
  int points = 0;
};

ucl::ExperimentConfig load_with_overrides(const SimulateArgs& args) {
  ucl::ExperimentConfig config = ucl::load_config_file(args.config_path);
  if (args.seed_set) config.seed = static_cast<std::uint64_t>(args.seed);
  if (args.replicates_set) {
    if (args.replicates < 1) throw ucl::ConfigError("--replicates must be at least 1");
    config.replicates = static_cast<int>(args.replicates);
  }
  if (args.horizon_set) {
    if (args.horizon < 1) throw ucl::ConfigError("--horizon must be at least 1");
    config.horizon = args.horizon;
  }
  return config;
}

int run_simulate(const SimulateArgs& args) {
  const ucl::ExperimentConfig config = load_with_overrides(args);
  const ucl::AggregateResult aggregate = ucl::run_experiment(config, args.threads);
  ucl::write_aggregate_csv(aggregate, args.out_path);
  if (!args.arms_out.empty()) ucl::write_arm_csv(aggregate, args.arms_out);
  return 0;
}

int run_bounds(const BoundsArgs& args) {
  if (args.metric != "regret" && args.metric != "cost")
    throw ucl::ConfigError("--metric must be regret or cost");
  const ucl::BoundKind kind = ucl::parse_bound_kind(args.theorem);
  const bool cost_metric = args.metric == "cost";
  const ucl::ExperimentConfig config = ucl::load_config_file(args.config_path);
  const ucl::Environment env = ucl::build_environment(config);
  const ucl::BoundParams params = ucl::bound_params(config, env);
  const ucl::AggregateResult aggregate = ucl::run_experiment(config, args.threads);
  ucl::write_bound_csv(aggregate, kind, cost_metric, env, params, args.out_path);
  return 0;
}

int run_fit(const FitArgs& args) {
  const Eigen::VectorXd series = ucl::read_csv_column(args.in_path, args.column);
  ucl::write_fit_csv(ucl::fit_phenotype(series), args.out_path);
  return 0;
}

int run_quantile(const QuantileArgs& args) {
  if (args.points < 1) throw ucl::ConfigError("--points must be at least 1");
  if (!(args.alpha_min > 0) || !(args.alpha_max >= args.alpha_min))
    throw std::domain_error("need 0 < alpha-min <= alpha-max");
  Eigen::VectorXd alphas(args.points);
  if (args.points == 1) {
    alphas[0] = args.alpha_min;
  } else {
    const double lo = std::log(args.alpha_min);
    const double hi = std::log(args.alpha_max);
    for (int k = 0; k < args.points; ++k)
      alphas[k] = std::exp(lo + (hi - lo) * k / (args.points - 1));
  }
  ucl::write_quantile_csv(alphas, args.beta, args.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian bandit simulator: credible-limit policies, bounds, and fits"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "run replicates, emit per-step aggregates");
  simulate->add_option("--config", sim.config_path, "experiment config file")->required();
  auto* seed_opt = simulate->add_option("--seed", sim.seed, "override the config seed");
  auto* rep_opt = simulate->add_option("--replicates", sim.replicates, "override replicate count");
  auto* hor_opt = simulate->add_option("--horizon", sim.horizon, "override the horizon");
  simulate->add_option("--threads", sim.threads, "worker threads, 0 = hardware");
  simulate->add_option("--out", sim.out_path, "per-step aggregate CSV")->required();
  simulate->add_option("--arms-out", sim.arms_out, "optional per-arm aggregate CSV");

  BoundsArgs bnd;
  CLI::App* bounds =
      app.add_subcommand("bounds", "run the experiment and emit its closed-form ceiling");
  bounds->add_option("--theorem", bnd.theorem, "bound token: lai, t2, t3, t5, or t6")->required();
  bounds->add_option("--config", bnd.config_path, "experiment config file")->required();
  bounds->add_option("--metric", bnd.metric, "regret (default) or cost (t5 only)");
  bounds->add_option("--threads", bnd.threads, "worker threads, 0 = hardware");
  bounds->add_option("--out", bnd.out_path, "comparison CSV")->required();

  FitArgs fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "classify a regret trajectory from a CSV column");
  fit_cmd->add_option("--in", fit.in_path, "input CSV with a header row")->required();
  fit_cmd->add_option("--col", fit.column, "column to fit (default regret)");
  fit_cmd->add_option("--out", fit.out_path, "fit summary CSV")->required();

  QuantileArgs quant;
  CLI::App* quantile =
      app.add_subcommand("quantile", "tabulate the upper-quantile envelope on an alpha grid");
  quantile->add_option("--alpha-min", quant.alpha_min, "smallest alpha")->required();
  quantile->add_option("--alpha-max", quant.alpha_max, "largest alpha")->required();
  quantile->add_option("--points", quant.points, "grid size, log-spaced")->required();
  quantile->add_option("--beta", quant.beta, "envelope factor, default 1.02");
  quantile->add_option("--out", quant.out_path, "CSV output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  sim.seed_set = seed_opt->count() > 0;
  sim.replicates_set = rep_opt->count() > 0;
  sim.horizon_set = hor_opt->count() > 0;

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (bounds->parsed()) return run_bounds(bnd);
    if (fit_cmd->parsed()) return run_fit(fit);
    if (quantile->parsed()) return run_quantile(quant);
  } catch (const ucl::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
