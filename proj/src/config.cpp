#include "ucl/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace ucl {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  if (value == "inf" || value == "+inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse number '" + value + "'");
  }
}

std::int64_t parse_integer(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::int64_t x = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse integer '" + value + "'");
  }
}

Eigen::VectorXd parse_mean_list(const std::string& key, const std::string& value) {
  std::vector<double> values;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("config key '" + key + "': empty element in list");
    values.push_back(parse_number(key, item));
  }
  if (values.empty()) throw ConfigError("config key '" + key + "': empty list");
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

Eigen::VectorXd load_means_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open means file '" + path + "'");
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    values.push_back(parse_number(path + ":" + std::to_string(line_no), line));
  }
  if (values.empty()) throw ConfigError("means file '" + path + "' holds no values");
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Graph load_graph_file(const std::string& path, int num_nodes) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open graph file '" + path + "'");
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::stringstream stream(line);
    std::int64_t a = 0, b = 0;
    if (!(stream >> a >> b))
      throw ConfigError("graph file '" + path + "' line " + std::to_string(line_no) +
                        ": expected two node ids");
    std::string rest;
    if (stream >> rest)
      throw ConfigError("graph file '" + path + "' line " + std::to_string(line_no) +
                        ": trailing content '" + rest + "'");
    edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
  }
  try {
    return Graph::from_edges(num_nodes, edges);
  } catch (const std::exception& e) {
    throw ConfigError("graph file '" + path + "': " + e.what());
  }
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  bool noise_kind_given = false;
  bool sd_given = false, half_width_given = false;
  double noise_sd = 1.0;
  std::int64_t half_width = 5;
  bool start_given = false;
  std::int64_t start_arm_one_based = 1;
  std::string means_file;

  std::stringstream lines(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(lines, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");

    if (key == "algorithm") {
      if (value == "deterministic_ucl") config.algorithm = Algorithm::deterministic_ucl;
      else if (value == "stochastic_ucl") config.algorithm = Algorithm::stochastic_ucl;
      else if (value == "block_ucl") config.algorithm = Algorithm::block_ucl;
      else if (value == "graphical_block_ucl") config.algorithm = Algorithm::graphical_block_ucl;
      else if (value == "ucb1") config.algorithm = Algorithm::ucb1;
      else throw ConfigError("config key 'algorithm': unknown algorithm '" + value + "'");
    } else if (key == "horizon") {
      config.horizon = parse_integer(key, value);
    } else if (key == "replicates") {
      config.replicates = static_cast<int>(parse_integer(key, value));
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_integer(key, value));
    } else if (key == "env.landscape") {
      if (value == "A") config.landscape = LandscapeId::A;
      else if (value == "B") config.landscape = LandscapeId::B;
      else throw ConfigError("config key 'env.landscape': expected A or B, got '" + value + "'");
      config.has_landscape = true;
    } else if (key == "env.shape") {
      if (value == "profile10") config.shape = LandscapeShape::profile10;
      else if (value == "grid10x10") config.shape = LandscapeShape::grid10x10;
      else throw ConfigError("config key 'env.shape': unknown shape '" + value + "'");
    } else if (key == "env.means") {
      config.explicit_means = parse_mean_list(key, value);
    } else if (key == "env.means_file") {
      means_file = value;
    } else if (key == "env.noise") {
      if (value == "gaussian") config.noise.kind = NoiseKind::gaussian;
      else if (value == "uniform_integer") config.noise.kind = NoiseKind::uniform_integer;
      else throw ConfigError("config key 'env.noise': unknown noise model '" + value + "'");
      noise_kind_given = true;
    } else if (key == "env.noise_sd") {
      noise_sd = parse_number(key, value);
      sd_given = true;
    } else if (key == "env.noise_half_width") {
      half_width = parse_integer(key, value);
      half_width_given = true;
    } else if (key == "env.costs") {
      if (value == "none") config.costs = CostKind::none;
      else if (value == "euclidean" || value == "distance") config.costs = CostKind::euclidean;
      else if (value == "manhattan") config.costs = CostKind::manhattan;
      else throw ConfigError("config key 'env.costs': unknown cost rule '" + value + "'");
    } else if (key == "env.graph") {
      if (value == "none") config.graph = GraphKind::none;
      else if (value == "line") config.graph = GraphKind::line;
      else if (value == "grid") config.graph = GraphKind::grid;
      else if (value == "complete") config.graph = GraphKind::complete;
      else if (value == "file") config.graph = GraphKind::file;
      else throw ConfigError("config key 'env.graph': unknown graph kind '" + value + "'");
    } else if (key == "env.graph_file") {
      config.graph_file = value;
    } else if (key == "prior.mean") {
      config.prior_mean_scalar = parse_number(key, value);
    } else if (key == "prior.variance") {
      config.prior.variance = parse_number(key, value);
    } else if (key == "prior.length_scale") {
      config.prior.correlation_length = parse_number(key, value);
    } else if (key == "agent.sampling_variance") {
      config.sampling_variance = parse_number(key, value);
    } else if (key == "agent.start_arm") {
      start_arm_one_based = parse_integer(key, value);
      start_given = true;
    } else if (key == "ucl.scale") {
      config.ucl.credibility_scale = parse_number(key, value);
    } else if (key == "ucl.exponent") {
      config.ucl.credibility_exponent = static_cast<int>(parse_integer(key, value));
    } else if (key == "ucl.temperature") {
      if (value == "deterministic") config.ucl.temperature = TemperatureMode::deterministic;
      else if (value == "cooling") config.ucl.temperature = TemperatureMode::cooling;
      else if (value == "constant") config.ucl.temperature = TemperatureMode::constant;
      else throw ConfigError("config key 'ucl.temperature': unknown mode '" + value + "'");
      config.temperature_given = true;
    } else if (key == "ucl.constant_temperature") {
      config.ucl.constant_temperature = parse_number(key, value);
    } else if (key == "ucl.beta") {
      config.beta = parse_number(key, value);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  // assemble composite fields
  if (!means_file.empty()) {
    if (config.explicit_means.size() > 0)
      throw ConfigError("give either 'env.means' or 'env.means_file', not both");
    config.explicit_means = load_means_file(means_file);
  }
  const bool has_means = config.explicit_means.size() > 0;
  if (config.has_landscape == has_means)
    throw ConfigError(
        "environment needs exactly one of 'env.landscape' or 'env.means'/'env.means_file'");

  if (noise_kind_given || sd_given || half_width_given) {
    if (config.noise.kind == NoiseKind::gaussian) {
      if (half_width_given)
        throw ConfigError("config key 'env.noise_half_width' needs env.noise = uniform_integer");
      if (!(noise_sd > 0)) throw ConfigError("config key 'env.noise_sd': must be positive");
      config.noise = NoiseModel::make_gaussian(noise_sd);
    } else {
      if (sd_given) throw ConfigError("config key 'env.noise_sd' needs env.noise = gaussian");
      if (half_width < 0)
        throw ConfigError("config key 'env.noise_half_width': must be nonnegative");
      config.noise = NoiseModel::make_uniform(static_cast<int>(half_width));
    }
  }

  // validation
  if (config.horizon < 1) throw ConfigError("config key 'horizon': must be at least 1");
  if (config.replicates < 1) throw ConfigError("config key 'replicates': must be at least 1");
  if (!(config.prior.variance > 0))
    throw ConfigError("config key 'prior.variance': must be positive (or inf)");
  if (config.prior.correlation_length < 0)
    throw ConfigError("config key 'prior.length_scale': must be nonnegative");
  if (config.prior.uninformative() && config.prior.correlation_length > 0)
    throw ConfigError("config key 'prior.length_scale': needs a finite prior.variance");
  if (config.sampling_variance >= 0 && !(config.sampling_variance > 0))
    throw ConfigError("config key 'agent.sampling_variance': must be positive");
  if (!(config.ucl.credibility_scale > 0))
    throw ConfigError("config key 'ucl.scale': must be positive");
  if (config.ucl.credibility_exponent != 1 && config.ucl.credibility_exponent != 2)
    throw ConfigError("config key 'ucl.exponent': must be 1 or 2");
  if (config.ucl.constant_temperature < 0)
    throw ConfigError("config key 'ucl.constant_temperature': must be nonnegative");
  if (!(config.beta >= 1.02)) throw ConfigError("config key 'ucl.beta': must be at least 1.02");
  if (config.graph == GraphKind::file && config.graph_file.empty())
    throw ConfigError("config key 'env.graph_file': required when env.graph = file");
  if (config.graph != GraphKind::file && !config.graph_file.empty())
    throw ConfigError("config key 'env.graph_file': needs env.graph = file");
  if (config.algorithm == Algorithm::graphical_block_ucl && config.graph == GraphKind::none)
    throw ConfigError("algorithm graphical_block_ucl needs an 'env.graph'");

  const int num_arms = has_means ? static_cast<int>(config.explicit_means.size())
                                 : (config.shape == LandscapeShape::profile10 ? 10 : 100);
  if (config.graph == GraphKind::grid && !(config.has_landscape && config.shape == LandscapeShape::grid10x10))
    throw ConfigError("config key 'env.graph': grid needs env.shape = grid10x10");
  if (start_given) {
    if (start_arm_one_based < 1 || start_arm_one_based > num_arms)
      throw ConfigError("config key 'agent.start_arm': out of range 1.." +
                        std::to_string(num_arms));
  }
  config.start_arm = static_cast<int>(start_arm_one_based - 1);

  // algorithm-dependent default: the softmax policy cools unless told otherwise
  if (!config.temperature_given)
    config.ucl.temperature = config.algorithm == Algorithm::stochastic_ucl
                                 ? TemperatureMode::cooling
                                 : TemperatureMode::deterministic;
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

Environment build_environment(const ExperimentConfig& config) {
  Environment env;
  if (config.has_landscape) {
    env = landscape(config.landscape, config.shape);
  } else {
    env.means = config.explicit_means;
    // explicit means sit on a unit-spaced line so distance costs stay defined
    env.positions.resize(env.means.size(), 1);
    for (Eigen::Index i = 0; i < env.means.size(); ++i)
      env.positions(i, 0) = static_cast<double>(i + 1);
  }
  env.noise = config.noise;

  if (config.costs != CostKind::none) {
    const DistanceMetric metric =
        config.costs == CostKind::manhattan ? DistanceMetric::manhattan : DistanceMetric::euclidean;
    env.costs = distance_costs(env.positions, metric);
  }

  const int n = env.num_arms();
  switch (config.graph) {
    case GraphKind::none: break;
    case GraphKind::line: env.graph = Graph::line(n); break;
    case GraphKind::grid: env.graph = Graph::grid(10, 10); break;
    case GraphKind::complete: env.graph = Graph::complete(n); break;
    case GraphKind::file: env.graph = load_graph_file(config.graph_file, n); break;
  }
  return env;
}

double agent_sampling_variance(const ExperimentConfig& config, const Environment& env) {
  if (config.sampling_variance > 0) return config.sampling_variance;
  const double v = env.noise.variance();
  if (v <= 0)
    throw ConfigError(
        "agent.sampling_variance must be set explicitly when the environment noise is zero");
  return v;
}

BeliefState build_belief(const ExperimentConfig& config, const Environment& env) {
  const int n = env.num_arms();
  const double sv = agent_sampling_variance(config, env);
  const Eigen::VectorXd mu0 = Eigen::VectorXd::Constant(n, config.prior_mean_scalar);
  if (config.prior.uninformative() || config.prior.correlation_length == 0.0)
    return BeliefState::diagonal(mu0, config.prior.variance, sv);
  const Eigen::MatrixXd sigma0 =
      exponential_covariance(env.positions, config.prior.variance, config.prior.correlation_length);
  return BeliefState::full(mu0, sigma0, sv);
}

}  // namespace ucl
