#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ucl/environment.hpp"
#include "ucl/inference.hpp"
#include "ucl/policies.hpp"

namespace ucl {

// Raised for malformed or inconsistent experiment configuration; the message
// names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CostKind { none, euclidean, manhattan };
enum class GraphKind { none, line, grid, complete, file };

// Parsed form of the flat key = value experiment description.  Arm indices in
// config files and emitted CSVs are 1-based; they are converted to 0-based
// here.
struct ExperimentConfig {
  Algorithm algorithm = Algorithm::deterministic_ucl;
  std::int64_t horizon = 100;
  int replicates = 1;
  std::uint64_t seed = 1;

  // environment: either a named landscape or explicit means
  bool has_landscape = false;
  LandscapeId landscape = LandscapeId::A;
  LandscapeShape shape = LandscapeShape::profile10;
  Eigen::VectorXd explicit_means;  // empty unless env.means / env.means_file given
  NoiseModel noise;
  CostKind costs = CostKind::none;
  GraphKind graph = GraphKind::none;
  std::string graph_file;

  // agent
  PriorSpec prior;  // scalar prior mean is broadcast when the belief is built
  double prior_mean_scalar = 0.0;
  double sampling_variance = -1.0;  // <0: adopt the environment noise variance
  int start_arm = 0;                // 0-based; used by the graph-constrained policy
  UclConfig ucl;
  bool temperature_given = false;
  double beta = 1.02;  // envelope factor for bound evaluation
};

// Parses config text / file.  Unknown keys, bad numbers, and inconsistent
// combinations raise ConfigError.  Later occurrences of a key win.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// One mean value per line, 1-based arm order.
Eigen::VectorXd load_means_file(const std::string& path);
// One edge "i j" per line, 1-based node ids.
Graph load_graph_file(const std::string& path, int num_nodes);

Environment build_environment(const ExperimentConfig& config);
double agent_sampling_variance(const ExperimentConfig& config, const Environment& env);
BeliefState build_belief(const ExperimentConfig& config, const Environment& env);

}  // namespace ucl
