#pragma once

#include <cstdint>
#include <memory>

#include "ucl/graph.hpp"
#include "ucl/inference.hpp"
#include "ucl/random.hpp"

namespace ucl {

enum class Algorithm {
  deterministic_ucl,
  stochastic_ucl,
  block_ucl,
  graphical_block_ucl,
  ucb1,
};

enum class TemperatureMode { deterministic, cooling, constant };

struct UclConfig {
  // per-step credibility level alpha_t = 1 / (scale * t^exponent)
  double credibility_scale = default_credibility_scale;
  int credibility_exponent = 1;  // 1 is standard; 2 tightens the upper limits
  TemperatureMode temperature = TemperatureMode::deterministic;
  double constant_temperature = 0.0;  // used when temperature == constant
};

double credibility_alpha(std::int64_t t, const UclConfig& config);

// Upper credible limit mean + sd * quantile(1 - alpha_t); +inf for arms whose
// posterior is still flat.
double ucl_value(const BeliefState& belief, int arm, std::int64_t t, const UclConfig& config);
Eigen::VectorXd ucl_values(const BeliefState& belief, std::int64_t t, const UclConfig& config);

// Ties resolve to the smallest index.
int argmax_smallest_index(const Eigen::VectorXd& values);

int choose_deterministic(const BeliefState& belief, std::int64_t t, const UclConfig& config);

// Boltzmann selection law at temperature tau.  Infinite values dominate and
// split the mass equally; tau = 0 collapses onto the argmax; tau = +inf is
// uniform.
Eigen::VectorXd boltzmann_probabilities(const Eigen::VectorXd& values, double tau);

// Cooling schedule: smallest finite pairwise value gap over (2 log t).
// Returns +inf at t = 1 (uniform choice) and 0 on exact ties.
double cooling_temperature(const Eigen::VectorXd& values, std::int64_t t);

int choose_stochastic(const BeliefState& belief, std::int64_t t, const UclConfig& config,
                      RandomStream& stream);

// Doubling frames: frame k covers steps 2^(k-1) .. 2^k - 1 and is cut into
// blocks of length k plus a shorter remainder when k does not divide 2^(k-1).
struct BlockInfo {
  std::int64_t frame = 0;   // k, 1-based
  std::int64_t block = 0;   // index within the frame, 1-based
  std::int64_t start = 0;   // first step of the block
  std::int64_t length = 0;  // k, or the remainder length
};
BlockInfo block_schedule(std::int64_t t);

// Frequentist baseline: empirical mean + sqrt(2 log t / pulls) after one
// initialization pass (step t <= N plays arm t).
int choose_ucb1(const BeliefState& belief, std::int64_t t);

// Stateful selection rule; select must be called once per step with t
// ascending from 1, and observe once after each select.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual int select(std::int64_t t, RandomStream& stream) = 0;
  virtual void observe(int arm, double reward) = 0;
  virtual const BeliefState& belief() const = 0;
};

std::unique_ptr<Policy> make_policy(Algorithm algorithm, BeliefState belief, UclConfig config);

// Graph-constrained variant: walks a shortest path to each chosen goal arm and
// repeats the goal for the current block length.  Path selections do not
// advance the frame accounting; their rewards still update the belief.
std::unique_ptr<Policy> make_graphical_policy(BeliefState belief, UclConfig config,
                                              const ShortestPathTable& paths, int start_arm);

}  // namespace ucl
