#pragma once

#include <Eigen/Dense>

#include "ucl/graph.hpp"
#include "ucl/random.hpp"

namespace ucl {

enum class NoiseKind { gaussian, uniform_integer };

struct NoiseModel {
  NoiseKind kind = NoiseKind::gaussian;
  double sd = 1.0;     // gaussian standard deviation
  int half_width = 5;  // uniform_integer support {-half_width, ..., half_width}

  static NoiseModel make_gaussian(double sd);
  static NoiseModel make_uniform(int half_width);
  double variance() const;
};

struct Environment {
  Eigen::VectorXd means;
  Eigen::MatrixXd positions;  // one row per arm; 0x0 when arms have no location
  NoiseModel noise;
  Eigen::MatrixXd costs;  // pairwise transition costs; 0x0 when unused
  Graph graph;            // selection constraint; empty when unconstrained

  int num_arms() const { return static_cast<int>(means.size()); }
  int best_arm() const;  // smallest index attaining the maximal mean
  double best_mean() const { return means.maxCoeff(); }
  Eigen::VectorXd gaps() const { return Eigen::VectorXd::Constant(means.size(), best_mean()) - means; }
};

enum class LandscapeId { A, B };
enum class LandscapeShape { profile10, grid10x10 };

// Ten-point reward profile over positions 1..10, mean 30, maximum 60.
// A: concave with its unique peak at position 6.
// B: local peaks at positions 1 and 10; the global peak is at 10.
Eigen::VectorXd landscape_profile(LandscapeId id);

// profile10: ten arms on a line.  grid10x10: one hundred arms on a 10x10
// lattice, the profile running along x and flat along y (row-major ids,
// x fastest).
Environment landscape(LandscapeId id, LandscapeShape shape);

enum class DistanceMetric { euclidean, manhattan };

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& positions,
                                   DistanceMetric metric = DistanceMetric::euclidean);
inline Eigen::MatrixXd distance_costs(const Eigen::MatrixXd& positions,
                                      DistanceMetric metric = DistanceMetric::euclidean) {
  return pairwise_distances(positions, metric);
}

// Draws one reward for the arm; consumes exactly one value from the stream.
double sample_reward(const Environment& env, int arm, RandomStream& stream);

}  // namespace ucl
