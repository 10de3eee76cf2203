#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <vector>

#include "ucl/environment.hpp"

namespace ucl {

// Gaussian prior over the vector of arm means.  variance = +inf denotes the
// uninformative limit (only meaningful for independent arms).
struct PriorSpec {
  Eigen::VectorXd mean;
  double variance = std::numeric_limits<double>::infinity();
  double correlation_length = 0.0;  // 0 = independent arms

  bool uninformative() const { return std::isinf(variance); }
};

PriorSpec uninformative_prior(int num_arms);
PriorSpec make_exponential_prior(const Eigen::VectorXd& mean, double variance,
                                 double correlation_length);

// Dense covariance variance * exp(-dist(i,j)/correlation_length); length 0
// degenerates to variance * I.
Eigen::MatrixXd exponential_covariance(const Eigen::MatrixXd& positions, double variance,
                                       double correlation_length,
                                       DistanceMetric metric = DistanceMetric::euclidean);

// Worst normalized prior mis-specification max_i |m_i - mu0_i| / sigma0.
// Undefined (throws std::domain_error) for uninformative priors.
double prior_quality(const PriorSpec& prior, const Eigen::VectorXd& true_means);

// Conjugate posterior over arm means under known sampling variance.
//
// Independent mode keeps per-arm counts and empirical means; posterior
// moments come from the closed form with prior pseudo-count
// sampling_variance / prior_variance (zero in the uninformative limit, where
// unsampled arms report infinite variance).
//
// Correlated mode maintains the precision matrix and information vector
// exactly and the covariance by rank-one downdates, re-symmetrized each step;
// debug builds cross-check the two against each other.
class BeliefState {
 public:
  static BeliefState diagonal(Eigen::VectorXd prior_mean, double prior_variance,
                              double sampling_variance);
  static BeliefState full(Eigen::VectorXd prior_mean, Eigen::MatrixXd prior_covariance,
                          double sampling_variance);

  void update(int arm, double reward);

  int num_arms() const { return static_cast<int>(prior_mean_.size()); }
  bool is_full() const { return full_; }
  double sampling_variance() const { return sampling_variance_; }

  double mean(int arm) const;
  double variance(int arm) const;
  double sd(int arm) const;
  Eigen::VectorXd means() const;

  std::int64_t pulls(int arm) const { return counts_[arm]; }
  std::int64_t total_pulls() const;
  double empirical_mean(int arm) const { return empirical_means_[arm]; }

  // correlated mode only
  const Eigen::MatrixXd& covariance() const;
  const Eigen::MatrixXd& precision() const;

 private:
  BeliefState() = default;
  void check_arm(int arm) const;

  bool full_ = false;
  double sampling_variance_ = 1.0;
  Eigen::VectorXd prior_mean_;
  std::vector<std::int64_t> counts_;
  Eigen::VectorXd empirical_means_;

  // independent mode
  double prior_pseudocount_ = 0.0;  // sampling_variance / prior_variance

  // correlated mode
  Eigen::MatrixXd precision_;
  Eigen::VectorXd information_;  // precision * posterior mean
  Eigen::MatrixXd covariance_;
  Eigen::VectorXd posterior_mean_;
};

}  // namespace ucl
