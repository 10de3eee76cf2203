#include "ucl/inference.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ucl {

PriorSpec uninformative_prior(int num_arms) {
  PriorSpec prior;
  prior.mean = Eigen::VectorXd::Zero(num_arms);
  return prior;
}

PriorSpec make_exponential_prior(const Eigen::VectorXd& mean, double variance,
                                 double correlation_length) {
  if (!(variance > 0) || !std::isfinite(variance))
    throw std::invalid_argument("exponential prior needs finite variance > 0");
  if (correlation_length < 0)
    throw std::invalid_argument("correlation_length must be >= 0");
  PriorSpec prior;
  prior.mean = mean;
  prior.variance = variance;
  prior.correlation_length = correlation_length;
  return prior;
}

Eigen::MatrixXd exponential_covariance(const Eigen::MatrixXd& positions, double variance,
                                       double correlation_length, DistanceMetric metric) {
  if (!(variance > 0) || !std::isfinite(variance))
    throw std::invalid_argument("exponential_covariance needs finite variance > 0");
  const auto n = positions.rows();
  if (correlation_length == 0.0)
    return variance * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd dist = pairwise_distances(positions, metric);
  return variance * (-dist / correlation_length).array().exp().matrix();
}

double prior_quality(const PriorSpec& prior, const Eigen::VectorXd& true_means) {
  if (prior.uninformative())
    throw std::domain_error("prior_quality is undefined for an uninformative prior");
  if (prior.mean.size() != true_means.size())
    throw std::invalid_argument("prior_quality: dimension mismatch");
  return (true_means - prior.mean).cwiseAbs().maxCoeff() / std::sqrt(prior.variance);
}

BeliefState BeliefState::diagonal(Eigen::VectorXd prior_mean, double prior_variance,
                                  double sampling_variance) {
  if (!(sampling_variance > 0) || !std::isfinite(sampling_variance))
    throw std::invalid_argument("sampling_variance must be finite and > 0");
  if (!(prior_variance > 0))
    throw std::invalid_argument("prior_variance must be > 0 (or +inf for uninformative)");
  BeliefState b;
  b.full_ = false;
  b.sampling_variance_ = sampling_variance;
  b.prior_mean_ = std::move(prior_mean);
  b.counts_.assign(b.prior_mean_.size(), 0);
  b.empirical_means_ = Eigen::VectorXd::Zero(b.prior_mean_.size());
  b.prior_pseudocount_ = std::isinf(prior_variance) ? 0.0 : sampling_variance / prior_variance;
  return b;
}

BeliefState BeliefState::full(Eigen::VectorXd prior_mean, Eigen::MatrixXd prior_covariance,
                              double sampling_variance) {
  if (!(sampling_variance > 0) || !std::isfinite(sampling_variance))
    throw std::invalid_argument("sampling_variance must be finite and > 0");
  if (prior_covariance.rows() != prior_covariance.cols() ||
      prior_covariance.rows() != prior_mean.size())
    throw std::invalid_argument("prior covariance dimensions do not match the mean");
  if (!prior_covariance.allFinite())
    throw std::invalid_argument("correlated beliefs require a finite prior covariance");
  BeliefState b;
  b.full_ = true;
  b.sampling_variance_ = sampling_variance;
  b.prior_mean_ = std::move(prior_mean);
  b.counts_.assign(b.prior_mean_.size(), 0);
  b.empirical_means_ = Eigen::VectorXd::Zero(b.prior_mean_.size());
  Eigen::LLT<Eigen::MatrixXd> llt(prior_covariance);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("prior covariance is not positive definite");
  b.covariance_ = std::move(prior_covariance);
  b.precision_ =
      llt.solve(Eigen::MatrixXd::Identity(b.covariance_.rows(), b.covariance_.cols()));
  b.precision_ = 0.5 * (b.precision_ + b.precision_.transpose()).eval();
  b.information_ = b.precision_ * b.prior_mean_;
  b.posterior_mean_ = b.prior_mean_;
  return b;
}

void BeliefState::check_arm(int arm) const {
  if (arm < 0 || arm >= num_arms()) throw std::out_of_range("BeliefState: bad arm index");
}

void BeliefState::update(int arm, double reward) {
  check_arm(arm);
  if (!std::isfinite(reward)) throw std::invalid_argument("BeliefState: non-finite reward");
  counts_[arm] += 1;
  empirical_means_[arm] += (reward - empirical_means_[arm]) / static_cast<double>(counts_[arm]);
  if (!full_) return;

  // information accumulates exactly; covariance tracks it by rank-one downdate
  precision_(arm, arm) += 1.0 / sampling_variance_;
  information_[arm] += reward / sampling_variance_;
  const Eigen::VectorXd column = covariance_.col(arm);
  covariance_ -= column * column.transpose() / (sampling_variance_ + column[arm]);
  covariance_ = 0.5 * (covariance_ + covariance_.transpose()).eval();
  posterior_mean_ = covariance_ * information_;

#ifndef NDEBUG
  // the updated column of precision * covariance should still be a unit vector
  Eigen::VectorXd residual = precision_ * covariance_.col(arm);
  residual[arm] -= 1.0;
  assert(residual.cwiseAbs().maxCoeff() < 1e-6);
#endif
}

double BeliefState::mean(int arm) const {
  check_arm(arm);
  if (full_) return posterior_mean_[arm];
  const double weight = prior_pseudocount_ + static_cast<double>(counts_[arm]);
  if (weight == 0.0) return prior_mean_[arm];  // uninformative, unsampled
  return (prior_pseudocount_ * prior_mean_[arm] +
          static_cast<double>(counts_[arm]) * empirical_means_[arm]) /
         weight;
}

double BeliefState::variance(int arm) const {
  check_arm(arm);
  if (full_) return covariance_(arm, arm);
  const double weight = prior_pseudocount_ + static_cast<double>(counts_[arm]);
  if (weight == 0.0) return std::numeric_limits<double>::infinity();
  return sampling_variance_ / weight;
}

double BeliefState::sd(int arm) const { return std::sqrt(variance(arm)); }

Eigen::VectorXd BeliefState::means() const {
  if (full_) return posterior_mean_;
  Eigen::VectorXd out(num_arms());
  for (int i = 0; i < num_arms(); ++i) out[i] = mean(i);
  return out;
}

std::int64_t BeliefState::total_pulls() const {
  std::int64_t total = 0;
  for (auto c : counts_) total += c;
  return total;
}

const Eigen::MatrixXd& BeliefState::covariance() const {
  if (!full_) throw std::logic_error("covariance() requires a correlated belief");
  return covariance_;
}

const Eigen::MatrixXd& BeliefState::precision() const {
  if (!full_) throw std::logic_error("precision() requires a correlated belief");
  return precision_;
}

}  // namespace ucl
