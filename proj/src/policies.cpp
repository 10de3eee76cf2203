#include "ucl/policies.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ucl {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();

// inverse-cdf draw from a finite distribution; consumes one stream value
int draw_categorical(const Eigen::VectorXd& probabilities, RandomStream& stream) {
  const double u = stream.next_uniform();
  double acc = 0.0;
  const int n = static_cast<int>(probabilities.size());
  for (int i = 0; i < n; ++i) {
    acc += probabilities[i];
    if (u < acc) return i;
  }
  return n - 1;  // guard against accumulated rounding
}
}  // namespace

double credibility_alpha(std::int64_t t, const UclConfig& config) {
  if (t < 1) throw std::domain_error("credibility_alpha: t must be >= 1");
  if (config.credibility_exponent != 1 && config.credibility_exponent != 2)
    throw std::domain_error("credibility_exponent must be 1 or 2");
  const double tt = static_cast<double>(t);
  const double denom =
      config.credibility_scale * (config.credibility_exponent == 1 ? tt : tt * tt);
  const double alpha = 1.0 / denom;
  if (!(alpha > 0.0) || alpha >= 1.0)
    throw std::domain_error("credibility level fell outside (0,1); check the scale");
  return alpha;
}

double ucl_value(const BeliefState& belief, int arm, std::int64_t t, const UclConfig& config) {
  const double sdev = belief.sd(arm);
  if (std::isinf(sdev)) return inf;
  const double alpha = credibility_alpha(t, config);
  if (sdev == 0.0) return belief.mean(arm);
  return belief.mean(arm) + sdev * std_normal_upper_quantile(alpha);
}

Eigen::VectorXd ucl_values(const BeliefState& belief, std::int64_t t, const UclConfig& config) {
  const double alpha = credibility_alpha(t, config);
  const double quantile = std_normal_upper_quantile(alpha);
  const int n = belief.num_arms();
  Eigen::VectorXd values(n);
  for (int i = 0; i < n; ++i) {
    const double sdev = belief.sd(i);
    values[i] = std::isinf(sdev) ? inf : belief.mean(i) + sdev * quantile;
  }
  return values;
}

int argmax_smallest_index(const Eigen::VectorXd& values) {
  int best = 0;
  for (int i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

int choose_deterministic(const BeliefState& belief, std::int64_t t, const UclConfig& config) {
  return argmax_smallest_index(ucl_values(belief, t, config));
}

Eigen::VectorXd boltzmann_probabilities(const Eigen::VectorXd& values, double tau) {
  const int n = static_cast<int>(values.size());
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(n);
  const int infinite = static_cast<int>((values.array() == inf).count());
  if (infinite > 0) {
    for (int i = 0; i < n; ++i)
      if (values[i] == inf) probs[i] = 1.0 / infinite;
    return probs;
  }
  if (tau == 0.0) {
    probs[argmax_smallest_index(values)] = 1.0;
    return probs;
  }
  if (std::isinf(tau)) {
    probs.setConstant(1.0 / n);
    return probs;
  }
  const double top = values.maxCoeff();
  for (int i = 0; i < n; ++i) probs[i] = std::exp((values[i] - top) / tau);
  probs /= probs.sum();
  return probs;
}

double cooling_temperature(const Eigen::VectorXd& values, std::int64_t t) {
  if (t < 1) throw std::domain_error("cooling_temperature: t must be >= 1");
  if (t == 1) return inf;  // log 1 = 0: fully exploratory first step
  std::vector<double> finite;
  finite.reserve(values.size());
  for (double v : values)
    if (std::isfinite(v)) finite.push_back(v);
  if (finite.size() < 2) return 0.0;
  std::sort(finite.begin(), finite.end());
  double min_gap = inf;
  for (std::size_t i = 1; i < finite.size(); ++i)
    min_gap = std::min(min_gap, finite[i] - finite[i - 1]);
  if (min_gap == 0.0) return 0.0;
  return min_gap / (2.0 * std::log(static_cast<double>(t)));
}

int choose_stochastic(const BeliefState& belief, std::int64_t t, const UclConfig& config,
                      RandomStream& stream) {
  const Eigen::VectorXd values = ucl_values(belief, t, config);
  if (config.temperature == TemperatureMode::deterministic)
    return argmax_smallest_index(values);
  if ((values.array() == inf).any())
    return draw_categorical(boltzmann_probabilities(values, 1.0), stream);
  const double tau = config.temperature == TemperatureMode::cooling
                         ? cooling_temperature(values, t)
                         : config.constant_temperature;
  if (tau == 0.0) return argmax_smallest_index(values);
  return draw_categorical(boltzmann_probabilities(values, tau), stream);
}

BlockInfo block_schedule(std::int64_t t) {
  if (t < 1) throw std::domain_error("block_schedule: t must be >= 1");
  BlockInfo info;
  info.frame = std::bit_width(static_cast<std::uint64_t>(t));
  const std::int64_t frame_start = std::int64_t{1} << (info.frame - 1);
  const std::int64_t full_blocks = frame_start / info.frame;
  const std::int64_t offset = t - frame_start;
  const std::int64_t candidate = offset / info.frame;
  if (candidate < full_blocks) {
    info.block = candidate + 1;
    info.start = frame_start + candidate * info.frame;
    info.length = info.frame;
  } else {
    info.block = full_blocks + 1;
    info.start = frame_start + full_blocks * info.frame;
    info.length = frame_start - full_blocks * info.frame;
  }
  return info;
}

int choose_ucb1(const BeliefState& belief, std::int64_t t) {
  const int n = belief.num_arms();
  if (t < 1) throw std::domain_error("choose_ucb1: t must be >= 1");
  if (t <= n) return static_cast<int>(t - 1);  // initialization pass
  Eigen::VectorXd values(n);
  const double logt = std::log(static_cast<double>(t));
  for (int i = 0; i < n; ++i) {
    const auto pulls = belief.pulls(i);
    values[i] = pulls == 0 ? inf
                           : belief.empirical_mean(i) +
                                 std::sqrt(2.0 * logt / static_cast<double>(pulls));
  }
  return argmax_smallest_index(values);
}

namespace {

class DeterministicUclPolicy final : public Policy {
 public:
  DeterministicUclPolicy(BeliefState belief, UclConfig config)
      : belief_(std::move(belief)), config_(config) {}
  int select(std::int64_t t, RandomStream&) override {
    return choose_deterministic(belief_, t, config_);
  }
  void observe(int arm, double reward) override { belief_.update(arm, reward); }
  const BeliefState& belief() const override { return belief_; }

 private:
  BeliefState belief_;
  UclConfig config_;
};

class StochasticUclPolicy final : public Policy {
 public:
  StochasticUclPolicy(BeliefState belief, UclConfig config)
      : belief_(std::move(belief)), config_(config) {}
  int select(std::int64_t t, RandomStream& stream) override {
    return choose_stochastic(belief_, t, config_, stream);
  }
  void observe(int arm, double reward) override { belief_.update(arm, reward); }
  const BeliefState& belief() const override { return belief_; }

 private:
  BeliefState belief_;
  UclConfig config_;
};

class BlockUclPolicy final : public Policy {
 public:
  BlockUclPolicy(BeliefState belief, UclConfig config)
      : belief_(std::move(belief)), config_(config) {}
  int select(std::int64_t t, RandomStream&) override {
    const BlockInfo info = block_schedule(t);
    if (info.start != committed_start_) {
      // one decision per block, at the credibility level of its first step
      committed_arm_ = choose_deterministic(belief_, info.start, config_);
      committed_start_ = info.start;
    }
    return committed_arm_;
  }
  void observe(int arm, double reward) override { belief_.update(arm, reward); }
  const BeliefState& belief() const override { return belief_; }

 private:
  BeliefState belief_;
  UclConfig config_;
  std::int64_t committed_start_ = -1;
  int committed_arm_ = 0;
};

class GraphicalBlockUclPolicy final : public Policy {
 public:
  GraphicalBlockUclPolicy(BeliefState belief, UclConfig config, ShortestPathTable paths,
                          int start_arm)
      : belief_(std::move(belief)),
        config_(config),
        paths_(std::move(paths)),
        current_(start_arm) {
    if (paths_.num_nodes() != belief_.num_arms())
      throw std::invalid_argument("path table size does not match the number of arms");
    if (start_arm < 0 || start_arm >= belief_.num_arms())
      throw std::invalid_argument("graphical policy: start arm out of range");
  }

  int select(std::int64_t t, RandomStream&) override {
    if (pending_.empty()) plan(t);
    const int arm = pending_.front();
    pending_.pop_front();
    current_ = arm;
    return arm;
  }
  void observe(int arm, double reward) override { belief_.update(arm, reward); }
  const BeliefState& belief() const override { return belief_; }

 private:
  // Queue the walk to the next goal plus its selection block.  Only the goal
  // selections count against the frame; the walk itself is overhead whose
  // rewards are still observed.
  void plan(std::int64_t t) {
    const int goal = choose_deterministic(belief_, t, config_);
    for (int v : paths_.intermediaries(current_, goal)) pending_.push_back(v);
    const std::int64_t len = std::min(frame_, goals_left_);
    pending_.insert(pending_.end(), static_cast<std::size_t>(len), goal);
    goals_left_ -= len;
    if (goals_left_ == 0) {
      frame_ += 1;
      goals_left_ = std::int64_t{1} << (frame_ - 1);
    }
  }

  BeliefState belief_;
  UclConfig config_;
  ShortestPathTable paths_;
  int current_;
  std::int64_t frame_ = 1;
  std::int64_t goals_left_ = 1;
  std::deque<int> pending_;
};

class Ucb1Policy final : public Policy {
 public:
  explicit Ucb1Policy(BeliefState belief) : belief_(std::move(belief)) {}
  int select(std::int64_t t, RandomStream&) override { return choose_ucb1(belief_, t); }
  void observe(int arm, double reward) override { belief_.update(arm, reward); }
  const BeliefState& belief() const override { return belief_; }

 private:
  BeliefState belief_;
};

}  // namespace

std::unique_ptr<Policy> make_policy(Algorithm algorithm, BeliefState belief, UclConfig config) {
  switch (algorithm) {
    case Algorithm::deterministic_ucl:
      return std::make_unique<DeterministicUclPolicy>(std::move(belief), config);
    case Algorithm::stochastic_ucl:
      return std::make_unique<StochasticUclPolicy>(std::move(belief), config);
    case Algorithm::block_ucl:
      return std::make_unique<BlockUclPolicy>(std::move(belief), config);
    case Algorithm::graphical_block_ucl:
      throw std::invalid_argument("graphical_block_ucl needs make_graphical_policy");
    case Algorithm::ucb1:
      return std::make_unique<Ucb1Policy>(std::move(belief));
  }
  throw std::invalid_argument("unknown algorithm");
}

std::unique_ptr<Policy> make_graphical_policy(BeliefState belief, UclConfig config,
                                              const ShortestPathTable& paths, int start_arm) {
  return std::make_unique<GraphicalBlockUclPolicy>(std::move(belief), config, paths, start_arm);
}

}  // namespace ucl
