#include "ucl/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ucl {

namespace {

void check_trace(const Environment& env, const RunTrace& trace) {
  if (trace.rewards.size() != static_cast<Eigen::Index>(trace.arms.size()))
    throw std::invalid_argument("trace arms and rewards differ in length");
  for (int arm : trace.arms)
    if (arm < 0 || arm >= env.num_arms()) throw std::out_of_range("trace refers to an unknown arm");
}

void check_horizon(double horizon) {
  if (!(horizon > 1.0)) throw std::domain_error("bound horizon must exceed 1");
}

}  // namespace

Eigen::VectorXd cumulative_expected_regret(const Environment& env, const RunTrace& trace) {
  check_trace(env, trace);
  const Eigen::VectorXd gap = env.gaps();
  Eigen::VectorXd out(trace.horizon());
  double sum = 0;
  for (std::int64_t k = 0; k < trace.horizon(); ++k) {
    sum += gap[trace.arms[k]];
    out[k] = sum;
  }
  return out;
}

Eigen::VectorXd cumulative_observed_regret(const Environment& env, const RunTrace& trace) {
  check_trace(env, trace);
  const double best = env.best_mean();
  Eigen::VectorXd out(trace.horizon());
  double reward_sum = 0;
  for (std::int64_t k = 0; k < trace.horizon(); ++k) {
    reward_sum += trace.rewards[k];
    out[k] = best * static_cast<double>(k + 1) - reward_sum;
  }
  return out;
}

Eigen::VectorXd cumulative_transition_cost(const Environment& env, const RunTrace& trace) {
  check_trace(env, trace);
  if (env.costs.size() == 0) throw std::logic_error("environment defines no transition costs");
  Eigen::VectorXd out(trace.horizon());
  double sum = 0;
  for (std::int64_t k = 0; k < trace.horizon(); ++k) {
    if (k > 0) sum += env.costs(trace.arms[k - 1], trace.arms[k]);
    out[k] = sum;
  }
  return out;
}

Eigen::VectorXi pull_counts(const RunTrace& trace, int num_arms) {
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(num_arms);
  for (int arm : trace.arms) {
    if (arm < 0 || arm >= num_arms) throw std::out_of_range("trace refers to an unknown arm");
    ++counts[arm];
  }
  return counts;
}

std::int64_t switch_count(const RunTrace& trace) {
  std::int64_t switches = 0;
  for (std::size_t k = 1; k < trace.arms.size(); ++k)
    if (trace.arms[k] != trace.arms[k - 1]) ++switches;
  return switches;
}

Eigen::VectorXi entry_counts(const RunTrace& trace, int num_arms) {
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(num_arms);
  for (std::size_t k = 1; k < trace.arms.size(); ++k)
    if (trace.arms[k] != trace.arms[k - 1]) ++counts[trace.arms[k]];
  return counts;
}

Eigen::VectorXd bound_lai_robbins(const Environment& env, double sampling_sd, double horizon) {
  if (!(horizon >= 1.0)) throw std::domain_error("bound horizon must be at least 1");
  const Eigen::VectorXd gap = env.gaps();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(env.num_arms());
  for (int i = 0; i < env.num_arms(); ++i)
    if (gap[i] > 0)
      out[i] = 2.0 * sampling_sd * sampling_sd / (gap[i] * gap[i]) * std::log(horizon);
  return out;
}

double bound_lai_robbins_regret(const Environment& env, double sampling_sd, double horizon) {
  return env.gaps().dot(bound_lai_robbins(env, sampling_sd, horizon));
}

Eigen::VectorXd bound_deterministic_pulls(const Environment& env, double horizon,
                                          const BoundParams& params) {
  check_horizon(horizon);
  const double log_t = std::log(horizon);
  const double log_log_t = std::log(log_t);
  const double bs = params.beta * params.beta * params.sampling_sd * params.sampling_sd;
  const double k_term = 2.0 / params.credibility_scale;
  const Eigen::VectorXd gap = env.gaps();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(env.num_arms());
  for (int i = 0; i < env.num_arms(); ++i) {
    if (gap[i] <= 0) continue;
    const double d2 = gap[i] * gap[i];
    out[i] = (8.0 * bs / d2 + k_term) * log_t +
             4.0 * bs / d2 * (1.0 - std::numbers::ln2 - log_log_t) + 1.0 + k_term;
  }
  return out;
}

double bound_deterministic_regret(const Environment& env, double horizon,
                                  const BoundParams& params) {
  return env.gaps().dot(bound_deterministic_pulls(env, horizon, params));
}

Eigen::VectorXd bound_stochastic_pulls(const Environment& env, double horizon,
                                       const BoundParams& params) {
  Eigen::VectorXd out = bound_deterministic_pulls(env, horizon, params);
  const double extra = std::numbers::pi * std::numbers::pi / 6.0;
  const Eigen::VectorXd gap = env.gaps();
  for (int i = 0; i < env.num_arms(); ++i)
    if (gap[i] > 0) out[i] += extra;
  return out;
}

double bound_stochastic_regret(const Environment& env, double horizon, const BoundParams& params) {
  return env.gaps().dot(bound_stochastic_pulls(env, horizon, params));
}

GammaConstants block_gamma_constants(double gap, const BoundParams& params) {
  if (!(gap > 0)) throw std::domain_error("gamma constants need a positive gap");
  const double bs = params.beta * params.beta * params.sampling_sd * params.sampling_sd;
  const double d2 = gap * gap;
  const double K = params.credibility_scale;
  const double ln2 = std::numbers::ln2;
  const double log_log_2 = std::log(ln2);  // negative
  GammaConstants g;
  g.g1 = 8.0 * bs / d2 + 1.0 / ln2 + 2.0 / K;
  g.g2 = 4.0 * bs / d2 * (1.0 - ln2) + 2.0 + 8.0 / K + std::log(4.0) / K;
  g.g3 = g.g1 * ln2 * (2.0 - log_log_2) -
         (4.0 * bs / d2 * log_log_2 - g.g2) * (1.0 + std::numbers::pi * std::numbers::pi / 6.0);
  return g;
}

BlockBound bound_block(const Environment& env, double horizon, const BoundParams& params) {
  check_horizon(horizon);
  const double log_t = std::log(horizon);
  const double log_log_t = std::log(log_t);
  const double bs = params.beta * params.beta * params.sampling_sd * params.sampling_sd;
  const Eigen::VectorXd gap = env.gaps();
  const int n = env.num_arms();

  BlockBound bound;
  bound.pulls = Eigen::VectorXd::Zero(n);
  bound.entries = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (gap[i] <= 0) continue;
    const GammaConstants g = block_gamma_constants(gap[i], params);
    bound.pulls[i] = g.g1 * log_t - 4.0 * bs / (gap[i] * gap[i]) * log_log_t + g.g2;
    bound.entries[i] = g.g1 * std::numbers::ln2 * log_log_t + g.g3;
    bound.regret_total += gap[i] * bound.pulls[i];
  }

  if (env.costs.size() != 0) {
    const Eigen::VectorXd worst_cost = env.costs.rowwise().maxCoeff();
    const int best = env.best_arm();
    bound.cost_total = worst_cost[best];
    for (int i = 0; i < n; ++i)
      if (gap[i] > 0) bound.cost_total += (worst_cost[i] + worst_cost[best]) * bound.entries[i];
  }
  return bound;
}

GraphicalBound bound_graphical(const Environment& env, double horizon, const BoundParams& params) {
  const BlockBound block = bound_block(env, horizon, params);
  // every suboptimal arm additionally absorbs up to two path visits per entry
  const double transient = 2.0 * block.entries.sum() + 1.0;
  const Eigen::VectorXd gap = env.gaps();
  GraphicalBound bound;
  bound.pulls = Eigen::VectorXd::Zero(env.num_arms());
  for (int i = 0; i < env.num_arms(); ++i) {
    if (gap[i] <= 0) continue;
    bound.pulls[i] = block.pulls[i] + transient;
    bound.regret_total += gap[i] * bound.pulls[i];
  }
  return bound;
}

const char* phenotype_name(PhenotypeModel model) {
  switch (model) {
    case PhenotypeModel::linear: return "linear";
    case PhenotypeModel::power: return "power";
    case PhenotypeModel::log: return "log";
  }
  return "unknown";
}

const PhenotypeFit& PhenotypeReport::best() const {
  switch (selected) {
    case PhenotypeModel::power: return power;
    case PhenotypeModel::log: return log;
    default: return linear;
  }
}

namespace {

PhenotypeFit least_squares_line(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                PhenotypeModel model) {
  const double xbar = x.mean();
  const double ybar = y.mean();
  const double sxx = (x.array() - xbar).matrix().squaredNorm();
  const double sxy = (x.array() - xbar).matrix().dot((y.array() - ybar).matrix());
  PhenotypeFit fit;
  fit.model = model;
  fit.b = sxx > 0 ? sxy / sxx : 0.0;
  fit.a = ybar - fit.b * xbar;
  fit.ssr = (y.array() - fit.a - fit.b * x.array()).matrix().squaredNorm();
  return fit;
}

double power_ssr(const Eigen::VectorXd& t, const Eigen::VectorXd& y, double b, double* amplitude) {
  const Eigen::ArrayXd w = t.array().pow(b);
  const double den = (w * w).sum();
  const double a = den > 0 ? (y.array() * w).sum() / den : 0.0;
  if (amplitude) *amplitude = a;
  return (y.array() - a * w).matrix().squaredNorm();
}

PhenotypeFit fit_power(const Eigen::VectorXd& t, const Eigen::VectorXd& y) {
  constexpr double inv_phi = 0.6180339887498949;
  double lo = 0.05, hi = 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = power_ssr(t, y, c, nullptr);
  double fd = power_ssr(t, y, d, nullptr);
  for (int iter = 0; iter < 120 && hi - lo > 1e-14; ++iter) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = power_ssr(t, y, c, nullptr);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = power_ssr(t, y, d, nullptr);
    }
  }
  PhenotypeFit fit;
  fit.model = PhenotypeModel::power;
  fit.b = 0.5 * (lo + hi);
  fit.ssr = power_ssr(t, y, fit.b, &fit.a);
  return fit;
}

}  // namespace

PhenotypeReport fit_phenotype(const Eigen::VectorXd& regret) {
  const Eigen::Index n = regret.size();
  if (n < 3) throw std::invalid_argument("phenotype fit needs at least 3 points");
  const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(n, 1.0, static_cast<double>(n));
  PhenotypeReport report;
  report.linear = least_squares_line(t, regret, PhenotypeModel::linear);
  report.power = fit_power(t, regret);
  report.log = least_squares_line(t.array().log().matrix(), regret, PhenotypeModel::log);
  report.selected = PhenotypeModel::linear;
  double best = report.linear.ssr;
  if (report.power.ssr < best) {
    best = report.power.ssr;
    report.selected = PhenotypeModel::power;
  }
  if (report.log.ssr < best) report.selected = PhenotypeModel::log;
  return report;
}

}  // namespace ucl
