#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ucl/environment.hpp"
#include "ucl/normal.hpp"

namespace ucl {

// Completed run: the arm chosen and the reward received at steps t = 1..T.
struct RunTrace {
  std::vector<int> arms;
  Eigen::VectorXd rewards;
  std::int64_t horizon() const { return static_cast<std::int64_t>(arms.size()); }
};

// Partial sums of the per-step mean shortfall best_mean - mean(chosen arm).
Eigen::VectorXd cumulative_expected_regret(const Environment& env, const RunTrace& trace);

// best_mean * t minus the realized reward sum; lucky draws can push it negative.
Eigen::VectorXd cumulative_observed_regret(const Environment& env, const RunTrace& trace);

// Partial sums of costs(previous arm, next arm); the first step is free.
Eigen::VectorXd cumulative_transition_cost(const Environment& env, const RunTrace& trace);

Eigen::VectorXi pull_counts(const RunTrace& trace, int num_arms);

// Steps whose arm differs from the previous one.
std::int64_t switch_count(const RunTrace& trace);

// Per arm: how often it was entered from a different arm.
Eigen::VectorXi entry_counts(const RunTrace& trace, int num_arms);

// Constants shared by the closed-form performance ceilings below.  beta is the
// credible-quantile envelope factor; credibility_scale is the K in the per-step
// level alpha_t = 1/(K t).
struct BoundParams {
  double beta = 1.02;
  double sampling_sd = 1.0;
  double credibility_scale = default_credibility_scale;
};

// Asymptotic per-arm pull floor (2 sd^2 / gap^2) log T.  Arms at the optimum
// contribute zero here and in every ceiling below; the vanishing correction
// term of the asymptotic statement is dropped.
Eigen::VectorXd bound_lai_robbins(const Environment& env, double sampling_sd, double horizon);
double bound_lai_robbins_regret(const Environment& env, double sampling_sd, double horizon);

// Expected-pull / expected-regret ceilings for the per-step policies with a
// flat prior.  horizon is real-valued and must exceed 1 so log log is defined.
Eigen::VectorXd bound_deterministic_pulls(const Environment& env, double horizon,
                                          const BoundParams& params = {});
double bound_deterministic_regret(const Environment& env, double horizon,
                                  const BoundParams& params = {});

// The softmax variant pays an extra pi^2/6 pulls per suboptimal arm.
Eigen::VectorXd bound_stochastic_pulls(const Environment& env, double horizon,
                                       const BoundParams& params = {});
double bound_stochastic_regret(const Environment& env, double horizon,
                               const BoundParams& params = {});

// Slow-growth constants of the block-policy analysis; gap must be positive.
struct GammaConstants {
  double g1 = 0;  // log T coefficient of the pull ceiling
  double g2 = 0;  // its constant term
  double g3 = 0;  // constant term of the entry ceiling
};
GammaConstants block_gamma_constants(double gap, const BoundParams& params = {});

struct BlockBound {
  Eigen::VectorXd pulls;    // per-arm expected-pull ceiling
  Eigen::VectorXd entries;  // per-arm ceiling on entries from other arms
  double regret_total = 0;
  double cost_total = 0;  // zero when the environment defines no costs
};
BlockBound bound_block(const Environment& env, double horizon, const BoundParams& params = {});

struct GraphicalBound {
  Eigen::VectorXd pulls;
  double regret_total = 0;
};
GraphicalBound bound_graphical(const Environment& env, double horizon,
                               const BoundParams& params = {});

// Regret-trajectory shape classification.  The three candidate models are
//   linear: a + b t,  power: a t^b,  log: a + b log t,
// fitted by least squares; the winner has the smallest squared-residual sum,
// ties resolving in the order linear, power, log.
enum class PhenotypeModel { linear, power, log };

const char* phenotype_name(PhenotypeModel model);

struct PhenotypeFit {
  PhenotypeModel model = PhenotypeModel::linear;
  double a = 0;
  double b = 0;
  double ssr = 0;
};

struct PhenotypeReport {
  PhenotypeFit linear;
  PhenotypeFit power;
  PhenotypeFit log;
  PhenotypeModel selected = PhenotypeModel::linear;
  const PhenotypeFit& best() const;
};

// regret[k] is the trajectory value at t = k + 1; needs at least 3 points.
// The linear and log fits are closed-form least squares; the power exponent is
// found by golden-section search on [0.05, 2] with its amplitude closed-form.
PhenotypeReport fit_phenotype(const Eigen::VectorXd& regret);

}  // namespace ucl
