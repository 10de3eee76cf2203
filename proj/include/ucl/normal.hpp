#pragma once

namespace ucl {

// 1/sqrt(2*pi), the peak density of the standard normal
inline constexpr double inv_sqrt_2pi = 0.39894228040143267794;
// sqrt(2*pi*e), default scale for the per-step credibility level 1/(scale*t)
inline constexpr double default_credibility_scale = 4.1327313541224929385;

double std_normal_pdf(double x);

// Absolute error below 1e-12 on the whole real line.
double std_normal_cdf(double x);

// Upper tail probability P(X > x); keeps relative accuracy for large x.
double std_normal_survival(double x);

// Inverse cdf on (0,1).  Rational initial estimate polished with one Halley
// step against erfc, giving near machine precision.  Throws std::domain_error
// outside (0,1).
double std_normal_quantile(double p);

// Quantile of level 1-alpha computed from alpha directly, so tiny tail
// probabilities do not lose precision to the subtraction 1-alpha.
double std_normal_upper_quantile(double alpha);

// Closed-form envelope around std_normal_upper_quantile(alpha), valid for
// alpha in (0, 1/sqrt(2*pi)).  The upper envelope carries the inflation
// factor beta; the guarantee needs beta >= 1.02 (beta = 1 fails for small
// alpha), smaller values are accepted so the failure region can be probed.
// Alpha within 1e-12 of either end of the interval is a domain error.
double quantile_upper_bound(double alpha, double beta);
double quantile_lower_bound(double alpha);

struct QuantileBounds {
  double alpha = 0;
  double beta = 0;
  double lower = 0;
  double exact = 0;
  double upper = 0;
  bool sandwich_ok = false;  // lower < exact < upper
};

QuantileBounds evaluate_quantile_bounds(double alpha, double beta);

}  // namespace ucl
