#include "ucl/normal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ucl {

namespace {

constexpr double sqrt2 = std::numbers::sqrt2;
constexpr double two_pi = 2.0 * std::numbers::pi;

// Rational approximation for the inverse normal cdf (Acklam's coefficients,
// relative error ~1.15e-9 before polishing).
double quantile_estimate(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// One Halley refinement of x against cdf(x) = p.  Only used for p <= 0.5
// where the cdf evaluation via erfc keeps full relative accuracy.
double polish(double x, double p) {
  const double err = std_normal_cdf(x) - p;
  if (err == 0.0) return x;
  const double half_sq = 0.5 * x * x;
  double step;  // err / pdf(x)
  if (half_sq < 700.0) {
    step = err * std::sqrt(two_pi) * std::exp(half_sq);
  } else {
    const double log_step = std::log(std::fabs(err)) + half_sq + 0.5 * std::log(two_pi);
    step = std::copysign(std::exp(log_step), err);
  }
  return x - step / (1.0 + 0.5 * x * step);
}

void check_bound_domain(double alpha) {
  if (!(alpha > 1e-12) || !(alpha < inv_sqrt_2pi - 1e-12))
    throw std::domain_error("quantile bound: alpha must lie in (0, 1/sqrt(2*pi)) "
                            "and at least 1e-12 from either end");
}

}  // namespace

double std_normal_pdf(double x) {
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / sqrt2);
}

double std_normal_survival(double x) {
  return 0.5 * std::erfc(x / sqrt2);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("std_normal_quantile: p must lie in (0,1)");
  if (p > 0.5) return -std_normal_quantile(1.0 - p);  // exact reflection
  return polish(quantile_estimate(p), p);
}

double std_normal_upper_quantile(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("std_normal_upper_quantile: alpha must lie in (0,1)");
  return -std_normal_quantile(alpha);
}

double quantile_upper_bound(double alpha, double beta) {
  check_bound_domain(alpha);
  const double x = two_pi * alpha * alpha;  // in (0,1)
  return beta * std::sqrt(-std::log(-x * std::log(x)));
}

double quantile_lower_bound(double alpha) {
  check_bound_domain(alpha);
  const double x = two_pi * alpha * alpha;
  return std::sqrt(-std::log(x * (1.0 - std::log(x))));
}

QuantileBounds evaluate_quantile_bounds(double alpha, double beta) {
  QuantileBounds out;
  out.alpha = alpha;
  out.beta = beta;
  out.lower = quantile_lower_bound(alpha);
  out.exact = std_normal_upper_quantile(alpha);
  out.upper = quantile_upper_bound(alpha, beta);
  out.sandwich_ok = out.lower < out.exact && out.exact < out.upper;
  return out;
}

}  // namespace ucl
