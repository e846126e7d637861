#pragma once

namespace realopt {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile for p in (0, 1).
///
/// Acklam's rational approximation (relative error 1.15e-9) followed by one
/// Halley step against erfc, which brings the absolute error below 1e-12 on
/// [1e-10, 1 - 1e-10]. Returns -inf / +inf at 0 / 1 and NaN outside [0, 1].
double inverse_normal_cdf(double p);

enum class QuantileMode {
    exact,         // full-precision inverse CDF
    paper_compat,  // exact quantile rounded to two decimals (1.64 at alpha = 0.05)
};

/// Upper-tail multiplier z with P(Z > z) = alpha. alpha must lie in (0, 0.5].
double upper_quantile(double alpha, QuantileMode mode);

}  // namespace realopt
