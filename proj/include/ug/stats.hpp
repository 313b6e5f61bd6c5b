#pragma once

namespace ug {

// Standard normal CDF.
double normal_cdf(double x);

// Inverse of the standard normal CDF (quantile function).
// Wichura's AS241 rational approximation, absolute error below 1e-9
// over p in (0,1); throws std::invalid_argument outside (0,1).
double inverse_normal_cdf(double p);

}  // namespace ug
