#pragma once

namespace ddgpce {

double normal_pdf(double x);

/// Standard normal CDF via the complementary error function.
double normal_cdf(double x);

/// Standard normal quantile: Wichura's AS241 rational approximation followed
/// by one Halley step against normal_cdf. Absolute error below 1e-12 on (0,1).
double normal_quantile(double p);

}  // namespace ddgpce
