#pragma once

namespace bbq {

// Regularized lower incomplete gamma P(shape, x).
double regularized_gamma_p(double shape, double x);

// Quantile of Gamma(shape, rate) at probability p, by bisection on
// regularized_gamma_p until the CDF is within `tolerance` of p.
// p = 0 yields 0 and p = 1 yields +infinity.
double gamma_quantile(double shape, double rate, double p, double tolerance = 1e-10);

}  // namespace bbq
