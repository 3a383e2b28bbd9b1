#include "bbq/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bbq/errors.hpp"

namespace bbq {

namespace {

constexpr int kMaxTerms = 100000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// log(x^a e^-x / Gamma(a))
double log_prefactor(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

double lower_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxTerms; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return sum * std::exp(log_prefactor(a, x));
        }
    }
    throw NumericalError("incomplete gamma series did not converge");
}

// Upper tail Q(a, x) by modified Lentz evaluation of the continued fraction.
double upper_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int n = 1; n < kMaxTerms; ++n) {
        const double an = -n * (n - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) return std::exp(log_prefactor(a, x)) * h;
    }
    throw NumericalError("incomplete gamma continued fraction did not converge");
}

}  // namespace

double regularized_gamma_p(double shape, double x) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw std::domain_error("gamma shape must be positive and finite");
    }
    if (std::isnan(x)) throw std::domain_error("gamma argument is NaN");
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < shape + 1.0) return lower_series(shape, x);
    return 1.0 - upper_fraction(shape, x);
}

double gamma_quantile(double shape, double rate, double p, double tolerance) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw std::domain_error("gamma rate must be positive and finite");
    }
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability must lie in [0, 1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return std::numeric_limits<double>::infinity();

    double lo = 0.0;
    double hi = std::max(shape, 1.0);
    while (regularized_gamma_p(shape, hi) < p) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) throw NumericalError("gamma quantile bracket overflow");
    }
    double mid = 0.5 * (lo + hi);
    double cdf = 0.0;
    for (int it = 0; it < 2000; ++it) {
        mid = 0.5 * (lo + hi);
        cdf = regularized_gamma_p(shape, mid);
        if (cdf == p || hi - lo <= kEps * mid) break;
        if (cdf < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (!(std::abs(cdf - p) <= tolerance)) throw NumericalError("gamma quantile did not converge");
    return mid / rate;
}

}  // namespace bbq
