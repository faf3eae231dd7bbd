#include "nomasec/special.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>

namespace nomasec {

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("binomial: bad arguments");
    if (k > n - k) k = n - k;
    std::uint64_t c = 1;
    for (int i = 0; i < k; ++i) {
        c = c * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
    }
    return c;
}

double alzer_factor(int n) {
    if (n < 1) throw std::invalid_argument("alzer_factor: order must be >= 1");
    // n * (n!)^(-1/n), the sharpness constant of the (1 - e^(-eta x))^n lower
    // bound for the unit-mean Gamma(n) CDF. Via lgamma to dodge factorial
    // overflow.
    const double log_fact = std::lgamma(static_cast<double>(n) + 1.0);
    return n * std::exp(-log_fact / n);
}

double lower_gamma(double a, double x) {
    if (x == std::numeric_limits<double>::infinity()) return std::tgamma(a);
    if (x <= 0.0) return 0.0;
    return boost::math::tgamma_lower(a, x);
}

double interference_exclusion_integral(double kappa, double lower, double alpha) {
    if (alpha <= 1.0) throw std::invalid_argument("interference_exclusion_integral: alpha must be > 1");
    if (kappa < 0.0) throw std::invalid_argument("interference_exclusion_integral: kappa must be >= 0");
    if (kappa == 0.0) return 0.0;

    const double inv_a = 1.0 / alpha;
    const double shape = 1.0 - inv_a; // in (0,1) for alpha > 1

    if (lower <= 0.0) {
        // Whole-plane form: (kappa^(1/alpha)/2) * Gamma(1 - 1/alpha).
        return 0.5 * std::pow(kappa, inv_a) * std::tgamma(shape);
    }

    // Substituting t = kappa * s^(-2*alpha) turns the integral into an
    // incomplete-gamma expression with t0 = kappa * lower^(-2*alpha).
    const double t0 = kappa * pow_neg_2alpha(lower, alpha);
    if (!std::isfinite(t0)) {
        return 0.5 * std::pow(kappa, inv_a) * std::tgamma(shape);
    }
    const double bracket = lower_gamma(shape, t0) - (-std::expm1(-t0)) * std::pow(t0, -inv_a);
    // kappa^(1/alpha) = t0^(1/alpha) * lower^2; factored this way both powers
    // stay in range when t0 is denormal-small.
    return 0.5 * lower * lower * std::pow(t0, inv_a) * bracket;
}

double interference_exclusion_dintegral(double kappa, double lower, double alpha) {
    if (alpha <= 1.0) throw std::invalid_argument("interference_exclusion_dintegral: alpha must be > 1");
    if (kappa <= 0.0) throw std::invalid_argument("interference_exclusion_dintegral: kappa must be > 0");
    const double inv_a = 1.0 / alpha;
    const double shape = 1.0 - inv_a;
    double t0 = std::numeric_limits<double>::infinity();
    if (lower > 0.0) t0 = kappa * pow_neg_2alpha(lower, alpha);
    return std::pow(kappa, inv_a - 1.0) / (2.0 * alpha) * lower_gamma(shape, t0);
}

double pow_neg_2alpha(double r, double alpha) {
    const double two_alpha = 2.0 * alpha;
    const double rounded = std::nearbyint(two_alpha);
    if (rounded == two_alpha && rounded > 0 && rounded <= 64) {
        int e = static_cast<int>(rounded);
        double base = r, acc = 1.0;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return 1.0 / acc;
    }
    return std::pow(r, -two_alpha);
}

} // namespace nomasec
