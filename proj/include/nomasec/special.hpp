#pragma once
// Small special-function helpers shared by the analytic kernels.

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace nomasec {

// Exact binomial coefficient. Orders used here are small (<= 20), so the
// result is exact in 64-bit and in double.
std::uint64_t binomial(int n, int k);

// N * (N!)^(1/N), the sharpness factor of the Gamma-based CDF bound.
double alzer_factor(int n);

// Lower incomplete gamma, gamma(a, x) = int_0^x e^-t t^(a-1) dt,
// non-regularized. x may be +inf (returns Gamma(a)).
double lower_gamma(double a, double x);

// int_lower^inf (1 - exp(-kappa * s^(-2*alpha))) * s ds, the exclusion-zone
// interference integral. Closed form via lower_gamma; alpha > 1 required.
// lower == 0 is allowed.
double interference_exclusion_integral(double kappa, double lower, double alpha);

// d/d(kappa) of the integral above: int_lower^inf s^(-2a) e^(-kappa s^(-2a)) s ds.
double interference_exclusion_dintegral(double kappa, double lower, double alpha);

// r^(-2*alpha) with a fast path for integral 2*alpha (alpha=4 -> r^-8).
double pow_neg_2alpha(double r, double alpha);

// (d2)^(-alpha) where d2 is a squared distance; same quantity as above
// without the square root. Inlined: this sits inside the O(users x BSs)
// interference loops.
inline double pow2_neg_alpha(double d2, double alpha) {
    if (alpha == 4.0) {
        const double q = d2 * d2;
        return 1.0 / (q * q);
    }
    if (alpha == 2.0) return 1.0 / (d2 * d2);
    if (alpha == 3.0) return 1.0 / (d2 * d2 * d2);
    return 1.0 / std::pow(d2, alpha);
}

} // namespace nomasec
