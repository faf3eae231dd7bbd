#include "nomasec/params.hpp"

#include "nomasec/special.hpp"

#include <cmath>
#include <stdexcept>

namespace nomasec {

namespace {

void reject(const std::string& name, const std::string& rule) {
    throw std::invalid_argument("parameter " + name + ": " + rule);
}

} // namespace

std::vector<std::string> validate(const SystemParams& p) {
    std::vector<std::string> warnings;

    if (!(p.alpha > 1.0)) reject("alpha", "must be > 1 (interference sums diverge otherwise)");
    if (!(p.a0 > 0.0) || !(p.a1 > 0.0)) reject("a0/a1", "power coefficients must be positive");
    if (std::fabs(p.a0 + p.a1 - 1.0) > 1e-12) reject("a0+a1", "must equal 1");
    if (!(p.a0 < p.a1)) reject("a0", "must be < a1 (second user gets the larger power share)");
    if (!(p.b0 > 0.0) || !(p.b1 > 0.0)) reject("b0/b1", "pilot coefficients must be positive");
    if (p.d_attacker < 0.0) reject("d_attacker", "must be >= 0");

    const double ratio_sum = p.a0 / p.b0 + p.a1 / p.b1;
    if (!(p.d_attacker * p.a0 / p.b0 < ratio_sum))
        reject("d_attacker", "d*a0/b0 must be < a0/b0 + a1/b1 (attacker SINR denominator)");
    if (!(p.d_attacker * p.a1 / p.b1 < ratio_sum))
        reject("d_attacker", "d*a1/b1 must be < a0/b0 + a1/b1 (attacker SINR denominator)");

    if (p.lambda_b < 0.0) reject("lambda_b", "must be >= 0");
    if (p.lambda_u < 0.0) reject("lambda_u", "must be >= 0");
    if (p.lambda_e < 0.0) reject("lambda_e", "must be >= 0");
    if (p.lambda_b > 0.0) {
        if (p.lambda_u < 10.0 * p.lambda_b)
            reject("lambda_u", "must be >= 10 * lambda_b (full-load clustering)");
        if (p.lambda_u < 50.0 * p.lambda_b)
            warnings.push_back("lambda_u below 50x lambda_b; cells may run short of users");
    }

    if (p.r0 < 0.0) reject("r0", "must be >= 0");
    if (p.order_n < 1) reject("order_n", "must be a positive integer");
    if (p.order_u < 1) reject("order_u", "must be a positive integer");
    if (p.order_n > 20 || p.order_u > 20)
        warnings.push_back("Gamma orders above 20 gain nothing and stress the alternating sums");
    if (p.clusters_per_cell < 1) reject("clusters_per_cell", "must be a positive integer");
    if (p.rate_target0 < 0.0) reject("rate_target0", "must be >= 0");
    if (p.rate_target1 < 0.0) reject("rate_target1", "must be >= 0");
    if (!(p.region_side > 0.0)) reject("region_side", "must be > 0");

    if (!(p.m_antennas >= 1.0)) reject("m_antennas", "must be >= 1");
    if (!(p.p_data > 0.0)) reject("p_data", "must be > 0");
    if (!(p.p_pilot > 0.0)) reject("p_pilot", "must be > 0");
    if (p.noise_power < 0.0) reject("noise_power", "must be >= 0");

    return warnings;
}

DerivedConstants derived_constants(const SystemParams& p) {
    return {p.a0 / p.b0 + p.a1 / p.b1, alzer_factor(p.order_n), alzer_factor(p.order_u)};
}

} // namespace nomasec
