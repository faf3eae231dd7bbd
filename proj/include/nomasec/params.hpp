#pragma once
// Model parameters for the multi-cell massive MIMO-NOMA downlink with
// pilot-contaminating attackers, plus the constants derived from them.

#include <string>
#include <vector>

namespace nomasec {

struct SystemParams {
    double alpha = 4.0; // path-loss exponent; distances enter as r^(-2*alpha)

    // Downlink power split between the two NOMA users (a0 + a1 = 1, a0 < a1).
    double a0 = 0.4;
    double a1 = 0.6;
    // Pilot power coefficients of the two users in a cluster.
    double b0 = 0.4;
    double b1 = 0.6;
    // Pilot power fraction an attacker spends on the tagged cluster's pilot.
    double d_attacker = 0.2;

    // Node densities, per m^2.
    double lambda_b = 3.1622776601683794e-4; // base stations (10^-3.5)
    double lambda_u = 3.1622776601683794e-2; // users, default 100 * lambda_b
    double lambda_e = 3.1622776601683795e-5; // attackers (10^-4.5)

    double r0 = 6.0; // eavesdropper-free radius around each BS, m

    int order_n = 7; // Gamma/Alzer order for the user interference CDF
    int order_u = 7; // Gamma/Alzer order for the attacker SINR CDF

    int clusters_per_cell = 5;

    // Target secrecy rates, bits per channel use.
    double rate_target0 = 1.5;
    double rate_target1 = 0.5;

    double region_side = 3000.0; // simulation square side, m

    // Used only by the finite-antenna-count SINR formula.
    double m_antennas = 1000.0;
    double p_data = 1.0;
    double p_pilot = 1.0;
    double noise_power = 1e-6;
};

struct DerivedConstants {
    double power_ratio_sum; // a0/b0 + a1/b1
    double eta;             // N * (N!)^(1/N)
    double eta_tilde;       // U * (U!)^(1/U)
};

// Throws std::invalid_argument naming the parameter and the violated rule.
// Returns non-fatal warnings (e.g. lambda_u below the comfortable full-load
// margin).
std::vector<std::string> validate(const SystemParams& p);

DerivedConstants derived_constants(const SystemParams& p);

} // namespace nomasec
