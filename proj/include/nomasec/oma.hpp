#pragma once
// Massive MIMO-OMA (TDMA) baseline: each cluster user is served alone in half
// the time with the full data and pilot power. The user SINR collapses to the
// ordering statistic S itself, rates pick up a 1/2 time-share factor, and the
// outage thresholds double in the exponent. The attacker-side formulas follow
// from the same substitution (a = b = 1 for the served user, so the
// power-ratio sum becomes 1); this derived form is spelled out in README.

#include "nomasec/analytic.hpp"
#include "nomasec/params.hpp"

namespace nomasec {

struct OmaParams {
    SystemParams base;
};

// Requires d_attacker < 1 (the OMA attacker denominator analogue).
OmaParams make_oma(const SystemParams& p);

// (1/2) int (1 - F_ordered(2^t - 1)) dt; the OMA user's SINR is S itself.
AnalyticResult oma_ergodic_rate(UserKind kind, const OmaParams& p, const QuadratureSpec& spec);

// Leakage to the strongest attacker during the user's half slot. The value
// does not depend on which user is served (full power either way); the
// argument is kept for symmetry with the NOMA interface.
AnalyticResult oma_leakage(UserKind kind, const OmaParams& p, const QuadratureSpec& spec);

AnalyticResult oma_secrecy_rate(UserKind kind, const OmaParams& p, const QuadratureSpec& spec);

// Outage with rate targets doubled by the half-time slot.
AnalyticResult oma_sop_central(const OmaParams& p, const QuadratureSpec& spec);
AnalyticResult oma_sop_second(const OmaParams& p, const QuadratureSpec& spec);
AnalyticResult oma_sop(const OmaParams& p, const QuadratureSpec& spec);

namespace detail {
// The OMA attacker channel: ratio = 1/d.
AttackerChannel oma_attacker_channel(const SystemParams& p);
} // namespace detail

} // namespace nomasec
