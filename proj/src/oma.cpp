#include "nomasec/oma.hpp"

#include "nomasec/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nomasec {

namespace detail {

AttackerChannel oma_attacker_channel(const SystemParams& p) {
    if (!(p.d_attacker > 0.0))
        throw std::invalid_argument("oma_attacker_channel: d_attacker must be > 0 here");
    AttackerChannel ch;
    ch.ratio = 1.0 / p.d_attacker; // R_eff = 1, vtilde = 1 under the substitution
    if (!(ch.ratio > 1.0))
        throw std::invalid_argument("oma_attacker_channel: d_attacker must be < 1");
    ch.lambda_b = p.lambda_b;
    ch.lambda_e = p.lambda_e;
    ch.r0 = p.r0;
    ch.alpha = p.alpha;
    ch.order_u = p.order_u;
    ch.eta_tilde = alzer_factor(p.order_u);
    return ch;
}

} // namespace detail

OmaParams make_oma(const SystemParams& p) {
    if (!(p.d_attacker < 1.0))
        throw std::invalid_argument("parameter d_attacker: must be < 1 for the OMA baseline");
    return {p};
}

AnalyticResult oma_ergodic_rate(UserKind kind, const OmaParams& p, const QuadratureSpec& spec) {
    auto integrand = [&](double t) {
        return 1.0 - cdf_S_ordered(std::exp2(t) - 1.0, kind, p.base);
    };
    const QuadResult q =
        integrate_until_negligible(integrand, 0.0, spec, "OMA rate integral");
    return {0.5 * q.value, 0.5 * q.abs_error};
}

AnalyticResult oma_leakage(UserKind, const OmaParams& p, const QuadratureSpec& spec) {
    if (p.base.lambda_e == 0.0 || p.base.d_attacker == 0.0) return {0.0, 0.0};
    const AnalyticResult full = detail::leakage_chan(detail::oma_attacker_channel(p.base), spec);
    return {0.5 * full.value, 0.5 * full.abs_error};
}

AnalyticResult oma_secrecy_rate(UserKind kind, const OmaParams& p, const QuadratureSpec& spec) {
    const AnalyticResult rate = oma_ergodic_rate(kind, p, spec);
    const AnalyticResult leak = oma_leakage(kind, p, spec);
    return {std::max(0.0, rate.value - leak.value), rate.abs_error + leak.abs_error};
}

namespace {

AnalyticResult oma_sop_user(UserKind kind, const OmaParams& p, const QuadratureSpec& spec) {
    const SystemParams& b = p.base;
    const double target = kind == UserKind::central ? b.rate_target0 : b.rate_target1;
    const double gain = std::exp2(2.0 * target); // doubled by the half-time slot
    auto threshold = [gain](double z) { return gain * (1.0 + z) - 1.0; };
    auto threshold_d = [gain](double) { return gain; };

    if (b.lambda_e == 0.0 || b.d_attacker == 0.0) {
        return {cdf_S_ordered(threshold(0.0), kind, b), 0.0};
    }
    return detail::outage_against_attacker(threshold, threshold_d, kind,
                                           detail::oma_attacker_channel(b), b, spec,
                                           std::numeric_limits<double>::infinity());
}

} // namespace

AnalyticResult oma_sop_central(const OmaParams& p, const QuadratureSpec& spec) {
    return oma_sop_user(UserKind::central, p, spec);
}

AnalyticResult oma_sop_second(const OmaParams& p, const QuadratureSpec& spec) {
    return oma_sop_user(UserKind::second, p, spec);
}

AnalyticResult oma_sop(const OmaParams& p, const QuadratureSpec& spec) {
    const AnalyticResult p0 = oma_sop_central(p, spec);
    const AnalyticResult p1 = oma_sop_second(p, spec);
    const double v = 1.0 - (1.0 - p0.value) * (1.0 - p1.value);
    const double err = (1.0 - p1.value) * p0.abs_error + (1.0 - p0.value) * p1.abs_error;
    return detail::clamp_probability({v, err}, "OMA total SOP");
}

} // namespace nomasec
