// OMA (TDMA) baseline: time-share halving, threshold doubling, and the
// substituted attacker channel.

#include "nomasec/analytic.hpp"
#include "nomasec/oma.hpp"
#include "nomasec/quadrature.hpp"

#include "test_util.hpp"

#include <cmath>

using namespace nomasec;

namespace {

const QuadratureSpec kSpec;

void test_make_oma() {
    SystemParams p;
    (void)make_oma(p);
    p.d_attacker = 1.0;
    CHECK_THROWS(make_oma(p)); // OMA attacker denominator needs d < 1
}

void test_time_share_halving() {
    const OmaParams oma = make_oma(SystemParams{});
    // the rate is exactly half of the same integral without the factor
    const AnalyticResult half = oma_ergodic_rate(UserKind::central, oma, kSpec);
    const QuadResult full = integrate_until_negligible(
        [&](double t) {
            return 1.0 - cdf_S_ordered(std::exp2(t) - 1.0, UserKind::central, oma.base);
        },
        0.0, kSpec, "unhalved OMA rate");
    CHECK_REL(half.value, 0.5 * full.value, 1e-9);

    // the served OMA user sees S itself, which beats the NOMA share pointwise,
    // but the 1/2 time share can still lose at the rate level for the central
    // user; both rates must at least be positive and finite
    CHECK(half.value > 0.0);
    const AnalyticResult second = oma_ergodic_rate(UserKind::second, oma, kSpec);
    CHECK(second.value > 0.0);
    CHECK(second.value < half.value); // min order statistic earns less
}

void test_leakage() {
    SystemParams p;
    const OmaParams oma = make_oma(p);
    const AnalyticResult leak_c = oma_leakage(UserKind::central, oma, kSpec);
    const AnalyticResult leak_s = oma_leakage(UserKind::second, oma, kSpec);
    CHECK_NEAR(leak_c.value, leak_s.value, 1e-12); // full power either way

    SystemParams silent = p;
    silent.d_attacker = 0.0;
    CHECK(oma_leakage(UserKind::central, make_oma(silent), kSpec).value == 0.0);

    // supremum of the OMA attacker SINR is d/(1-d); leakage stays below the
    // corresponding rate bound
    const double sup = p.d_attacker / (1.0 - p.d_attacker);
    CHECK(leak_c.value < 0.5 * std::log2(1.0 + sup) + 0.05);
    CHECK(leak_c.value > 0.0);
}

void test_threshold_doubling_identity() {
    // OMA outage at target Rt must equal the same machinery run at 2*Rt:
    // structural identity, asserted at three parameter points
    for (double rt : {0.25, 0.75, 1.5}) {
        SystemParams p;
        p.lambda_b = 1e-4;
        p.lambda_u = 1e-2;
        p.rate_target0 = rt;
        p.rate_target1 = rt;
        const OmaParams oma = make_oma(p);
        const AnalyticResult via_op = oma_sop_central(oma, kSpec);

        const double gain = std::exp2(2.0 * rt);
        auto threshold = [gain](double z) { return gain * (1.0 + z) - 1.0; };
        auto threshold_d = [gain](double) { return gain; };
        const AnalyticResult direct = detail::outage_against_attacker(
            threshold, threshold_d, UserKind::central, detail::oma_attacker_channel(p), p,
            kSpec, std::numeric_limits<double>::infinity());
        CHECK_NEAR(via_op.value, direct.value, 1e-9);
    }
}

void test_sop_edges() {
    SystemParams p;
    p.lambda_b = 1e-4;
    p.lambda_u = 1e-2;

    SystemParams easy = p;
    easy.lambda_e = 0.0;
    easy.rate_target0 = 0.0;
    easy.rate_target1 = 0.0;
    const OmaParams oe = make_oma(easy);
    CHECK_NEAR(oma_sop(oe, kSpec).value, 0.0, 1e-12);

    const OmaParams oma = make_oma(p);
    const AnalyticResult p0 = oma_sop_central(oma, kSpec);
    const AnalyticResult p1 = oma_sop_second(oma, kSpec);
    const AnalyticResult tot = oma_sop(oma, kSpec);
    CHECK(p0.value > 0.0 && p0.value < 1.0);
    CHECK(p1.value > 0.0 && p1.value < 1.0);
    CHECK_NEAR(tot.value, 1.0 - (1.0 - p0.value) * (1.0 - p1.value), 1e-6);

    // no intra-cluster interference: the OMA second user's outage never has
    // the SIC pole, so even extreme targets stay strictly below 1
    SystemParams hard = p;
    hard.rate_target1 = 12.0;
    const AnalyticResult hp1 = oma_sop_second(make_oma(hard), kSpec);
    CHECK(hp1.value > 0.99);
    CHECK(hp1.value <= 1.0);
}

} // namespace

int main() {
    RUN(test_make_oma);
    RUN(test_time_share_halving);
    RUN(test_leakage);
    RUN(test_threshold_doubling_identity);
    RUN(test_sop_edges);
    return testutil::summary("oma");
}
