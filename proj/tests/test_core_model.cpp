// Core model: parameter validation, derived constants, and the asymptotic
// SINR expressions with their documented edge cases and invariants.

#include "nomasec/params.hpp"
#include "nomasec/sinr.hpp"

#include "test_util.hpp"

#include <limits>
#include <random>
#include <vector>

using namespace nomasec;

namespace {

SystemParams defaults() { return SystemParams{}; }

void test_validation() {
    CHECK(validate(defaults()).empty());

    SystemParams p = defaults();
    p.a0 = 0.6;
    p.a1 = 0.4;
    CHECK_THROWS(validate(p)); // a0 < a1 required

    p = defaults();
    p.a0 = 0.5;
    p.a1 = 0.6;
    CHECK_THROWS(validate(p)); // a0 + a1 = 1

    p = defaults();
    p.alpha = 0.9;
    CHECK_THROWS(validate(p));

    p = defaults();
    p.d_attacker = 5.0; // d*a1/b1 = 5 > R = 2
    CHECK_THROWS(validate(p));

    p = defaults();
    p.lambda_u = 5.0 * p.lambda_b;
    CHECK_THROWS(validate(p)); // full load needs >= 10x

    p = defaults();
    p.lambda_u = 20.0 * p.lambda_b;
    CHECK(!validate(p).empty()); // warning zone below 50x

    p = defaults();
    p.region_side = -1.0;
    CHECK_THROWS(validate(p));
}

void test_derived_constants() {
    const DerivedConstants dc = derived_constants(defaults());
    CHECK_NEAR(dc.power_ratio_sum, 2.0, 1e-15); // a0/b0 + a1/b1 with the stock split
    CHECK_NEAR(dc.eta, 2.07099662883712396, 1e-12);
    CHECK_NEAR(dc.eta_tilde, 2.07099662883712396, 1e-12);

    SystemParams p = defaults();
    p.order_n = 1;
    CHECK_NEAR(derived_constants(p).eta, 1.0, 1e-15);
}

void test_sinr_central_own() {
    const SystemParams p = defaults();
    const std::vector<double> one_equal = {1.0};
    CHECK_NEAR(sinr_central_own(1.0, one_equal, p), 0.5, 1e-12); // a0/(R b0) = 0.5

    CHECK(std::isinf(sinr_central_own(1.0, {}, p)));

    const std::vector<double> at_two = {2.0};
    CHECK_NEAR(sinr_central_own(1.0, at_two, p), 0.5 * 256.0, 1e-9); // 2^8 gain

    CHECK_THROWS(sinr_central_own(0.0, one_equal, p));
    CHECK_THROWS(sinr_central_own(1.0, std::vector<double>{-1.0}, p));
}

void test_sinr_central_decoding_second() {
    const SystemParams p = defaults();
    CHECK_NEAR(sinr_central_decoding_second(1.0, {}, p), 1.0, 1e-12); // a1 b0/(a0 b1)
    const std::vector<double> one_equal = {1.0};
    CHECK_NEAR(sinr_central_decoding_second(1.0, one_equal, p), 1.0 / 3.0, 1e-12);
    const std::vector<double> fixed = {3.0, 5.0};
    CHECK_NEAR(sinr_central_decoding_second(1e9, fixed, p), 0.0, 1e-12);
}

void test_sinr_second_own() {
    const SystemParams p = defaults();
    CHECK_NEAR(sinr_second_own(1.0, {}, p), 1.0, 1e-12); // matches the R1 integration cap
    const std::vector<double> one_equal = {1.0};
    CHECK_NEAR(sinr_second_own(1.0, one_equal, p), 1.0 / 3.0, 1e-12);

    SystemParams zero_power = p;
    zero_power.a1 = 0.0;
    CHECK_NEAR(sinr_second_own(1.0, one_equal, zero_power), 0.0, 1e-15);
}

void test_sinr_attacker() {
    SystemParams p = defaults();
    p.d_attacker = 0.0;
    const std::vector<double> one_equal = {1.0};
    CHECK_NEAR(sinr_attacker(Message::w0, 1.0, one_equal, p), 0.0, 1e-15);

    p = defaults(); // d = 0.2
    CHECK_NEAR(sinr_attacker(Message::w0, 1.0, {}, p), 1.0 / 9.0, 1e-12);
    CHECK_NEAR(sinr_attacker(Message::w0, 1.0, one_equal, p), 0.2 * 0.4 / 0.4 / (1.8 + 2.0),
               1e-9);
    CHECK_NEAR(attacker_sinr_supremum(Message::w0, p), 1.0 / 9.0, 1e-12);
    CHECK_NEAR(attacker_sinr_supremum(Message::w1, p), 1.0 / 9.0, 1e-12); // a/b equal here

    SystemParams bad = defaults();
    bad.d_attacker = 2.5; // d*a0/b0 = 2.5 > R
    CHECK_THROWS(sinr_attacker(Message::w0, 1.0, one_equal, bad));
}

void test_finite_m() {
    SystemParams p = defaults();
    const std::vector<double> one_equal = {1.0};

    p.noise_power = 0.0;
    CHECK_NEAR(sinr_central_own_finite_m(1.0, one_equal, p),
               sinr_central_own(1.0, one_equal, p), 1e-12);

    // hand-assembled case: sigma2 equal to the interference term halves the
    // asymptotic value 0.5
    p.m_antennas = 2.0;
    p.p_data = 1.0;
    p.noise_power = 0.5 * 2.0 * 1.0 * p.b0 * 2.0 /* R */ * 1.0 /* r^-2a */;
    CHECK_NEAR(sinr_central_own_finite_m(1.0, one_equal, p), 0.25, 1e-12);

    // convergence to the asymptotic value, monotone in M
    p = defaults();
    p.noise_power = 1e-3;
    const double exact = sinr_central_own(1.0, one_equal, p);
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double m : {1e2, 1e4, 1e6}) {
        p.m_antennas = m;
        const double gap =
            std::fabs(sinr_central_own_finite_m(1.0, one_equal, p) - exact) / exact;
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    // 1/M scaling: gap ratio ~ 100x between M=1e4 and M=1e6
    p.m_antennas = 1e4;
    const double g4 = std::fabs(sinr_central_own_finite_m(1.0, one_equal, p) - exact) / exact;
    p.m_antennas = 1e6;
    const double g6 = std::fabs(sinr_central_own_finite_m(1.0, one_equal, p) - exact) / exact;
    CHECK_REL(g4 / g6, 100.0, 0.05);
}

void test_ordering_statistic() {
    const std::vector<double> one_equal = {1.0};
    CHECK_NEAR(ordering_statistic(1.0, one_equal, 4.0), 1.0, 1e-12);
    const std::vector<double> two_at_2 = {2.0, 2.0};
    CHECK_NEAR(ordering_statistic(1.0, two_at_2, 4.0), 128.0, 1e-9);
    CHECK(std::isinf(ordering_statistic(1.0, {}, 4.0)));

    // scale invariance
    const std::vector<double> base = {2.0, 3.0, 7.0};
    std::vector<double> scaled;
    const double c = 37.5;
    for (double d : base) scaled.push_back(c * d);
    CHECK_REL(ordering_statistic(1.5, base, 4.0), ordering_statistic(1.5 * c, scaled, 4.0),
              1e-12);

    // note sinr_central_own = (a0/(R b0)) * S
    const SystemParams p = defaults();
    CHECK_REL(sinr_central_own(1.5, base, p), 0.5 * ordering_statistic(1.5, base, 4.0), 1e-12);
}

void test_invariants_random_geometries() {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(0.5, 50.0);
    const SystemParams p = defaults();
    for (int trial = 0; trial < 500; ++trial) {
        const double r_serve = dist(rng);
        std::vector<double> inter(1 + rng() % 6);
        for (auto& d : inter) d = dist(rng);

        // homogeneity of every SINR in a common distance scale
        const double c = dist(rng);
        std::vector<double> inter_scaled;
        for (double d : inter) inter_scaled.push_back(c * d);
        CHECK_REL(sinr_central_own(r_serve, inter, p),
                  sinr_central_own(c * r_serve, inter_scaled, p), 1e-9);
        CHECK_REL(sinr_second_own(r_serve, inter, p),
                  sinr_second_own(c * r_serve, inter_scaled, p), 1e-9);
        CHECK_REL(sinr_attacker(Message::w1, r_serve, inter, p),
                  sinr_attacker(Message::w1, c * r_serve, inter_scaled, p), 1e-9);

        // monotonicity: pulling one interferer closer lowers the SINR
        std::vector<double> closer = inter;
        closer[0] *= 0.5;
        CHECK(sinr_central_own(r_serve, closer, p) < sinr_central_own(r_serve, inter, p));
        // moving the user closer raises it
        CHECK(sinr_central_own(0.5 * r_serve, inter, p) > sinr_central_own(r_serve, inter, p));

        // SIC ordering: if S_c >= S_s then the central user decodes w1 at
        // least as well as the second user does
        const double r2 = dist(rng);
        std::vector<double> inter2(1 + rng() % 6);
        for (auto& d : inter2) d = dist(rng);
        const bool first_central = ordering_statistic(r_serve, inter, p.alpha) >=
                                   ordering_statistic(r2, inter2, p.alpha);
        const double sic_c = first_central ? sinr_central_decoding_second(r_serve, inter, p)
                                           : sinr_central_decoding_second(r2, inter2, p);
        const double sic_s = first_central ? sinr_second_own(r2, inter2, p)
                                           : sinr_second_own(r_serve, inter, p);
        CHECK(sic_c >= sic_s - 1e-12 * sic_s);

        // attacker supremum is strict with any interferer present
        CHECK(sinr_attacker(Message::w0, r_serve, inter, p) <
              attacker_sinr_supremum(Message::w0, p));
    }
}

} // namespace

int main() {
    RUN(test_validation);
    RUN(test_derived_constants);
    RUN(test_sinr_central_own);
    RUN(test_sinr_central_decoding_second);
    RUN(test_sinr_second_own);
    RUN(test_sinr_attacker);
    RUN(test_finite_m);
    RUN(test_ordering_statistic);
    RUN(test_invariants_random_geometries);
    return testutil::summary("core-model");
}
