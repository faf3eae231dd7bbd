#include "nomasec/sinr.hpp"

#include "nomasec/special.hpp"

#include <limits>
#include <stdexcept>

namespace nomasec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double serve_power(double r_serve, double alpha) {
    if (!(r_serve > 0.0)) throw std::invalid_argument("sinr: serving distance must be > 0");
    return pow_neg_2alpha(r_serve, alpha);
}

double power_ratio(Message m, const SystemParams& p) {
    return m == Message::w0 ? p.a0 / p.b0 : p.a1 / p.b1;
}

double ratio_sum(const SystemParams& p) { return p.a0 / p.b0 + p.a1 / p.b1; }

} // namespace

double interference_sum(std::span<const double> dists, double alpha) {
    double sum = 0.0;
    for (double d : dists) {
        if (!(d > 0.0)) throw std::invalid_argument("sinr: interferer distance must be > 0");
        sum += pow_neg_2alpha(d, alpha);
    }
    return sum;
}

double ordering_statistic(double r_serve, std::span<const double> interferers, double alpha) {
    const double own = serve_power(r_serve, alpha);
    if (interferers.empty()) return kInf;
    return own / interference_sum(interferers, alpha);
}

double sinr_central_own_p(double own, double inter, const SystemParams& p) {
    if (inter == 0.0) return kInf;
    return p.a0 * own / (ratio_sum(p) * p.b0 * inter);
}

double sinr_central_decoding_second_p(double own, double inter, const SystemParams& p) {
    return (p.b0 * p.a1 / p.b1) * own / (ratio_sum(p) * p.b0 * inter + p.a0 * own);
}

double sinr_second_own_p(double own, double inter, const SystemParams& p) {
    return p.a1 * own / (p.a0 * p.b1 * own / p.b0 + ratio_sum(p) * p.b1 * inter);
}

double sinr_attacker_p(Message m, double own, double inter, const SystemParams& p) {
    const double big_r = ratio_sum(p);
    const double leak = p.d_attacker * power_ratio(m, p);
    if (!(leak < big_r))
        throw std::invalid_argument("sinr_attacker: d*a/b must be < a0/b0 + a1/b1");
    if (leak == 0.0) return 0.0;
    return leak * own / (own * (big_r - leak) + big_r * inter);
}

double sinr_attacker_oma_p(double own, double inter, const SystemParams& p) {
    if (!(p.d_attacker < 1.0))
        throw std::invalid_argument("sinr_attacker_oma: d_attacker must be < 1");
    if (p.d_attacker == 0.0) return 0.0;
    return p.d_attacker * own / (own * (1.0 - p.d_attacker) + inter);
}

double sinr_central_own(double r_serve, std::span<const double> interferers,
                        const SystemParams& p) {
    const double own = serve_power(r_serve, p.alpha);
    if (interferers.empty()) return kInf;
    return sinr_central_own_p(own, interference_sum(interferers, p.alpha), p);
}

double sinr_central_decoding_second(double r_serve, std::span<const double> interferers,
                                    const SystemParams& p) {
    const double own = serve_power(r_serve, p.alpha);
    const double inter = interferers.empty() ? 0.0 : interference_sum(interferers, p.alpha);
    return sinr_central_decoding_second_p(own, inter, p);
}

double sinr_second_own(double r_serve, std::span<const double> interferers,
                       const SystemParams& p) {
    const double own = serve_power(r_serve, p.alpha);
    const double inter = interferers.empty() ? 0.0 : interference_sum(interferers, p.alpha);
    return sinr_second_own_p(own, inter, p);
}

double sinr_attacker(Message m, double r_serve_cell, std::span<const double> other_bs,
                     const SystemParams& p) {
    const double own = serve_power(r_serve_cell, p.alpha);
    const double inter = other_bs.empty() ? 0.0 : interference_sum(other_bs, p.alpha);
    return sinr_attacker_p(m, own, inter, p);
}

double attacker_sinr_supremum(Message m, const SystemParams& p) {
    const double big_r = ratio_sum(p);
    const double leak = p.d_attacker * power_ratio(m, p);
    if (!(leak < big_r))
        throw std::invalid_argument("attacker_sinr_supremum: d*a/b must be < a0/b0 + a1/b1");
    if (leak == 0.0) return 0.0;
    return leak / (big_r - leak);
}

double sinr_central_own_finite_m(double r_serve, std::span<const double> interferers,
                                 const SystemParams& p) {
    const double own = serve_power(r_serve, p.alpha);
    const double inter = interferers.empty() ? 0.0 : interference_sum(interferers, p.alpha);
    const double half_mp = 0.5 * p.m_antennas * p.p_data;
    const double denom = p.noise_power + half_mp * p.b0 * ratio_sum(p) * inter;
    if (denom == 0.0) return kInf;
    return half_mp * p.a0 * own / denom;
}

} // namespace nomasec
