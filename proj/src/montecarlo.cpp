#include "nomasec/montecarlo.hpp"

#include "nomasec/sinr.hpp"
#include "nomasec/special.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace nomasec {

namespace {

double rate_bits(double sinr, double cap) {
    if (std::isinf(sinr)) return cap;
    return std::min(cap, std::log1p(sinr) / std::log(2.0));
}

int effective_threads(int requested) {
    const unsigned hw = std::thread::hardware_concurrency();
    int t = requested > 0 ? requested : static_cast<int>(hw ? hw : 1);
    return std::max(1, t);
}

// Independent per-item work, results written to per-item slots.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    if (n == 0) return;
    const int t = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(t));
    for (int w = 0; w < t; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

McEstimate mean_estimate(const std::vector<double>& xs) {
    McEstimate e;
    e.n_effective = static_cast<int>(xs.size());
    if (xs.empty()) return e;
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / xs.size();
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    e.value = mean;
    if (xs.size() > 1) e.std_error = std::sqrt(ss / (xs.size() - 1.0) / xs.size());
    return e;
}

McEstimate fraction_estimate(long long hits, std::size_t n) {
    McEstimate e;
    e.n_effective = static_cast<int>(n);
    if (n == 0) return e;
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    e.value = p;
    e.std_error = std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
    return e;
}

// Positive-part difference of two means over the same sample; the standard
// error comes from the per-realization gaps, which keeps the correlation.
McEstimate positive_gap(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> gap(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) gap[i] = a[i] - b[i];
    McEstimate e = mean_estimate(gap);
    e.value = std::max(0.0, e.value);
    return e;
}

} // namespace

std::optional<RealizationOutcome> run_realization(const SystemParams& p, std::uint64_t seed,
                                                  double interior_fraction) {
    const NetworkRealization net = sample_network(p, seed);
    Rng tag_rng(substream_seed(seed, 0, 5));
    const auto tagged = select_tagged_cell(net, interior_fraction, tag_rng);
    if (!tagged) return std::nullopt;

    const BsField field = BsField::from_points(net.bs);
    const int cell = tagged->cell_index;
    const ClusterPair& pair =
        net.cells[static_cast<std::size_t>(cell)].clusters[static_cast<std::size_t>(
            tagged->cluster_index)];

    const SiteStats c = site_stats(field, pair.central, cell, p.alpha);
    const SiteStats s = site_stats(field, pair.second, cell, p.alpha);

    RealizationOutcome out;
    out.seed = seed;
    out.s_central = pair.s_central;
    out.s_second = pair.s_second;
    out.sinr.w0_central = sinr_central_own_p(c.own_power, c.interference, p);
    out.sinr.w1_central = sinr_central_decoding_second_p(c.own_power, c.interference, p);
    out.sinr.w1_second = sinr_second_own_p(s.own_power, s.interference, p);

    // Strongest attacker: every attacker SINR variant is increasing in
    // own/interference relative to the tagged BS, so one argmax serves all.
    double best_q = -1.0, best_own = 0.0, best_inter = 0.0;
    for (const Point2D& a : net.attackers) {
        const SiteStats st = site_stats(field, a, cell, p.alpha);
        const double q = st.own_power / st.interference;
        if (q > best_q) {
            best_q = q;
            best_own = st.own_power;
            best_inter = st.interference;
        }
    }
    if (best_q >= 0.0 && p.d_attacker > 0.0) {
        out.sinr.attacker_w0 = sinr_attacker_p(Message::w0, best_own, best_inter, p);
        out.sinr.attacker_w1 = sinr_attacker_p(Message::w1, best_own, best_inter, p);
        out.attacker_oma = sinr_attacker_oma_p(best_own, best_inter, p);
    }
    return out;
}

BatchResult run_batch(const SystemParams& p, const McConfig& mc) {
    if (mc.n_realizations < 1) throw std::invalid_argument("n_realizations must be >= 1");
    const int n = mc.n_realizations;
    const int budget = 2 * n;
    const int threads = effective_threads(mc.parallelism);

    BatchResult batch;
    batch.outcomes.reserve(static_cast<std::size_t>(n));
    int draw = 0;
    while (static_cast<int>(batch.outcomes.size()) < n && draw < budget) {
        const int missing = n - static_cast<int>(batch.outcomes.size());
        const int chunk = std::min(budget - draw, missing + (missing > 16 ? missing / 8 : 4));
        std::vector<std::optional<RealizationOutcome>> slots(static_cast<std::size_t>(chunk));
        parallel_for(static_cast<std::size_t>(chunk), threads, [&](std::size_t i) {
            const std::uint64_t seed =
                substream_seed(mc.master_seed, static_cast<std::uint64_t>(draw) + i, 0);
            slots[i] = run_realization(p, seed, mc.interior_fraction);
        });
        for (auto& slot : slots) {
            if (static_cast<int>(batch.outcomes.size()) >= n) break;
            if (slot) batch.outcomes.push_back(*slot);
        }
        draw += chunk;
    }
    batch.attempts = draw;
    return batch;
}

RateEstimates estimate_rates(std::span<const RealizationOutcome> sample, double max_rate_bits) {
    const std::size_t n = sample.size();
    std::vector<double> r0(n), r1(n), re0(n), re1(n), sum_gap(n);
    std::vector<double> or0(n), or1(n), ore(n), oma_sum_gap(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& o = sample[i];
        r0[i] = rate_bits(o.sinr.w0_central, max_rate_bits);
        r1[i] = rate_bits(o.sinr.w1_second, max_rate_bits);
        re0[i] = rate_bits(o.sinr.attacker_w0, max_rate_bits);
        re1[i] = rate_bits(o.sinr.attacker_w1, max_rate_bits);
        sum_gap[i] = (r0[i] - re0[i]) + (r1[i] - re1[i]);
        or0[i] = 0.5 * rate_bits(o.s_central, max_rate_bits);
        or1[i] = 0.5 * rate_bits(o.s_second, max_rate_bits);
        ore[i] = 0.5 * rate_bits(o.attacker_oma, max_rate_bits);
        oma_sum_gap[i] = (or0[i] - ore[i]) + (or1[i] - ore[i]);
    }

    RateEstimates est;
    est.r0 = mean_estimate(r0);
    est.r1 = mean_estimate(r1);
    est.re_w0 = mean_estimate(re0);
    est.re_w1 = mean_estimate(re1);
    est.cs0 = positive_gap(r0, re0);
    est.cs1 = positive_gap(r1, re1);
    est.cs_sum = mean_estimate(sum_gap);
    est.cs_sum.value = std::max(0.0, est.cs0.value) + std::max(0.0, est.cs1.value);
    est.oma_r_central = mean_estimate(or0);
    est.oma_r_second = mean_estimate(or1);
    est.oma_re = mean_estimate(ore);
    est.oma_cs_central = positive_gap(or0, ore);
    est.oma_cs_second = positive_gap(or1, ore);
    est.oma_cs_sum = mean_estimate(oma_sum_gap);
    est.oma_cs_sum.value = est.oma_cs_central.value + est.oma_cs_second.value;
    return est;
}

SopEstimates estimate_sop(std::span<const RealizationOutcome> sample, double rate_target0,
                          double rate_target1) {
    const std::size_t n = sample.size();
    const double big = 1e9; // no cap: outage margins never hit the sentinel in practice
    long long out0 = 0, out1 = 0, out_any = 0;
    long long oma0 = 0, oma1 = 0, oma_any = 0;
    int violations = 0;
    for (const auto& o : sample) {
        const double m0 = rate_bits(o.sinr.w0_central, big) - rate_bits(o.sinr.attacker_w0, big);
        const double m1_second =
            rate_bits(o.sinr.w1_second, big) - rate_bits(o.sinr.attacker_w1, big);
        const double m1_central =
            rate_bits(o.sinr.w1_central, big) - rate_bits(o.sinr.attacker_w1, big);
        if (m1_central < m1_second) ++violations; // SIC ordering must make this impossible
        const bool e00 = m0 < rate_target0;
        const bool e11 = m1_second < rate_target1;
        const bool e01 = m1_central < rate_target1;
        out0 += e00;
        out1 += e11;
        out_any += (e00 || e11 || e01);

        const double om0 = rate_bits(o.s_central, big) - rate_bits(o.attacker_oma, big);
        const double om1 = rate_bits(o.s_second, big) - rate_bits(o.attacker_oma, big);
        const bool oe0 = om0 < 2.0 * rate_target0;
        const bool oe1 = om1 < 2.0 * rate_target1;
        oma0 += oe0;
        oma1 += oe1;
        oma_any += (oe0 || oe1);
    }

    SopEstimates est;
    est.p_w0 = fraction_estimate(out0, n);
    est.p_w1 = fraction_estimate(out1, n);
    est.sop_direct = fraction_estimate(out_any, n);
    est.oma_p_w0 = fraction_estimate(oma0, n);
    est.oma_p_w1 = fraction_estimate(oma1, n);
    est.oma_sop_direct = fraction_estimate(oma_any, n);
    est.inclusion_violations = violations;

    auto product = [n](const McEstimate& a, const McEstimate& b) {
        McEstimate e;
        e.n_effective = static_cast<int>(n);
        e.value = 1.0 - (1.0 - a.value) * (1.0 - b.value);
        e.std_error = std::sqrt((1.0 - b.value) * (1.0 - b.value) * a.std_error * a.std_error +
                                (1.0 - a.value) * (1.0 - a.value) * b.std_error * b.std_error);
        return e;
    };
    est.sop_product = product(est.p_w0, est.p_w1);
    est.oma_sop_product = product(est.oma_p_w0, est.oma_p_w1);
    return est;
}

namespace {

std::vector<RealizationOutcome> checked_batch(const SystemParams& p, const McConfig& mc) {
    BatchResult batch = run_batch(p, mc);
    if (static_cast<int>(batch.outcomes.size()) < (mc.n_realizations + 1) / 2) {
        throw std::runtime_error("Monte Carlo: more than half of the realizations were "
                                 "rejected (no usable interior cell)");
    }
    return std::move(batch.outcomes);
}

} // namespace

RateEstimates estimate_rates(const SystemParams& p, const McConfig& mc) {
    return estimate_rates(checked_batch(p, mc), mc.max_rate_bits);
}

SopEstimates estimate_sop(const SystemParams& p, const McConfig& mc) {
    return estimate_sop(checked_batch(p, mc), p.rate_target0, p.rate_target1);
}

std::vector<double> empirical_cdf_S(const SystemParams& p, int n_draws, std::uint64_t seed,
                                    double interior_fraction) {
    if (n_draws < 100) throw std::invalid_argument("empirical_cdf_S: need at least 100 draws");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n_draws));
    const double side = p.region_side;
    const double lo = 0.5 * side * (1.0 - interior_fraction);
    const double span = side * interior_fraction;

    const int budget = 2 * n_draws;
    for (int draw = 0; draw < budget && static_cast<int>(values.size()) < n_draws; ++draw) {
        const std::uint64_t rs = substream_seed(seed, static_cast<std::uint64_t>(draw), 7);
        Rng bs_rng(substream_seed(rs, 0, 1));
        Rng probe_rng(substream_seed(rs, 0, 6));
        const auto bs = sample_ppp(p.lambda_b, side, bs_rng);
        if (bs.size() < 2) continue;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double px = lo + span * u(probe_rng);
        const double py = lo + span * u(probe_rng);
        const BsField field = BsField::from_points(bs);
        const SiteStats st = site_stats(field, {px, py}, -1, p.alpha);
        if (st.interference <= 0.0) continue;
        values.push_back(st.own_power / st.interference);
    }
    std::sort(values.begin(), values.end());
    return values;
}

double ks_distance(std::span<const double> sorted_sample,
                   const std::function<double(double)>& cdf) {
    const std::size_t n = sorted_sample.size();
    if (n == 0) throw std::invalid_argument("ks_distance: empty sample");
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(sorted_sample[i]);
        const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
        const double lo_step = static_cast<double>(i) / static_cast<double>(n);
        d = std::max(d, std::max(hi - f, f - lo_step));
    }
    return d;
}

void write_outcomes(std::ostream& os, std::span<const RealizationOutcome> outcomes) {
    char buf[320];
    for (const auto& o : outcomes) {
        std::snprintf(buf, sizeof buf,
                      "seed=%llu w0_central=%.9g w1_central=%.9g w1_second=%.9g "
                      "attacker_w0=%.9g attacker_w1=%.9g s_central=%.9g s_second=%.9g "
                      "attacker_oma=%.9g\n",
                      static_cast<unsigned long long>(o.seed), o.sinr.w0_central,
                      o.sinr.w1_central, o.sinr.w1_second, o.sinr.attacker_w0, o.sinr.attacker_w1,
                      o.s_central, o.s_second, o.attacker_oma);
        os << buf;
    }
}

} // namespace nomasec
