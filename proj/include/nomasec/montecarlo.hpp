#pragma once
// Monte-Carlo engine: repeated network realizations, per-realization SINR
// evaluation, and empirical estimators for every analytic metric.
//
// Averages are taken over node locations only; the SINR expressions are the
// fading-free asymptotic ones, so there is no per-realization channel draw.
//
// Reproducibility: realization i uses seed substream_seed(master_seed, i, 0).
// Results are reduced in realization-index order, so estimates are
// bit-identical for any parallelism width. Realizations without a usable
// interior cell are replaced by later draws up to a 2x budget.

#include "nomasec/geometry.hpp"
#include "nomasec/params.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace nomasec {

struct McConfig {
    int n_realizations = 1000;
    std::uint64_t master_seed = 1;
    double interior_fraction = 1.0 / 3.0; // tagged cells measured in this window
    int parallelism = 0;                  // 0 -> hardware concurrency
    double max_rate_bits = 60.0;          // cap for log2(1 + inf-sentinel SINR)
};

struct SinrReport {
    double w0_central = 0.0;   // central user decoding its own message
    double w1_central = 0.0;   // central user decoding the second user's message
    double w1_second = 0.0;    // second user decoding its own message
    double attacker_w0 = 0.0;  // strongest attacker, central user's message
    double attacker_w1 = 0.0;  // strongest attacker, second user's message
};

struct RealizationOutcome {
    SinrReport sinr;
    double s_central = 0.0;    // ordering statistic of the tagged pair
    double s_second = 0.0;
    double attacker_oma = 0.0; // strongest attacker under the OMA substitution
    std::uint64_t seed = 0;
};

// One sampled network -> tagged-cluster SINRs. nullopt when the realization
// has no usable interior cell (caller resamples).
std::optional<RealizationOutcome> run_realization(const SystemParams& p, std::uint64_t seed,
                                                  double interior_fraction = 1.0 / 3.0);

struct BatchResult {
    std::vector<RealizationOutcome> outcomes; // realization-index order
    int attempts = 0;                         // draws consumed incl. rejections
};
BatchResult run_batch(const SystemParams& p, const McConfig& mc);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    int n_effective = 0;
};

struct RateEstimates {
    McEstimate r0, r1;           // ergodic rates, bits/channel use
    McEstimate re_w0, re_w1;     // leakage to the strongest attacker
    McEstimate cs0, cs1, cs_sum; // secrecy rates (positive part of mean gaps)
    McEstimate oma_r_central, oma_r_second, oma_re;
    McEstimate oma_cs_central, oma_cs_second, oma_cs_sum;
};

struct SopEstimates {
    McEstimate p_w0, p_w1;
    McEstimate sop_direct;  // event frequency of any decoding failure
    McEstimate sop_product; // 1 - (1-P0)(1-P1)
    McEstimate oma_p_w0, oma_p_w1, oma_sop_direct, oma_sop_product;
    int inclusion_violations = 0; // SIC margin inversions observed (must be 0)
};

// Reductions over an existing sample (pure; reusable across rate targets).
RateEstimates estimate_rates(std::span<const RealizationOutcome> sample, double max_rate_bits);
SopEstimates estimate_sop(std::span<const RealizationOutcome> sample, double rate_target0,
                          double rate_target1);

// Convenience wrappers running a fresh batch. Fail hard when fewer than half
// of the requested realizations survive rejection.
RateEstimates estimate_rates(const SystemParams& p, const McConfig& mc);
SopEstimates estimate_sop(const SystemParams& p, const McConfig& mc);

// Empirical sample of the unordered interference statistic S (sorted
// ascending). Draw i probes an independent BS deployment with the user placed
// uniformly in the interior window, which realizes the same typical-user view
// the analytic CDF takes.
std::vector<double> empirical_cdf_S(const SystemParams& p, int n_draws, std::uint64_t seed,
                                    double interior_fraction = 1.0 / 3.0);

// Kolmogorov distance between a sorted sample and a reference CDF.
double ks_distance(std::span<const double> sorted_sample,
                   const std::function<double(double)>& cdf);

// One outcome per line: seed, the five SINRs, S pair, OMA attacker SINR.
void write_outcomes(std::ostream& os, std::span<const RealizationOutcome> outcomes);

} // namespace nomasec
