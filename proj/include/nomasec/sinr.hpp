#pragma once
// Asymptotic (antenna count -> infinity) SINR expressions for the tagged
// cluster's users and for pilot-contaminating attackers, plus the finite-M
// pre-limit. All functions are pure; distances are in meters, SINRs linear.
//
// Conventions: r_serve is the distance to the serving (tagged) BS,
// `interferers` the distances to every other BS in the region. An empty
// interferer list means zero inter-cell interference; operations return +inf
// where the expression diverges in that limit.

#include "nomasec/params.hpp"

#include <span>

namespace nomasec {

enum class Message { w0, w1 }; // w0: central user's data, w1: second user's data

// sum over d in `dists` of d^(-2*alpha); throws on nonpositive distances.
double interference_sum(std::span<const double> dists, double alpha);

// S = r_serve^(-2a) / sum_l r_l^(-2a); +inf when no interferers.
double ordering_statistic(double r_serve, std::span<const double> interferers, double alpha);

// Central user decoding its own message after SIC.
double sinr_central_own(double r_serve, std::span<const double> interferers,
                        const SystemParams& p);

// Central user decoding the second user's message (the SIC step).
double sinr_central_decoding_second(double r_serve, std::span<const double> interferers,
                                    const SystemParams& p);

// Second user decoding its own message, central user's signal as noise.
double sinr_second_own(double r_serve, std::span<const double> interferers,
                       const SystemParams& p);

// Attacker eavesdropping the given message; r_serve_cell is its distance to
// the tagged BS. Bounded by attacker_sinr_supremum().
double sinr_attacker(Message m, double r_serve_cell, std::span<const double> other_bs,
                     const SystemParams& p);

// Single-cell (zero inter-cell interference) bound of sinr_attacker.
double attacker_sinr_supremum(Message m, const SystemParams& p);

// Finite antenna count pre-limit of sinr_central_own; converges to it as
// m_antennas -> inf (the noise term is the only finite-M leftover).
double sinr_central_own_finite_m(double r_serve, std::span<const double> interferers,
                                 const SystemParams& p);

// Power-domain kernels: `own` is r_serve^(-2a), `inter` the summed
// interferer powers. The distance-list functions above and the Monte-Carlo
// hot path both route through these, so each formula lives in one place.
double sinr_central_own_p(double own, double inter, const SystemParams& p);
double sinr_central_decoding_second_p(double own, double inter, const SystemParams& p);
double sinr_second_own_p(double own, double inter, const SystemParams& p);
double sinr_attacker_p(Message m, double own, double inter, const SystemParams& p);
// OMA substitution (a = b = 1, power-ratio sum 1): the served user's SINR is
// own/inter and the attacker sees d*own / (own*(1-d) + inter).
double sinr_attacker_oma_p(double own, double inter, const SystemParams& p);

} // namespace nomasec
