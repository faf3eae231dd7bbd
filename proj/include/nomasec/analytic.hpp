#pragma once
// Closed-form-integral engine: CDF of the interference ratio S, ergodic
// rates, attacker leakage, and secrecy outage probabilities. Every metric
// carries a numerical error estimate; probability-valued results are clamped
// to [0,1] only when the overshoot is within that estimate.
//
// Two independent evaluation routes exist for the S-statistic kernels and
// are cross-checked in tests: cdf_S reduces the radial integrals to lower
// incomplete gamma terms, while f_tilde evaluates the nested quadrature
// directly. The identity f_tilde(f) == 1 - cdf_S(R*f) ties them together.

#include "nomasec/params.hpp"
#include "nomasec/quadrature.hpp"
#include "nomasec/sinr.hpp"

namespace nomasec {

struct AnalyticResult {
    double value = 0.0;
    double abs_error = 0.0;
};

enum class UserKind { central, second };

// ---- interference ratio S --------------------------------------------------

// P(S <= s) for the unordered cluster user; closed form, monotone in s.
double cdf_S(double s, const SystemParams& p);

// Same quantity through the nested adaptive quadrature route.
double cdf_S_direct(double s, const SystemParams& p, const QuadratureSpec& spec);

// Order statistics of two users: central = max (F^2), second = min (2F-F^2).
double cdf_S_ordered(double s, UserKind kind, const SystemParams& p);

// Survival kernel of the rate integrals, evaluated as the nested quadrature
// with the power-ratio sum folded into the exponent.
double f_tilde(double f, const SystemParams& p, const QuadratureSpec& spec);

// ---- attacker side -----------------------------------------------------------

// One term of the attacker CDF's binomial expansion: the PGFL factor for
// Gamma index u at attacker distance r. vtilde is b_m/a_m of the targeted
// message (the enclosing sum binds u and r).
double v_term(double v, double vtilde, int u, double r, const SystemParams& p);

// CDF / PDF of the strongest attacker's SINR for the given message.
double cdf_attacker_sinr(double x, Message m, const SystemParams& p, const QuadratureSpec& spec);
double pdf_attacker_sinr(double x, Message m, const SystemParams& p, const QuadratureSpec& spec);

// ---- metrics ----------------------------------------------------------------

AnalyticResult ergodic_rate_central(const SystemParams& p, const QuadratureSpec& spec);
AnalyticResult ergodic_rate_second(const SystemParams& p, const QuadratureSpec& spec);
AnalyticResult ergodic_leakage(Message m, const SystemParams& p, const QuadratureSpec& spec);
AnalyticResult secrecy_rate(UserKind kind, const SystemParams& p, const QuadratureSpec& spec);

AnalyticResult sop_central(const SystemParams& p, const QuadratureSpec& spec);
AnalyticResult sop_second(const SystemParams& p, const QuadratureSpec& spec);
AnalyticResult sop_total(const SystemParams& p, const QuadratureSpec& spec);

namespace detail {

// Generic attacker-side channel so the OMA substitution reuses the same
// kernels: ratio = R_eff * vtilde / d (> 1 by the denominator precondition).
struct AttackerChannel {
    double ratio;    // R_eff * vtilde / d
    double lambda_b; // BS density behind the PGFL factor
    double lambda_e;
    double r0;
    double alpha;
    int order_u;
    double eta_tilde;

    double supremum() const { return 1.0 / (ratio - 1.0); }
};

AttackerChannel attacker_channel(Message m, const SystemParams& p);

double v_term_chan(double v, int u, double r, const AttackerChannel& ch);
double cdf_attacker_chan(double x, const AttackerChannel& ch, const QuadratureSpec& spec);
double pdf_attacker_chan(double x, const AttackerChannel& ch, const QuadratureSpec& spec);
AnalyticResult leakage_chan(const AttackerChannel& ch, const QuadratureSpec& spec);

// P( ordered S <= threshold(z) ) against the attacker SINR distribution,
// integrated by parts so only CDFs appear under the integral. threshold may
// return +inf (conditional outage certain past the pole); a finite pole_z
// ends the integration with the exact tail mass folded in.
AnalyticResult outage_against_attacker(const std::function<double(double)>& threshold,
                                       const std::function<double(double)>& threshold_derivative,
                                       UserKind kind, const AttackerChannel& ch,
                                       const SystemParams& p, const QuadratureSpec& spec,
                                       double pole_z);

// Density of the interference-ratio CDF (closed form), and of its order
// statistics; these make the outage integrand spot-evaluable.
double cdf_S_derivative(double s, const SystemParams& p);
double cdf_S_ordered_derivative(double s, UserKind kind, const SystemParams& p);

// Survival of S via quadrature (the f_tilde route); s = R*f already applied.
double survival_S_direct(double s, double lambda_b, double alpha, int order_n,
                         const QuadratureSpec& spec);

// Inner radial interference integral, both routes (design self-test):
// int_lower_scale^inf (exp(-kappa y^(-2 alpha)) - 1) * y dy with lower_scale=1.
double inner_interference_numeric(double kappa, double alpha, const QuadratureSpec& spec);
double inner_interference_gamma(double kappa, double alpha);

AnalyticResult clamp_probability(AnalyticResult r, const std::string& label);

} // namespace detail

} // namespace nomasec
