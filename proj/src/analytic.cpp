#include "nomasec/analytic.hpp"

#include "nomasec/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nomasec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Psi(beta) = beta^(1/a) * gamma(1 - 1/a, beta) - (1 - e^-beta). The radial
// survival factor of the S CDF: conditioning on the serving distance r, the
// PGFL exponent is -pi*lambda_b*r^2*Psi, and the Rayleigh average collapses
// to 1/(1+Psi).
double psi_factor(double beta, double alpha) {
    if (beta <= 0.0) return 0.0;
    const double inv_a = 1.0 / alpha;
    return std::pow(beta, inv_a) * lower_gamma(1.0 - inv_a, beta) - (-std::expm1(-beta));
}

// d Psi / d beta; the incomplete-gamma derivative cancels the e^-beta term.
double psi_derivative(double beta, double alpha) {
    const double inv_a = 1.0 / alpha;
    if (beta <= 0.0) return 1.0 / (alpha - 1.0); // small-beta limit
    return std::pow(beta, inv_a - 1.0) * lower_gamma(1.0 - inv_a, beta) / alpha;
}

double pow_2alpha(double r, double alpha) {
    return 1.0 / pow2_neg_alpha(r * r, alpha);
}

// Nested integrals evaluate their inner layer well below the outer tolerance;
// otherwise the outer adaptive loop chases the inner quadrature noise and
// never converges.
QuadratureSpec inner_spec(const QuadratureSpec& spec) {
    QuadratureSpec q = spec;
    q.rel_tol = std::max(1e-3 * spec.rel_tol, 1e-12);
    q.abs_tol = std::max(1e-3 * spec.abs_tol, 1e-14);
    return q;
}

} // namespace

double cdf_S(double s, const SystemParams& p) {
    if (s < 0.0) throw std::invalid_argument("cdf_S: s must be >= 0");
    if (s == 0.0) return 0.0;
    const double eta = alzer_factor(p.order_n);
    double survival = 0.0;
    for (int n = 1; n <= p.order_n; ++n) {
        const double term = static_cast<double>(binomial(p.order_n, n)) /
                            (1.0 + psi_factor(s * eta * n, p.alpha));
        survival += (n % 2 == 1) ? term : -term;
    }
    return std::clamp(1.0 - survival, 0.0, 1.0);
}

double cdf_S_ordered(double s, UserKind kind, const SystemParams& p) {
    const double f = cdf_S(s, p);
    return kind == UserKind::central ? f * f : 2.0 * f - f * f;
}

namespace detail {

double cdf_S_derivative(double s, const SystemParams& p) {
    if (s < 0.0) throw std::invalid_argument("cdf_S_derivative: s must be >= 0");
    const double eta = alzer_factor(p.order_n);
    double d = 0.0;
    for (int n = 1; n <= p.order_n; ++n) {
        const double beta = s * eta * n;
        const double denom = 1.0 + psi_factor(beta, p.alpha);
        const double term = static_cast<double>(binomial(p.order_n, n)) * eta * n *
                            psi_derivative(beta, p.alpha) / (denom * denom);
        d += (n % 2 == 1) ? term : -term;
    }
    return std::max(0.0, d);
}

double cdf_S_ordered_derivative(double s, UserKind kind, const SystemParams& p) {
    const double f = cdf_S(s, p);
    const double df = cdf_S_derivative(s, p);
    return kind == UserKind::central ? 2.0 * f * df : 2.0 * (1.0 - f) * df;
}

} // namespace detail

namespace detail {

double inner_interference_numeric(double kappa, double alpha, const QuadratureSpec& spec) {
    if (kappa <= 0.0) return 0.0;
    // int_1^inf (exp(-kappa y^(-2a)) - 1) y dy, mapped with t = 1/y.
    auto mapped = [kappa, alpha](double t) {
        const double y2a = pow_2alpha(t, alpha); // t^(2a)
        return std::expm1(-kappa * y2a) / (t * t * t);
    };
    return integrate(mapped, 0.0, 1.0, spec, "inner radial interference integral").value;
}

double inner_interference_gamma(double kappa, double alpha) {
    return -interference_exclusion_integral(kappa, 1.0, alpha);
}

double survival_S_direct(double s, double lambda_b, double alpha, int order_n,
                         const QuadratureSpec& spec) {
    if (s <= 0.0) return 1.0;
    if (!(lambda_b > 0.0)) throw std::invalid_argument("survival_S_direct: lambda_b must be > 0");
    const double eta = alzer_factor(order_n);

    // The inner integral depends on r only through the substitution y = x/r,
    // so one evaluation per binomial index n covers all serving distances.
    std::vector<double> k_over_r2(static_cast<std::size_t>(order_n) + 1, 0.0);
    for (int n = 1; n <= order_n; ++n) {
        k_over_r2[static_cast<std::size_t>(n)] =
            2.0 * M_PI * lambda_b * inner_interference_numeric(s * eta * n, alpha, spec);
    }

    const double pi_lb = M_PI * lambda_b;
    auto radial = [&](double r) {
        const double r2 = r * r;
        double sum = 0.0;
        for (int n = 1; n <= order_n; ++n) {
            const double term = static_cast<double>(binomial(order_n, n)) *
                                std::exp(k_over_r2[static_cast<std::size_t>(n)] * r2);
            sum += (n % 2 == 1) ? term : -term;
        }
        return sum * 2.0 * pi_lb * r * std::exp(-pi_lb * r2);
    };
    const double rayleigh_scale = 1.0 / std::sqrt(pi_lb);
    return integrate_semi_infinite(radial, 0.0, rayleigh_scale, spec,
                                   "S survival radial integral")
        .value;
}

} // namespace detail

double cdf_S_direct(double s, const SystemParams& p, const QuadratureSpec& spec) {
    if (s < 0.0) throw std::invalid_argument("cdf_S_direct: s must be >= 0");
    return 1.0 - detail::survival_S_direct(s, p.lambda_b, p.alpha, p.order_n, spec);
}

double f_tilde(double f, const SystemParams& p, const QuadratureSpec& spec) {
    if (f < 0.0) throw std::invalid_argument("f_tilde: argument must be >= 0");
    const double big_r = p.a0 / p.b0 + p.a1 / p.b1;
    return detail::survival_S_direct(big_r * f, p.lambda_b, p.alpha, p.order_n, spec);
}

// ---- attacker side ----------------------------------------------------------

namespace detail {

AttackerChannel attacker_channel(Message m, const SystemParams& p) {
    if (!(p.d_attacker > 0.0))
        throw std::invalid_argument("attacker_channel: d_attacker must be > 0 here");
    const double big_r = p.a0 / p.b0 + p.a1 / p.b1;
    const double vtilde = m == Message::w0 ? p.b0 / p.a0 : p.b1 / p.a1;
    AttackerChannel ch;
    ch.ratio = big_r * vtilde / p.d_attacker;
    if (!(ch.ratio > 1.0))
        throw std::invalid_argument("attacker_channel: d*a/b must be < a0/b0 + a1/b1");
    ch.lambda_b = p.lambda_b;
    ch.lambda_e = p.lambda_e;
    ch.r0 = p.r0;
    ch.alpha = p.alpha;
    ch.order_u = p.order_u;
    ch.eta_tilde = alzer_factor(p.order_u);
    return ch;
}

double v_term_chan(double v, int u, double r, const AttackerChannel& ch) {
    if (u < 0) throw std::invalid_argument("v_term: u must be >= 0");
    if (u == 0 || v <= 0.0) return 1.0;
    const double vue = v * u * ch.eta_tilde;
    const double kappa = vue * ch.ratio * pow_2alpha(r, ch.alpha);
    const double pgfl_exp =
        2.0 * M_PI * ch.lambda_b * interference_exclusion_integral(kappa, ch.r0, ch.alpha);
    return std::exp(-pgfl_exp - vue * (ch.ratio - 1.0));
}

namespace {

// 1 - sum_{u=0}^U (-1)^u C(U,u) V_u, evaluated as the alternating tail from
// u = 1 so the u = 0 unity never has to cancel numerically.
double thinning_term(double x, double r, const AttackerChannel& ch) {
    double t = 0.0;
    for (int u = 1; u <= ch.order_u; ++u) {
        const double term =
            static_cast<double>(binomial(ch.order_u, u)) * v_term_chan(x, u, r, ch);
        t += (u % 2 == 1) ? term : -term;
    }
    return t;
}

double attacker_radial_scale(double x, const AttackerChannel& ch) {
    const double inv_a = 1.0 / ch.alpha;
    const double g = std::tgamma(1.0 - inv_a);
    const double k = M_PI * ch.lambda_b * g * std::pow(x * ch.eta_tilde * ch.ratio, inv_a);
    const double r_char = k > 0.0 ? 1.0 / std::sqrt(k) : 1.0;
    return std::max(ch.r0, r_char);
}

} // namespace

double cdf_attacker_chan(double x, const AttackerChannel& ch, const QuadratureSpec& spec) {
    if (x <= 0.0) return 0.0;
    if (ch.lambda_e == 0.0) return 1.0;
    auto integrand = [&](double r) { return thinning_term(x, r, ch) * r; };
    const QuadResult h = integrate_semi_infinite(integrand, ch.r0, attacker_radial_scale(x, ch),
                                                 spec, "attacker CDF radial integral");
    return std::exp(-2.0 * M_PI * ch.lambda_e * h.value);
}

double pdf_attacker_chan(double x, const AttackerChannel& ch, const QuadratureSpec& spec) {
    if (x <= 0.0) return 0.0;
    if (ch.lambda_e == 0.0) return 0.0;
    const double cdf = cdf_attacker_chan(x, ch, spec);
    if (cdf == 0.0) return 0.0; // the derivative factor is swamped anyway

    auto integrand = [&](double r) {
        const double r2a = pow_2alpha(r, ch.alpha);
        double sum = 0.0;
        for (int u = 1; u <= ch.order_u; ++u) {
            const double ue = u * ch.eta_tilde;
            const double kappa = x * ue * ch.ratio * r2a;
            const double decay_rate =
                ue * (ch.ratio - 1.0) +
                2.0 * M_PI * ch.lambda_b *
                    interference_exclusion_dintegral(kappa, ch.r0, ch.alpha) * (kappa / x);
            const double term = static_cast<double>(binomial(ch.order_u, u)) *
                                v_term_chan(x, u, r, ch) * decay_rate;
            sum += (u % 2 == 1) ? term : -term;
        }
        return sum * r;
    };
    const QuadResult d = integrate_semi_infinite(integrand, ch.r0, attacker_radial_scale(x, ch),
                                                 spec, "attacker PDF radial integral");
    return cdf * 2.0 * M_PI * ch.lambda_e * d.value;
}

namespace {

// Smallest z beyond which the attacker SINR tail mass is negligible.
double attacker_tail_cut(const AttackerChannel& ch, const QuadratureSpec& spec, double eps) {
    double z = ch.supremum();
    for (int i = 0; i < 200; ++i) {
        if (1.0 - cdf_attacker_chan(z, ch, spec) < eps) return z;
        z *= 1.5;
    }
    throw NumericalError("attacker SINR tail does not vanish", "SOP tail cut");
}

// The attacker CDF rises from 0 to ~1 over a few decades of x that sit well
// below the single-cell supremum, so fixed-scale panels condition the outer
// integrals badly. bulk_scale finds the transition region cheaply.
double bulk_scale(const AttackerChannel& ch, const QuadratureSpec& spec) {
    double z = ch.supremum();
    for (int i = 0; i < 1200 && z > 1e-300; ++i) {
        if (cdf_attacker_chan(z, ch, spec) <= 0.5) return z;
        z *= 0.5;
    }
    return z;
}

// Integrates f over [lo_anchor * 1e-6, hi] with panel widths growing
// geometrically, matching the integrand's log-scale structure.
QuadResult integrate_geometric(const Integrand& f, double lo, double hi,
                               const QuadratureSpec& spec, const std::string& label) {
    QuadResult acc{0.0, 0.0};
    double a = lo;
    while (a < hi) {
        const double b = std::min(2.0 * a, hi);
        const QuadResult part = integrate(f, a, b, spec, label);
        acc.value += part.value;
        acc.abs_error += part.abs_error;
        a = b;
    }
    return acc;
}

} // namespace

AnalyticResult leakage_chan(const AttackerChannel& ch, const QuadratureSpec& spec) {
    const QuadratureSpec inner = inner_spec(spec);
    auto integrand = [&](double x) {
        return (1.0 - cdf_attacker_chan(x, ch, inner)) / (1.0 + x);
    };
    const double x_med = bulk_scale(ch, inner);
    const double x_lo = x_med * 1e-6;
    const double x_cut = attacker_tail_cut(ch, inner, 1e-11);
    // below x_lo the survival factor is 1 to ~1e-300; the head integrates
    // exactly to log1p(x_lo)
    QuadResult q = integrate_geometric(integrand, x_lo, x_cut, spec, "leakage rate integral");
    q.value += std::log1p(x_lo);
    // tail above x_cut: survival < 1e-11 and falling exponentially
    q.abs_error += 1e-11;
    return {q.value / std::log(2.0), q.abs_error / std::log(2.0)};
}

AnalyticResult outage_against_attacker(const std::function<double(double)>& threshold,
                                       const std::function<double(double)>& threshold_derivative,
                                       UserKind kind, const AttackerChannel& ch,
                                       const SystemParams& p, const QuadratureSpec& spec,
                                       double pole_z) {
    // Integrated by parts: with G(z) = F_ordered(threshold(z)) and F the
    // attacker CDF, P = integral of G dF = G(z_hi) - int_0^z_hi F(z) G'(z) dz
    // (G reaches 1 at a finite pole; past z_hi the attacker tail mass is
    // negligible). The direct pdf form is an alternating sum whose leading
    // orders cancel, which turns to noise at the small-z end of the
    // attacker distribution; this form only ever evaluates the CDFs.
    const double tail_eps = 1e-11;
    const QuadratureSpec inner = inner_spec(spec);

    auto g_prime = [&](double z) {
        const double thr = threshold(z);
        if (thr == kInf) return 0.0;
        return cdf_S_ordered_derivative(thr, kind, p) * threshold_derivative(z);
    };
    auto integrand = [&](double z) { return cdf_attacker_chan(z, ch, inner) * g_prime(z); };

    AnalyticResult out;
    if (pole_z < kInf) {
        // G' grows like (pole_z - z)^(-1/2) toward the pole (the threshold
        // denominator is linear in z); u = sqrt(pole_z - z) regularizes it.
        const double u_max = std::sqrt(pole_z);
        auto mapped = [&](double u) {
            const double z = pole_z - u * u;
            if (z <= 0.0) return 0.0;
            return integrand(z) * 2.0 * u;
        };
        const QuadResult q = integrate(mapped, 0.0, u_max, spec, "SOP z integral");
        out.value = 1.0 - q.value;
        out.abs_error = q.abs_error;
    } else {
        const double z_cut = attacker_tail_cut(ch, inner, tail_eps);
        const QuadResult q = integrate(integrand, 0.0, z_cut, spec, "SOP z integral");
        out.value = cdf_S_ordered(threshold(z_cut), kind, p) - q.value;
        out.abs_error = q.abs_error + tail_eps;
    }
    return clamp_probability(out, "SOP z integral");
}

AnalyticResult clamp_probability(AnalyticResult r, const std::string& label) {
    if (r.value < 0.0) {
        if (-r.value > r.abs_error + 1e-12)
            throw NumericalError("probability result below 0 beyond its error bound", label);
        r.value = 0.0;
    } else if (r.value > 1.0) {
        if (r.value - 1.0 > r.abs_error + 1e-12)
            throw NumericalError("probability result above 1 beyond its error bound", label);
        r.value = 1.0;
    }
    return r;
}

} // namespace detail

double v_term(double v, double vtilde, int u, double r, const SystemParams& p) {
    if (u < 0) throw std::invalid_argument("v_term: u must be >= 0");
    if (u == 0 || v <= 0.0) return 1.0;
    if (p.d_attacker == 0.0) return 0.0; // limit of exp(-v*u*eta*(ratio-1)) as ratio -> inf
    const double big_r = p.a0 / p.b0 + p.a1 / p.b1;
    detail::AttackerChannel ch;
    ch.ratio = big_r * vtilde / p.d_attacker;
    if (!(ch.ratio > 1.0)) throw std::invalid_argument("v_term: R*vtilde/d must be > 1");
    ch.lambda_b = p.lambda_b;
    ch.lambda_e = p.lambda_e;
    ch.r0 = p.r0;
    ch.alpha = p.alpha;
    ch.order_u = p.order_u;
    ch.eta_tilde = alzer_factor(p.order_u);
    return detail::v_term_chan(v, u, r, ch);
}

double cdf_attacker_sinr(double x, Message m, const SystemParams& p, const QuadratureSpec& spec) {
    if (x < 0.0) throw std::invalid_argument("cdf_attacker_sinr: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (p.lambda_e == 0.0 || p.d_attacker == 0.0) return 1.0; // SINR degenerate at 0
    return detail::cdf_attacker_chan(x, detail::attacker_channel(m, p), spec);
}

double pdf_attacker_sinr(double x, Message m, const SystemParams& p, const QuadratureSpec& spec) {
    if (!(x > 0.0)) throw std::invalid_argument("pdf_attacker_sinr: x must be > 0");
    if (p.lambda_e == 0.0 || p.d_attacker == 0.0) return 0.0;
    return detail::pdf_attacker_chan(x, detail::attacker_channel(m, p), spec);
}

// ---- metrics ----------------------------------------------------------------

AnalyticResult ergodic_rate_central(const SystemParams& p, const QuadratureSpec& spec) {
    const QuadratureSpec inner = inner_spec(spec);
    auto integrand = [&](double t) {
        const double f = (std::exp2(t) - 1.0) * p.b0 / p.a0;
        const double surv = f_tilde(f, p, inner);
        return 1.0 - (1.0 - surv) * (1.0 - surv);
    };
    const QuadResult q = integrate_until_negligible(integrand, 0.0, spec, "central rate integral");
    return {q.value, q.abs_error};
}

AnalyticResult ergodic_rate_second(const SystemParams& p, const QuadratureSpec& spec) {
    const double cap = p.a1 * p.b0 / (p.b1 * p.a0);
    const double t_max = std::log2(1.0 + cap);
    const QuadratureSpec inner = inner_spec(spec);
    auto integrand = [&](double t) {
        const double grow = std::exp2(t) - 1.0;
        const double den = p.a1 - grow * p.a0 * p.b1 / p.b0;
        if (den <= 0.0) return 0.0; // at/beyond the integration cap
        const double surv = f_tilde(grow * p.b1 / den, p, inner);
        return surv * surv;
    };
    const QuadResult q = integrate(integrand, 0.0, t_max, spec, "second-user rate integral");
    return {q.value, q.abs_error};
}

AnalyticResult ergodic_leakage(Message m, const SystemParams& p, const QuadratureSpec& spec) {
    if (p.lambda_e == 0.0 || p.d_attacker == 0.0) return {0.0, 0.0};
    return detail::leakage_chan(detail::attacker_channel(m, p), spec);
}

AnalyticResult secrecy_rate(UserKind kind, const SystemParams& p, const QuadratureSpec& spec) {
    const AnalyticResult rate = kind == UserKind::central ? ergodic_rate_central(p, spec)
                                                          : ergodic_rate_second(p, spec);
    const Message m = kind == UserKind::central ? Message::w0 : Message::w1;
    const AnalyticResult leak = ergodic_leakage(m, p, spec);
    const double v = rate.value - leak.value;
    return {std::max(0.0, v), rate.abs_error + leak.abs_error};
}

AnalyticResult sop_central(const SystemParams& p, const QuadratureSpec& spec) {
    const double big_r = p.a0 / p.b0 + p.a1 / p.b1;
    const double gain = std::exp2(p.rate_target0);
    auto threshold = [&](double z) { return big_r * p.b0 * (gain * (1.0 + z) - 1.0) / p.a0; };
    auto threshold_d = [&](double) { return big_r * p.b0 * gain / p.a0; };

    if (p.lambda_e == 0.0 || p.d_attacker == 0.0) {
        return {cdf_S_ordered(threshold(0.0), UserKind::central, p), 0.0};
    }
    return detail::outage_against_attacker(threshold, threshold_d, UserKind::central,
                                           detail::attacker_channel(Message::w0, p), p, spec,
                                           kInf);
}

AnalyticResult sop_second(const SystemParams& p, const QuadratureSpec& spec) {
    const double big_r = p.a0 / p.b0 + p.a1 / p.b1;
    const double gain = std::exp2(p.rate_target1);
    // Conditional outage is certain once the SIC-limited SINR cap is below the
    // required threshold: (1+z) 2^Rt reaching 1 + a1 b0 / (a0 b1).
    const double pole_z = (1.0 + p.a1 * p.b0 / (p.a0 * p.b1)) / gain - 1.0;
    if (pole_z <= 0.0) return {1.0, 0.0};

    auto threshold = [&](double z) {
        const double grow = gain * (1.0 + z) - 1.0;
        const double den = p.a1 - grow * p.a0 * p.b1 / p.b0;
        if (den <= 0.0) return kInf;
        return grow * big_r * p.b1 / den;
    };
    auto threshold_d = [&](double z) {
        const double grow = gain * (1.0 + z) - 1.0;
        const double den = p.a1 - grow * p.a0 * p.b1 / p.b0;
        if (den <= 0.0) return 0.0;
        return gain * big_r * p.b1 * p.a1 / (den * den);
    };

    if (p.lambda_e == 0.0 || p.d_attacker == 0.0) {
        return {cdf_S_ordered(threshold(0.0), UserKind::second, p), 0.0};
    }
    return detail::outage_against_attacker(threshold, threshold_d, UserKind::second,
                                           detail::attacker_channel(Message::w1, p), p, spec,
                                           pole_z);
}

AnalyticResult sop_total(const SystemParams& p, const QuadratureSpec& spec) {
    const AnalyticResult p0 = sop_central(p, spec);
    const AnalyticResult p1 = sop_second(p, spec);
    const double v = 1.0 - (1.0 - p0.value) * (1.0 - p1.value);
    const double err = (1.0 - p1.value) * p0.abs_error + (1.0 - p0.value) * p1.abs_error;
    return detail::clamp_probability({v, err}, "total SOP");
}

} // namespace nomasec
