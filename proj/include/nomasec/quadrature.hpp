#pragma once
// Adaptive Gauss-Kronrod quadrature with the semi-infinite mapping used
// throughout the analytic engine. All routines report an absolute error
// estimate alongside the value and throw NumericalError (tagged with the
// integral's name) instead of returning garbage on non-convergence.

#include <functional>
#include <stdexcept>
#include <string>

namespace nomasec {

struct QuadratureSpec {
    double rel_tol = 1e-6;
    double abs_tol = 1e-9;
    int max_subdivisions = 4000; // panel budget for the global-adaptive loop
    double panel_width = 2.0;    // scan step for integrate_until_negligible
    double negligible = 1e-8;    // integrand cutoff for the tail scan
    int negligible_run = 3;      // consecutive quiet panels before stopping

    QuadratureSpec tightened(double rel, double abs) const {
        QuadratureSpec q = *this;
        q.rel_tol = rel;
        q.abs_tol = abs;
        return q;
    }
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
};

class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, std::string context)
        : std::runtime_error(what + " [" + context + "]"), context_(std::move(context)) {}
    const std::string& context() const { return context_; }

private:
    std::string context_;
};

using Integrand = std::function<double(double)>;

// Globally adaptive GK15 on a finite interval.
QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                     const std::string& label);

// int_lower^inf f. The tail beyond S = max(lower, scale) is mapped to (0,1]
// via x = S/t; [lower, S] is handled directly. `scale` should be a
// characteristic length of the integrand so the mapped mass is resolvable.
QuadResult integrate_semi_infinite(const Integrand& f, double lower, double scale,
                                   const QuadratureSpec& spec, const std::string& label);

// Scans panels [start + k*w, start + (k+1)*w] until the integrand stays below
// spec.negligible for spec.negligible_run consecutive panels. Used for the
// rate integrals whose support is unbounded but decays exponentially.
QuadResult integrate_until_negligible(const Integrand& f, double start,
                                      const QuadratureSpec& spec, const std::string& label);

} // namespace nomasec
