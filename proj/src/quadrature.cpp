#include "nomasec/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace nomasec {

namespace {

using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel eval_panel(const Integrand& f, double a, double b, const std::string& label) {
    double err = 0.0;
    double v = GK15::integrate(f, a, b, 0, 0.0, &err);
    if (!std::isfinite(v)) {
        throw NumericalError("non-finite integrand value", label);
    }
    return {a, b, v, err};
}

} // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                     const std::string& label) {
    if (!(b > a)) return {0.0, 0.0};

    std::priority_queue<Panel> heap;
    heap.push(eval_panel(f, a, b, label));
    double total = heap.top().value;
    double err = heap.top().error;
    int panels = 1;

    while (err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)) &&
           panels < spec.max_subdivisions) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval exhausted at double precision; keep its estimate
            total += 0.0;
            heap.push(worst);
            break;
        }
        Panel left = eval_panel(f, worst.a, mid, label);
        Panel right = eval_panel(f, mid, worst.b, label);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }

    if (err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)) &&
        panels >= spec.max_subdivisions) {
        throw NumericalError("quadrature did not converge within the subdivision budget", label);
    }
    return {total, err};
}

QuadResult integrate_semi_infinite(const Integrand& f, double lower, double scale,
                                   const QuadratureSpec& spec, const std::string& label) {
    const double split = std::max(lower, scale > 0 ? scale : 1.0);
    QuadResult head{0.0, 0.0};
    if (split > lower) {
        head = integrate(f, lower, split, spec, label);
    }
    // x = split / t maps [split, inf) onto (0, 1]; GK nodes are interior so
    // t = 0 is never evaluated.
    auto mapped = [&](double t) {
        const double x = split / t;
        return f(x) * split / (t * t);
    };
    QuadResult tail = integrate(mapped, 0.0, 1.0, spec, label);
    return {head.value + tail.value, head.abs_error + tail.abs_error};
}

QuadResult integrate_until_negligible(const Integrand& f, double start,
                                      const QuadratureSpec& spec, const std::string& label) {
    QuadResult acc{0.0, 0.0};
    int quiet = 0;
    const int max_panels = 512;
    for (int k = 0; k < max_panels; ++k) {
        const double a = start + k * spec.panel_width;
        const double b = a + spec.panel_width;
        double peak = 0.0;
        auto probed = [&](double x) {
            const double v = f(x);
            peak = std::max(peak, std::fabs(v));
            return v;
        };
        QuadResult part = integrate(probed, a, b, spec, label);
        acc.value += part.value;
        acc.abs_error += part.abs_error;
        quiet = (peak < spec.negligible) ? quiet + 1 : 0;
        if (quiet >= spec.negligible_run) return acc;
    }
    throw NumericalError("integrand tail did not fall below the cutoff", label);
}

} // namespace nomasec
