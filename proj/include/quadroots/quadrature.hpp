#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

namespace quadroots {

struct QuadratureEstimate {
    std::complex<double> value{0.0, 0.0};
    double abs_error = 0.0;
    long evaluations = 0;
    /// False when the estimated error never reached the requested tolerance
    /// (subdivision cap hit); the best estimate is still returned.
    bool converged = true;
};

using Integrand = std::function<std::complex<double>(double)>;

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights.
inline constexpr double kron_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kron_weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double gauss_weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
    std::complex<double> value;
    double error;
};

inline PanelResult gauss_kronrod_15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const std::complex<double> fc = f(c);
    std::complex<double> kron = kron_weights[7] * fc;
    std::complex<double> gauss = gauss_weights[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const std::complex<double> lo = f(c - h * kron_nodes[j]);
        const std::complex<double> hi = f(c + h * kron_nodes[j]);
        kron += kron_weights[j] * (lo + hi);
        if (j % 2 == 1) gauss += gauss_weights[j / 2] * (lo + hi);
    }
    double err = std::abs(kron - gauss) * std::abs(h);
    if (!std::isfinite(err)) err = std::numeric_limits<double>::max();
    return {kron * h, err};
}

} // namespace detail

inline constexpr int kSubdivisionCap = 20000;

/// Adaptive Gauss-Kronrod integration of a complex-valued integrand on [a, b].
/// The panel rule never evaluates the endpoints, so one-sided limits at b are
/// handled naturally (open rule).
inline QuadratureEstimate integrate_adaptive(const Integrand& f, double a, double b,
                                             double tol,
                                             int max_intervals = kSubdivisionCap) {
    struct Interval {
        double a, b, err;
        std::complex<double> val;
    };
    auto worse = [](const Interval& x, const Interval& y) { return x.err < y.err; };
    std::priority_queue<Interval, std::vector<Interval>, decltype(worse)> queue(worse);

    auto first = detail::gauss_kronrod_15(f, a, b);
    queue.push({a, b, first.error, first.value});
    std::complex<double> total = first.value;
    double total_err = first.error;
    long evals = 15;

    while (total_err > tol && static_cast<int>(queue.size()) < max_intervals) {
        Interval iv = queue.top();
        queue.pop();
        total -= iv.val;
        total_err -= iv.err;
        const double mid = 0.5 * (iv.a + iv.b);
        auto left = detail::gauss_kronrod_15(f, iv.a, mid);
        auto right = detail::gauss_kronrod_15(f, mid, iv.b);
        evals += 30;
        total += left.value + right.value;
        total_err += left.error + right.error;
        queue.push({iv.a, mid, left.error, left.value});
        queue.push({mid, iv.b, right.error, right.value});
        if (total_err < 0.0) total_err = 0.0;
    }

    return {total, total_err, evals, total_err <= tol};
}

/// Change of variable x = t/(1-t) mapping an integrand over [0, inf) to one
/// over [0, 1). Requires decay at least x^(-1-delta) for integrability.
inline Integrand map_to_unit(Integrand g) {
    return [g = std::move(g)](double t) {
        const double one_minus = 1.0 - t;
        const double x = t / one_minus;
        return g(x) / (one_minus * one_minus);
    };
}

/// Improper integral over [0, inf) via map_to_unit + integrate_adaptive.
inline QuadratureEstimate improper_integral(Integrand g, double tol,
                                            int max_intervals = kSubdivisionCap) {
    return integrate_adaptive(map_to_unit(std::move(g)), 0.0, 1.0, tol, max_intervals);
}

} // namespace quadroots
