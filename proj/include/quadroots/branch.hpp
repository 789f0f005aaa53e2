#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "quadroots/errors.hpp"
#include "quadroots/polynomial.hpp"

namespace quadroots {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class Edge { upper, lower };

/// Continuously tracked argument samples of the radicand along one edge of
/// the cut. base_phi is the argument at x = 0; on the lower edge it exceeds
/// the upper base by 2*pi*Z.
struct ArgTrack {
    Edge edge = Edge::upper;
    double base_phi = 0.0;
    std::vector<std::pair<double, double>> samples; // (x, phi), consecutive |dphi| < pi
};

namespace detail {

inline double arg_floor(const Polynomial& W) {
    return 1e-13 * (1.0 + coefficient_scale(W));
}

inline double continue_segment(const Polynomial& W, Complex a, Complex b, double phi,
                               double floor, int depth) {
    const Complex wa = eval(W, a);
    const Complex wb = eval(W, b);
    if (std::abs(wa) < floor || std::abs(wb) < floor)
        throw PathThroughZero("argument continuation hit |W| below the zero floor");
    const double step = std::arg(wb / wa);
    if (std::abs(step) < M_PI / 2.0 || depth > 60) {
        if (depth > 60)
            throw PathThroughZero("argument continuation failed to resolve a step");
        return phi + step;
    }
    const Complex mid = 0.5 * (a + b);
    const double pm = continue_segment(W, a, mid, phi, floor, depth + 1);
    return continue_segment(W, mid, b, pm, floor, depth + 1);
}

} // namespace detail

/// Continuous argument of W at the end of a polyline path, unwrapped from
/// phi0 at the path start. Steps where the argument would move by pi/2 or
/// more are bisected adaptively.
inline double continued_arg(const Polynomial& W, std::span<const Complex> path, double phi0) {
    assert(path.size() >= 1);
    const double floor = detail::arg_floor(W);
    double phi = phi0;
    for (size_t i = 0; i + 1 < path.size(); ++i)
        phi = detail::continue_segment(W, path[i], path[i + 1], phi, floor, 0);
    return phi;
}

/// Radicand W(z) = -(b1 z^{n-1} + ... + bn) of a monic polynomial f.
inline Polynomial radicand(const Polynomial& f) {
    assert(f.degree() >= 1);
    std::vector<Complex> w(f.coeffs().begin() + 1, f.coeffs().end());
    for (Complex& c : w) c = -c;
    return Polynomial(std::move(w));
}

/// Number of radicand zeros off the positive real axis. The shift planner
/// guarantees no zero sits within `margin` of the ray [0, inf); under that
/// precondition every zero counts, so the result equals deg W. Crossing the
/// cut advances the continued argument by 2*pi times this count.
inline int branch_shift_count(const Polynomial& W, const std::vector<Complex>& zeros,
                              double margin) {
    for (const Complex& w : zeros) {
        const double d = (w.real() >= 0.0) ? std::abs(w.imag()) : std::abs(w);
        if (d < margin)
            throw RadicandOnAxis("radicand zero within margin of the ray [0, inf)");
    }
    return static_cast<int>(zeros.size());
}

/// A shifted root-finding problem: f(z) = P(z + A) with every root of f in
/// the open left half-plane and the radicand zero-free near [0, inf).
/// Branch evaluations share a lazily grown argument track; extension is
/// mutex-guarded so concurrent per-branch work stays safe.
class ShiftedProblem {
public:
    Polynomial original;             // monic, square-free, nonzero constant term
    double A = 0.0;                  // shift, > M
    double M = 0.0;                  // 1 + max |a_j|
    Polynomial shifted;              // f = P(z + A)
    Polynomial radicand_poly;        // W
    int Z = 0;                       // branch shift count (= deg W)
    double B = 0.0;                  // max |b_j|
    double radicand_margin = 0.0;
    std::vector<Complex> radicand_zeros; // oracle zeros of W
    std::vector<Complex> shifted_roots;  // oracle roots of f

    ShiftedProblem() : cache_(std::make_shared<Cache>()) {}

    int degree() const { return shifted.degree(); }

    double base_phi() const {
        double phi = std::arg(eval(radicand_poly, Complex(0.0)));
        if (phi < 0.0) phi += kTwoPi;
        return phi;
    }

    /// Continued argument of W at x on the upper edge, extended lazily from
    /// the nearest known anchor.
    double upper_arg(double x) const {
        assert(x >= 0.0);
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto& anchors = cache_->anchors;
        if (anchors.empty()) anchors.emplace(0.0, base_phi());
        auto it = anchors.upper_bound(x);
        assert(it != anchors.begin());
        --it;
        const Complex from(it->first, 0.0);
        const double phi = continued_arg(radicand_poly,
                                         std::vector<Complex>{from, Complex(x, 0.0)}, it->second);
        anchors.emplace(x, phi);
        return phi;
    }

    double edge_arg(double x, Edge edge) const {
        return upper_arg(x) + (edge == Edge::lower ? kTwoPi * Z : 0.0);
    }

    /// Snapshot of the cached track for one edge.
    ArgTrack track(Edge edge) const {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        ArgTrack t;
        t.edge = edge;
        const double shift = (edge == Edge::lower) ? kTwoPi * Z : 0.0;
        t.base_phi = base_phi() + shift;
        for (const auto& [x, phi] : cache_->anchors) t.samples.emplace_back(x, phi + shift);
        return t;
    }

    /// Continued argument of W at +i (upper path: edge to x=1, then the unit
    /// quarter circle) and at -i (lower path mirror). Cached after first use.
    double pole_arg(bool upper_pole) const {
        {
            std::lock_guard<std::mutex> lock(cache_->mutex);
            auto& slot = upper_pole ? cache_->phi_at_i : cache_->phi_at_minus_i;
            if (slot) return *slot;
        }
        const double phi1 = upper_arg(1.0);
        std::vector<Complex> arc;
        constexpr int kArcSteps = 32;
        for (int s = 0; s <= kArcSteps; ++s) {
            const double t = static_cast<double>(s) / kArcSteps;
            const double theta = upper_pole ? (M_PI / 2.0) * t : kTwoPi - (M_PI / 2.0) * t;
            arc.emplace_back(std::cos(theta), std::sin(theta));
        }
        const double start = upper_pole ? phi1 : phi1 + kTwoPi * Z;
        const double phi = continued_arg(radicand_poly, arc, start);
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto& slot = upper_pole ? cache_->phi_at_i : cache_->phi_at_minus_i;
        slot = phi;
        return phi;
    }

private:
    struct Cache {
        std::mutex mutex;
        std::map<double, double> anchors; // x -> phi on the upper edge
        std::optional<double> phi_at_i;
        std::optional<double> phi_at_minus_i;
    };
    std::shared_ptr<Cache> cache_;
};

/// Branch value at z with continued argument phi: z - |W(z)|^{1/n} e^{i(phi+2 pi k)/n}.
inline Complex branch_value(const ShiftedProblem& sp, int k, Complex z, double phi) {
    const int n = sp.degree();
    const double rho = std::pow(std::abs(eval(sp.radicand_poly, z)), 1.0 / n);
    return z - rho * std::exp(Complex(0.0, (phi + kTwoPi * k) / n));
}

/// k-th branch value on one edge of the cut at x >= 0. The lower edge
/// realizes the branch after a full turn around the cut.
inline Complex edge_value(const ShiftedProblem& sp, int k, double x, Edge edge) {
    assert(k >= 0 && k < sp.degree());
    return branch_value(sp, k, Complex(x, 0.0), sp.edge_arg(x, edge));
}

/// Branch values at the fixed poles: (f_k(i), f_k(-i)). The upper value is
/// continued through the upper half of the slit domain, the lower through
/// the lower half from the lower-edge base.
inline std::pair<Complex, Complex> pole_values(const ShiftedProblem& sp, int k) {
    const Complex at_i = branch_value(sp, k, Complex(0.0, 1.0), sp.pole_arg(true));
    const Complex at_minus_i = branch_value(sp, k, Complex(0.0, -1.0), sp.pole_arg(false));
    return {at_i, at_minus_i};
}

} // namespace quadroots
