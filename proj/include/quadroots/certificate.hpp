#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "quadroots/branch.hpp"
#include "quadroots/errors.hpp"

namespace quadroots {

/// Parameters of the comparison function h(z) = alpha z + beta and of the
/// finite keyhole contour (inner radius epsilon, outer radius R).
struct CertificateParams {
    double alpha = 0.0;
    double beta = 0.0;
    double epsilon = 0.0;
    double R = 0.0;
};

struct CertificateReport {
    CertificateParams params;
    // max over samples of |f_k(z)| / |h(z)|, per arc and per branch
    struct ArcRatios {
        std::string arc;
        std::vector<double> max_ratio; // indexed by branch
    };
    std::vector<ArcRatios> arcs;
    bool pass = false;
};

/// Picks (alpha, beta, epsilon, R) so that the collected inequality system
///   alpha - beta > (nB)^{2/n} R
///   alpha * epsilon < beta
///   (alpha + 1) epsilon + (2B)^{1/n} < beta
///   alpha >= (nB)^{1/n}
/// holds by construction: R covers all roots of f, beta clears the inner
/// bound with slack 2, alpha dominates the outer arc, epsilon is small
/// enough for the segment bounds and stays clear of radicand zeros.
inline CertificateParams select_parameters(const ShiftedProblem& sp) {
    const int n = sp.degree();
    const double B = sp.B;
    CertificateParams p;

    double max_root = 0.0;
    for (const Complex& r : sp.shifted_roots) max_root = std::max(max_root, std::abs(r));
    p.R = 1.0 + 2.0 * max_root;

    p.beta = std::pow(2.0 * B, 1.0 / n) + 2.0;
    p.alpha = std::max(std::pow(n * B, 1.0 / n),
                       p.beta + std::pow(n * B, 2.0 / n) * p.R + 1.0);

    double zero_clearance = p.R; // distance of radicand zeros from the ray
    for (const Complex& w : sp.radicand_zeros) {
        const double d = (w.real() >= 0.0) ? std::abs(w.imag()) : std::abs(w);
        zero_clearance = std::min(zero_clearance, d);
    }
    p.epsilon = 0.5 * std::min({p.beta / p.alpha, 2.0 / (p.alpha + 1.0), zero_clearance});
    return p;
}

namespace detail {

inline void record_ratios(const ShiftedProblem& sp, Complex z, double phi,
                          const CertificateParams& p, std::vector<double>& max_ratio) {
    const int n = sp.degree();
    const double h = std::abs(p.alpha * z + p.beta);
    const double w = std::abs(eval(sp.radicand_poly, z));
    if (h < 1e-12 * (p.alpha * p.R) || w < arg_floor(sp.radicand_poly))
        throw ContourTouchesZero("comparison function or radicand vanished at a contour sample");
    const double rho = std::pow(w, 1.0 / n);
    for (int k = 0; k < n; ++k) {
        const Complex fk = z - rho * std::exp(Complex(0.0, (phi + kTwoPi * k) / n));
        max_ratio[static_cast<size_t>(k)] =
            std::max(max_ratio[static_cast<size_t>(k)], std::abs(fk) / h);
    }
}

} // namespace detail

/// Samples |f_k(z)| / |h(z)| on every arc of the finite keyhole contour.
/// Segments are Chebyshev-spaced, circular arcs uniform in angle. Passing
/// means every sampled ratio is below one; together with h having its single
/// zero -beta/alpha inside the contour (epsilon < beta/alpha, checked) this
/// is numerical evidence for the one-root-per-branch count. A sampled
/// certificate is evidence, not a proof.
inline CertificateReport verify_certificate(const ShiftedProblem& sp,
                                            const CertificateParams& p,
                                            int samples_per_arc = 256) {
    assert(samples_per_arc >= 16);
    if (!(p.epsilon < p.beta / p.alpha))
        throw ContourTouchesZero("epsilon >= beta/alpha: comparison zero not inside the contour");

    const int n = sp.degree();
    CertificateReport rep;
    rep.params = p;
    const Polynomial& W = sp.radicand_poly;

    auto make_arc = [&](const std::string& name) -> std::vector<double>& {
        rep.arcs.push_back({name, std::vector<double>(static_cast<size_t>(n), 0.0)});
        return rep.arcs.back().max_ratio;
    };

    const double seg_end = std::sqrt(std::max(p.R * p.R - p.epsilon * p.epsilon, 0.0));
    std::vector<double> cheb(static_cast<size_t>(samples_per_arc));
    for (int m = 0; m < samples_per_arc; ++m)
        cheb[static_cast<size_t>(m)] =
            seg_end * 0.5 * (1.0 - std::cos(M_PI * m / (samples_per_arc - 1)));

    // upper segment z = x + i eps, continued from the base by a vertical hop
    auto& upper_ratios = make_arc("upper_segment");
    double phi = continued_arg(
        W, std::vector<Complex>{Complex(0.0, 0.0), Complex(0.0, p.epsilon)}, sp.base_phi());
    double phi_upper_right = phi;
    {
        Complex prev(0.0, p.epsilon);
        for (int m = 0; m < samples_per_arc; ++m) {
            const Complex z(cheb[static_cast<size_t>(m)], p.epsilon);
            phi = continued_arg(W, std::vector<Complex>{prev, z}, phi);
            prev = z;
            detail::record_ratios(sp, z, phi, p, upper_ratios);
        }
        phi_upper_right = phi;
    }

    // outer arc |z| = R, counterclockwise from the upper-right junction
    auto& outer_ratios = make_arc("outer_arc");
    {
        const double theta0 = std::asin(p.epsilon / p.R);
        double arc_phi = continued_arg(
            W,
            std::vector<Complex>{Complex(seg_end, p.epsilon),
                                 p.R * Complex(std::cos(theta0), std::sin(theta0))},
            phi_upper_right);
        Complex prev = p.R * Complex(std::cos(theta0), std::sin(theta0));
        for (int m = 0; m < samples_per_arc; ++m) {
            const double theta =
                theta0 + (kTwoPi - 2.0 * theta0) * m / (samples_per_arc - 1);
            const Complex z = p.R * Complex(std::cos(theta), std::sin(theta));
            arc_phi = continued_arg(W, std::vector<Complex>{prev, z}, arc_phi);
            prev = z;
            detail::record_ratios(sp, z, arc_phi, p, outer_ratios);
        }
    }

    // lower segment z = x - i eps, continued from the lower-edge base
    auto& lower_ratios = make_arc("lower_segment");
    {
        double lo_phi = continued_arg(
            W, std::vector<Complex>{Complex(0.0, 0.0), Complex(0.0, -p.epsilon)},
            sp.base_phi() + kTwoPi * sp.Z);
        Complex prev(0.0, -p.epsilon);
        for (int m = 0; m < samples_per_arc; ++m) {
            const Complex z(cheb[static_cast<size_t>(m)], -p.epsilon);
            lo_phi = continued_arg(W, std::vector<Complex>{prev, z}, lo_phi);
            prev = z;
            detail::record_ratios(sp, z, lo_phi, p, lower_ratios);
        }
    }

    // small semicircle |z| = eps in the left half-plane
    auto& semi_ratios = make_arc("semicircle");
    {
        double semi_phi = continued_arg(
            W, std::vector<Complex>{Complex(0.0, 0.0), Complex(0.0, p.epsilon)},
            sp.base_phi());
        Complex prev(0.0, p.epsilon);
        for (int m = 0; m < samples_per_arc; ++m) {
            const double theta = M_PI / 2.0 + M_PI * m / (samples_per_arc - 1);
            const Complex z = p.epsilon * Complex(std::cos(theta), std::sin(theta));
            semi_phi = continued_arg(W, std::vector<Complex>{prev, z}, semi_phi);
            prev = z;
            detail::record_ratios(sp, z, semi_phi, p, semi_ratios);
        }
    }

    rep.pass = true;
    for (const auto& arc : rep.arcs)
        for (double r : arc.max_ratio)
            if (!(r < 1.0)) rep.pass = false;
    return rep;
}

} // namespace quadroots
