#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include "quadroots/polynomial.hpp"

namespace quadroots {

struct DurandKernerResult {
    std::vector<Complex> roots;
    bool converged = false;
    int iterations = 0;
};

namespace detail {

// Horner value together with the magnitude sum sum |c_i| |z|^(n-i); the
// latter bounds the evaluation rounding noise.
inline std::pair<Complex, double> eval_with_noise_scale(const Polynomial& p, Complex z) {
    Complex acc(0.0);
    double s = 0.0;
    const double az = std::abs(z);
    for (const Complex& c : p.coeffs()) {
        acc = acc * z + c;
        s = s * az + std::abs(c);
    }
    return {acc, s};
}

} // namespace detail

/// Simultaneous (Weierstrass) iteration for all roots of a polynomial.
/// Kept deliberately independent of the contour machinery: this is the
/// validation oracle. Initial guesses sit on a circle of radius
/// 1 + max|coeff| at angles offset from the roots of unity so symmetric
/// configurations cannot stall the sweep. A root stops moving once its
/// residual reaches the evaluation noise floor; the sweep converges when
/// every update falls below tol relative to 1 + |z| or every root has hit
/// its floor.
inline DurandKernerResult durand_kerner(const Polynomial& p_in, double tol = 1e-12,
                                        int max_iter = 2000) {
    constexpr double kAngleOffset = 0.4;
    constexpr double kNoiseFactor = 8.0 * std::numeric_limits<double>::epsilon();
    const Polynomial p = monic(p_in);
    const int n = p.degree();
    DurandKernerResult out;
    if (n == 0) {
        out.converged = true;
        return out;
    }

    double radius = 0.0;
    for (const Complex& c : p.coeffs()) radius = std::max(radius, std::abs(c));
    radius += 1.0;

    std::vector<Complex> z(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double angle = 2.0 * M_PI * j / n + kAngleOffset;
        z[static_cast<size_t>(j)] = radius * Complex(std::cos(angle), std::sin(angle));
    }

    for (int it = 1; it <= max_iter; ++it) {
        double max_rel_step = 0.0;
        bool all_at_floor = true;
        for (int j = 0; j < n; ++j) {
            const auto [value, noise_scale] =
                detail::eval_with_noise_scale(p, z[static_cast<size_t>(j)]);
            if (std::abs(value) <= kNoiseFactor * noise_scale) continue;
            all_at_floor = false;
            Complex denom(1.0);
            for (int m = 0; m < n; ++m)
                if (m != j) denom *= z[static_cast<size_t>(j)] - z[static_cast<size_t>(m)];
            const Complex step = value / denom;
            z[static_cast<size_t>(j)] -= step;
            max_rel_step = std::max(
                max_rel_step, std::abs(step) / (1.0 + std::abs(z[static_cast<size_t>(j)])));
        }
        if (all_at_floor || max_rel_step < tol) {
            out.roots = std::move(z);
            out.converged = true;
            out.iterations = it;
            return out;
        }
    }
    out.roots = std::move(z);
    out.iterations = max_iter;
    return out;
}

struct RootMatch {
    std::vector<std::pair<int, int>> pairing; // (index in a, index in b)
    double max_distance = 0.0;
    int unmatched_a = 0;
    int unmatched_b = 0;
};

/// Greedy nearest-neighbor matching between two root sets, refined by local
/// pair swaps that reduce the maximum paired distance. Adequate for desk
/// scale (n <= 32); not a general assignment solver.
inline RootMatch match_root_sets(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    RootMatch m;
    const int na = static_cast<int>(a.size());
    const int nb = static_cast<int>(b.size());

    struct Cand {
        double d;
        int i, j;
    };
    std::vector<Cand> cands;
    cands.reserve(static_cast<size_t>(na) * static_cast<size_t>(nb));
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            cands.push_back({std::abs(a[static_cast<size_t>(i)] - b[static_cast<size_t>(j)]), i, j});
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.d < y.d; });

    std::vector<int> pa(static_cast<size_t>(na), -1), pb(static_cast<size_t>(nb), -1);
    for (const Cand& c : cands) {
        if (pa[static_cast<size_t>(c.i)] == -1 && pb[static_cast<size_t>(c.j)] == -1) {
            pa[static_cast<size_t>(c.i)] = c.j;
            pb[static_cast<size_t>(c.j)] = c.i;
        }
    }

    auto dist = [&](int i, int j) { return std::abs(a[static_cast<size_t>(i)] - b[static_cast<size_t>(j)]); };

    // 2-swap passes: improve the bottleneck pairing
    bool improved = true;
    int guard = 0;
    while (improved && guard++ < 64) {
        improved = false;
        for (int i = 0; i < na; ++i) {
            for (int k = i + 1; k < na; ++k) {
                const int j = pa[static_cast<size_t>(i)], l = pa[static_cast<size_t>(k)];
                if (j == -1 || l == -1) continue;
                const double cur = std::max(dist(i, j), dist(k, l));
                const double alt = std::max(dist(i, l), dist(k, j));
                if (alt < cur) {
                    pa[static_cast<size_t>(i)] = l;
                    pa[static_cast<size_t>(k)] = j;
                    pb[static_cast<size_t>(l)] = i;
                    pb[static_cast<size_t>(j)] = k;
                    improved = true;
                }
            }
        }
    }

    for (int i = 0; i < na; ++i) {
        if (pa[static_cast<size_t>(i)] == -1) {
            ++m.unmatched_a;
            continue;
        }
        m.pairing.emplace_back(i, pa[static_cast<size_t>(i)]);
        m.max_distance = std::max(m.max_distance, dist(i, pa[static_cast<size_t>(i)]));
    }
    for (int j = 0; j < nb; ++j)
        if (pb[static_cast<size_t>(j)] == -1) ++m.unmatched_b;
    return m;
}

} // namespace quadroots
