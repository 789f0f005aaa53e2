#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quadroots/branch.hpp"
#include "quadroots/errors.hpp"
#include "quadroots/oracle.hpp"
#include "quadroots/polynomial.hpp"
#include "quadroots/quadrature.hpp"

namespace quadroots {

struct SolverConfig {
    double quad_tol = 1e-10;
    bool polish = true;
    int max_A_escalations = 8;
    double denominator_floor = 1e-8;   // relative
    double newton_tol = 1e-13;         // relative step size
    int newton_max_iter = 50;
    ToleranceConfig tol{};
    double oracle_tol = 1e-12;
    int oracle_max_iter = 2000;
    std::optional<double> initial_shift; // override A; still validated
};

struct NewtonResult {
    Complex value;
    bool converged = false;
    int iterations = 0;
};

struct RootReport {
    int branch = -1;                   // -1 marks the deflated root at zero
    Complex xi{0.0, 0.0};              // branch root of the shifted problem
    Complex root{0.0, 0.0};            // xi + A, raw root of P
    std::optional<Complex> polished;
    double residual = 0.0;             // |P| at the reported root
    int multiplicity = 1;
    // diagnostics
    double quad_error = 0.0;
    long quad_evaluations = 0;
    bool quad_converged = true;
    bool polish_converged = false;
    bool flagged = false;
    std::string flag_reason;
};

struct SolveResult {
    std::vector<RootReport> reports;
    double A = 0.0;
    int Z = 0;
    int escalations = 0;
    int degree = 0;
    int zero_multiplicity = 0;
    Complex leading_coefficient{1.0, 0.0};
    bool branch_roots_distinct = true;
    int total_multiplicity = 0;
    std::optional<ShiftedProblem> problem;
};

namespace detail {

inline double ray_distance(Complex w) {
    return (w.real() >= 0.0) ? std::abs(w.imag()) : std::abs(w);
}

// distance from w to the unit quarter arcs used by the pole continuation
// paths, including the edge segment [0, 1]
inline double pole_path_distance(Complex w) {
    double d = std::abs(std::abs(w) - 1.0); // distance to the full unit circle
    if (w.real() < 0.0) {
        // arcs live in the right half-plane; measure to their endpoints
        d = std::min({std::abs(w - Complex(0.0, 1.0)), std::abs(w - Complex(0.0, -1.0)),
                      std::abs(w - Complex(1.0, 0.0))});
    }
    return d;
}

} // namespace detail

/// Builds a validated ShiftedProblem for a monic square-free polynomial with
/// nonzero constant term. Starts at A = M + 1 and doubles the shift until
/// every root of f sits in the open left half-plane, the radicand is
/// zero-free near the ray and near the pole continuation paths, and f(0) is
/// well away from zero.
inline ShiftedProblem plan_shift(const Polynomial& p_sf, const SolverConfig& config = {}) {
    assert(p_sf.degree() >= 1);
    const double M = bound_M(p_sf);
    double A = config.initial_shift.value_or(M + 1.0);
    if (A <= M) A = M + 1.0;

    std::string last_issue = "no attempt made";
    for (int attempt = 0; attempt <= config.max_A_escalations; ++attempt, A *= 2.0) {
        ShiftedProblem sp;
        sp.original = p_sf;
        sp.A = A;
        sp.M = M;
        sp.shifted = taylor_shift(p_sf, A);
        sp.radicand_poly = radicand(sp.shifted);

        sp.B = 0.0;
        for (int j = 1; j <= sp.shifted.degree(); ++j)
            sp.B = std::max(sp.B, std::abs(sp.shifted[j]));

        if (std::abs(eval(sp.shifted, Complex(0.0))) <
            1e-12 * (1.0 + coefficient_scale(sp.shifted))) {
            last_issue = "constant term of the shifted polynomial is numerically zero";
            continue;
        }

        auto f_roots = durand_kerner(sp.shifted, config.oracle_tol, config.oracle_max_iter);
        if (!f_roots.converged) {
            last_issue = "oracle failed to converge on the shifted polynomial";
            continue;
        }
        sp.shifted_roots = f_roots.roots;
        bool left = true;
        for (const Complex& r : sp.shifted_roots)
            if (r.real() >= 0.0) left = false;
        if (!left) {
            last_issue = "a root of the shifted polynomial has nonnegative real part";
            continue;
        }

        if (sp.radicand_poly.degree() >= 1) {
            auto w_zeros = durand_kerner(sp.radicand_poly, config.oracle_tol,
                                         config.oracle_max_iter);
            if (!w_zeros.converged) {
                last_issue = "oracle failed to converge on the radicand";
                continue;
            }
            sp.radicand_zeros = w_zeros.roots;
        }

        double max_zero = 0.0;
        for (const Complex& w : sp.radicand_zeros) max_zero = std::max(max_zero, std::abs(w));
        sp.radicand_margin = 1e-6 * (1.0 + max_zero);

        try {
            sp.Z = branch_shift_count(sp.radicand_poly, sp.radicand_zeros, sp.radicand_margin);
        } catch (const RadicandOnAxis&) {
            last_issue = "radicand zero within margin of the ray";
            continue;
        }

        bool paths_clear = true;
        for (const Complex& w : sp.radicand_zeros)
            if (detail::pole_path_distance(w) < std::max(sp.radicand_margin, 0.02))
                paths_clear = false;
        if (!paths_clear) {
            last_issue = "radicand zero too close to a pole continuation path";
            continue;
        }

        return sp;
    }

    std::ostringstream msg;
    msg << "shift planning failed after " << config.max_A_escalations
        << " escalations; last issue: " << last_issue;
    throw ShiftPlanningFailed(msg.str());
}

/// Rational combinations of the branch values at the fixed poles:
///   S = (f_k(i) + f_k(-i)) / (f_k(i) f_k(-i))
///   T = (f_k(i) - f_k(-i)) / (f_k(i) f_k(-i))
inline std::pair<Complex, Complex> residue_terms(const ShiftedProblem& sp, int k) {
    const auto [fi, fmi] = pole_values(sp, k);
    const double floor = 1e-12 * (1.0 + sp.A);
    if (std::abs(fi) < floor || std::abs(fmi) < floor)
        throw PoleValueZero("branch value at a fixed pole is numerically zero");
    const Complex prod = fi * fmi;
    return {(fi + fmi) / prod, (fi - fmi) / prod};
}

/// Closed-form value of the keyhole integral from the residues at +/-i:
///   I_k = pi / (f_k(i) f_k(-i)) * (i (f_k(i)+f_k(-i)) + xi (f_k(i)-f_k(-i)))
inline Complex residue_integral(const ShiftedProblem& sp, int k, Complex xi) {
    const auto [fi, fmi] = pole_values(sp, k);
    const double floor = 1e-12 * (1.0 + sp.A);
    if (std::abs(fi) < floor || std::abs(fmi) < floor)
        throw PoleValueZero("branch value at a fixed pole is numerically zero");
    return M_PI / (fi * fmi) * (Complex(0.0, 1.0) * (fi + fmi) + xi * (fi - fmi));
}

/// Keyhole integral evaluated by collapsing the contour onto the two edges
/// of the cut: integral over the upper edge minus integral over the lower
/// edge. Test-only companion of residue_integral.
inline Complex contour_integral(const ShiftedProblem& sp, int k, Complex xi,
                                const SolverConfig& config = {}) {
    auto upper = improper_integral(
        [&](double x) {
            const Complex u = edge_value(sp, k, x, Edge::upper);
            return (Complex(x, 0.0) - xi) / ((x * x + 1.0) * u);
        },
        config.quad_tol);
    auto lower = improper_integral(
        [&](double x) {
            const Complex l = edge_value(sp, k, x, Edge::lower);
            return (Complex(x, 0.0) - xi) / ((x * x + 1.0) * l);
        },
        config.quad_tol);
    return upper.value - lower.value;
}

struct BranchSolve {
    Complex xi;
    double quad_error = 0.0;
    long evaluations = 0;
    bool quad_converged = true;
};

/// Root of the k-th branch from the closed-form ratio
///   xi_k = (N1 - pi i S) / (N2 + pi T)
/// with N1, N2 the edge-difference integrals of x^m (f_low - f_up) /
/// ((x^2+1) f_up f_low), m = 1, 0.
inline BranchSolve solve_branch_root(const ShiftedProblem& sp, int k,
                                     const SolverConfig& config = {}) {
    const auto [S, T] = residue_terms(sp, k);

    auto kernel = [&](double x, bool weighted) {
        const Complex u = edge_value(sp, k, x, Edge::upper);
        const Complex l = edge_value(sp, k, x, Edge::lower);
        Complex v = (l - u) / ((x * x + 1.0) * u * l);
        if (weighted) v *= x;
        return v;
    };
    auto n1 = improper_integral([&](double x) { return kernel(x, true); }, config.quad_tol);
    auto n2 = improper_integral([&](double x) { return kernel(x, false); }, config.quad_tol);

    const Complex numerator = n1.value - Complex(0.0, M_PI) * S;
    const Complex denominator = n2.value + M_PI * T;
    if (std::abs(denominator) < config.denominator_floor * (1.0 + std::abs(numerator)))
        throw DegenerateDenominator("branch root denominator below the relative floor");

    BranchSolve out;
    out.xi = numerator / denominator;
    out.quad_error = n1.abs_error + n2.abs_error;
    out.evaluations = n1.evaluations + n2.evaluations;
    out.quad_converged = n1.converged && n2.converged;
    return out;
}

/// Plain Newton iteration on f from z0; stops when the step falls below
/// newton_tol relative to 1 + |z|. Non-convergence is reported, not thrown.
inline NewtonResult newton_polish(const Polynomial& f, Complex z0,
                                  const SolverConfig& config = {}) {
    const Polynomial df = derivative(f);
    NewtonResult res{z0, false, 0};
    for (int it = 1; it <= config.newton_max_iter; ++it) {
        const Complex d = eval(df, res.value);
        if (std::abs(d) < 1e-300) break;
        const Complex step = eval(f, res.value) / d;
        res.value -= step;
        res.iterations = it;
        if (std::abs(step) < config.newton_tol * (1.0 + std::abs(res.value))) {
            res.converged = true;
            break;
        }
    }
    return res;
}

namespace detail {

// multiplicity of `root` from the gcd chain: 1 + number of chain links past
// the first whose nearest root is within the matching tolerance
inline int multiplicity_from_chain(const std::vector<std::vector<Complex>>& chain_roots,
                                   Complex root) {
    constexpr double kMatchTol = 1e-6;
    int mult = 1;
    for (size_t i = 1; i < chain_roots.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const Complex& r : chain_roots[i]) nearest = std::min(nearest, std::abs(r - root));
        if (nearest < kMatchTol)
            ++mult;
        else
            break;
    }
    return mult;
}

} // namespace detail

/// Full pipeline: monic normalization, zero-root deflation, square-free
/// reduction with multiplicity bookkeeping, shift planning, one branch root
/// per branch index, shift back, optional Newton polish. Branch failures
/// escalate the shift and replan; after the escalation budget they yield
/// flagged reports, never silent drops.
inline SolveResult solve_all(const Polynomial& P, const SolverConfig& config = {}) {
    assert(P.degree() >= 1);
    SolveResult result;
    result.degree = P.degree();
    result.leading_coefficient = P.leading();

    const Polynomial p_monic = monic(P);
    auto [deflated, zero_mult] = deflate_zero_roots(p_monic, config.tol);
    result.zero_multiplicity = zero_mult;

    auto chain = gcd_chain(deflated.degree() >= 1 ? deflated : p_monic, config.tol);
    std::vector<std::vector<Complex>> chain_roots;
    for (const Polynomial& g : chain) {
        if (g.degree() >= 1)
            chain_roots.push_back(
                durand_kerner(g, config.oracle_tol, config.oracle_max_iter).roots);
        else
            chain_roots.push_back({});
    }

    if (zero_mult > 0) {
        RootReport zr;
        zr.branch = -1;
        zr.xi = Complex(0.0, 0.0);
        zr.root = Complex(0.0, 0.0);
        zr.polished = Complex(0.0, 0.0);
        zr.residual = std::abs(eval(p_monic, Complex(0.0)));
        zr.multiplicity = zero_mult;
        zr.polish_converged = true;
        result.reports.push_back(zr);
    }

    if (deflated.degree() == 0) {
        result.total_multiplicity = zero_mult;
        return result;
    }

    const Polynomial p_sf = square_free_part(deflated, config.tol);

    SolverConfig plan_cfg = config;
    ShiftedProblem sp = plan_shift(p_sf, plan_cfg);
    const int n = sp.degree();

    std::vector<RootReport> branch_reports;
    for (int attempt = 0;; ++attempt) {
        branch_reports.clear();
        bool escalate = false;
        std::string issue;
        for (int k = 0; k < n; ++k) {
            RootReport rep;
            rep.branch = k;
            try {
                BranchSolve bs = solve_branch_root(sp, k, config);
                rep.xi = bs.xi;
                rep.quad_error = bs.quad_error;
                rep.quad_evaluations = bs.evaluations;
                rep.quad_converged = bs.quad_converged;
                if (!bs.quad_converged) {
                    rep.flagged = true;
                    rep.flag_reason = "quadrature tolerance not met";
                }
            } catch (const SolverError& e) {
                escalate = true;
                issue = e.what();
                break;
            }
            rep.root = rep.xi + sp.A;
            branch_reports.push_back(rep);
        }
        if (!escalate) break;
        if (attempt >= config.max_A_escalations) {
            // keep whatever solved; flag the rest
            for (int k = static_cast<int>(branch_reports.size()); k < n; ++k) {
                RootReport rep;
                rep.branch = k;
                rep.flagged = true;
                rep.flag_reason = "unresolved after shift escalations: " + issue;
                rep.xi = Complex(0.0, 0.0);
                rep.root = Complex(sp.A, 0.0);
                branch_reports.push_back(rep);
            }
            break;
        }
        ++result.escalations;
        plan_cfg.initial_shift = sp.A * 2.0;
        sp = plan_shift(p_sf, plan_cfg);
    }

    for (RootReport& rep : branch_reports) {
        if (config.polish && !rep.flagged) {
            NewtonResult nr = newton_polish(sp.shifted, rep.xi, config);
            rep.polish_converged = nr.converged;
            if (nr.converged) rep.polished = nr.value + sp.A;
        }
        const Complex reported = rep.polished.value_or(rep.root);
        rep.residual = std::abs(eval(p_monic, reported));
        rep.multiplicity = detail::multiplicity_from_chain(chain_roots, reported);
        result.reports.push_back(rep);
    }

    // distinctness of the branch roots (reported values)
    for (size_t i = 0; i < branch_reports.size(); ++i)
        for (size_t j = i + 1; j < branch_reports.size(); ++j) {
            const Complex a = branch_reports[i].polished.value_or(branch_reports[i].root);
            const Complex b = branch_reports[j].polished.value_or(branch_reports[j].root);
            if (std::abs(a - b) <= 1e-6) result.branch_roots_distinct = false;
        }

    result.A = sp.A;
    result.Z = sp.Z;
    result.total_multiplicity = 0;
    for (const RootReport& r : result.reports) result.total_multiplicity += r.multiplicity;
    result.problem = sp;
    return result;
}

} // namespace quadroots
