#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace quadroots {

using Complex = std::complex<double>;

struct ToleranceConfig {
    /// Relative magnitude below which a Euclidean remainder counts as zero.
    double gcd_epsilon = 1e-10;
};

/// Univariate polynomial with complex coefficients, stored leading-first.
/// The zero polynomial is represented as a single zero coefficient.
class Polynomial {
public:
    Polynomial() : coeffs_{Complex(0.0)} {}

    explicit Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
        trim_leading_zeros();
    }

    Polynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) {
        trim_leading_zeros();
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex leading() const { return coeffs_.front(); }
    Complex constant_term() const { return coeffs_.back(); }

    /// Coefficient of z^(degree - i), i.e. position i in leading-first order.
    Complex operator[](int i) const { return coeffs_[static_cast<size_t>(i)]; }

    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Complex(0.0); }

private:
    void trim_leading_zeros() {
        assert(!coeffs_.empty());
        size_t lead = 0;
        while (lead + 1 < coeffs_.size() && coeffs_[lead] == Complex(0.0)) ++lead;
        if (lead > 0) coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    }

    std::vector<Complex> coeffs_;
};

/// Largest coefficient magnitude; 0 only for the zero polynomial.
inline double coefficient_scale(const Polynomial& p) {
    double s = 0.0;
    for (const Complex& c : p.coeffs()) s = std::max(s, std::abs(c));
    return s;
}

/// Horner evaluation.
inline Complex eval(const Polynomial& p, Complex z) {
    Complex acc(0.0);
    for (const Complex& c : p.coeffs()) acc = acc * z + c;
    return acc;
}

inline Polynomial derivative(const Polynomial& p) {
    const int n = p.degree();
    if (n == 0) return Polynomial{};
    std::vector<Complex> d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] = p[i] * static_cast<double>(n - i);
    return Polynomial(std::move(d));
}

inline Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial{};
    std::vector<Complex> c(static_cast<size_t>(a.degree() + b.degree()) + 1, Complex(0.0));
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j)
            c[static_cast<size_t>(i + j)] += a[i] * b[j];
    return Polynomial(std::move(c));
}

inline Polynomial operator*(const Polynomial& a, Complex s) {
    std::vector<Complex> c = a.coeffs();
    for (Complex& x : c) x *= s;
    return Polynomial(std::move(c));
}

/// Divide by the leading coefficient.
inline Polynomial monic(const Polynomial& p) {
    assert(!p.is_zero());
    return p * (Complex(1.0) / p.leading());
}

/// Long division: returns (quotient, remainder) with deg(rem) < deg(b).
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    assert(!b.is_zero());
    const int da = a.degree(), db = b.degree();
    if (da < db) return {Polynomial{}, a};
    std::vector<Complex> rem = a.coeffs();
    std::vector<Complex> quot(static_cast<size_t>(da - db) + 1, Complex(0.0));
    for (int i = 0; i <= da - db; ++i) {
        Complex q = rem[static_cast<size_t>(i)] / b.leading();
        quot[static_cast<size_t>(i)] = q;
        for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(i + j)] -= q * b[j];
    }
    std::vector<Complex> tail(rem.end() - db, rem.end());
    if (tail.empty()) tail.push_back(Complex(0.0));
    return {Polynomial(std::move(quot)), Polynomial(std::move(tail))};
}

/// Monic approximate GCD by the Euclidean remainder sequence. A remainder
/// whose coefficients all fall below gcd_epsilon times the input scale is
/// treated as zero.
inline Polynomial poly_gcd(const Polynomial& p, const Polynomial& q,
                           const ToleranceConfig& tol = {}) {
    const double scale = std::max(coefficient_scale(p), coefficient_scale(q));
    assert(scale > 0.0 && "poly_gcd: both inputs are zero");
    const double floor = tol.gcd_epsilon * scale;

    auto negligible = [floor](const Polynomial& r) {
        return coefficient_scale(r) < floor;
    };

    Polynomial a = p, b = q;
    if (negligible(a)) return negligible(b) ? Polynomial{Complex(1.0)} : monic(b);
    if (negligible(b)) return monic(a);
    if (a.degree() < b.degree()) std::swap(a, b);

    while (true) {
        Polynomial r = divmod(a, b).second;
        if (negligible(r)) return monic(b);
        a = std::move(b);
        b = monic(r);
    }
}

/// Monic p / gcd(p, p'); the result has only simple roots up to tolerance.
inline Polynomial square_free_part(const Polynomial& p, const ToleranceConfig& tol = {}) {
    assert(p.degree() >= 1);
    Polynomial g = poly_gcd(p, derivative(p), tol);
    if (g.degree() == 0) return monic(p);
    return monic(divmod(p, g).first);
}

/// Chain p, gcd(p, p'), gcd of that with its derivative, ... down to degree 0.
/// A root of multiplicity m appears in the first m links.
inline std::vector<Polynomial> gcd_chain(const Polynomial& p, const ToleranceConfig& tol = {}) {
    std::vector<Polynomial> chain{monic(p)};
    while (chain.back().degree() >= 1) {
        chain.push_back(poly_gcd(chain.back(), derivative(chain.back()), tol));
    }
    return chain;
}

/// Strip trailing coefficients below gcd_epsilon relative to the coefficient
/// scale. Returns the reduced polynomial and the multiplicity of the root at 0.
inline std::pair<Polynomial, int> deflate_zero_roots(const Polynomial& p,
                                                     const ToleranceConfig& tol = {}) {
    assert(p.degree() >= 1);
    const double floor = tol.gcd_epsilon * coefficient_scale(p);
    std::vector<Complex> c = p.coeffs();
    int m = 0;
    while (c.size() > 1 && std::abs(c.back()) < floor) {
        c.pop_back();
        ++m;
    }
    return {Polynomial(std::move(c)), m};
}

/// Coefficients of p(z + shift) via the in-place Ruffini-Horner scheme
/// (repeated synthetic division), not binomial expansion.
inline Polynomial taylor_shift(const Polynomial& p, double shift) {
    const int n = p.degree();
    // ascending order for the classic update
    std::vector<Complex> a(p.coeffs().rbegin(), p.coeffs().rend());
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j)
            a[static_cast<size_t>(j)] += shift * a[static_cast<size_t>(j) + 1];
    std::vector<Complex> out(a.rbegin(), a.rend());
    return Polynomial(std::move(out));
}

/// Cauchy-style root bound 1 + max |a_j| over the non-leading coefficients.
inline double bound_M(const Polynomial& p) {
    assert(p.degree() >= 1);
    double m = 0.0;
    for (int j = 1; j <= p.degree(); ++j) m = std::max(m, std::abs(p[j]));
    return 1.0 + m;
}

/// Monic polynomial with the given roots.
inline Polynomial from_roots(const std::vector<Complex>& roots) {
    Polynomial p{Complex(1.0)};
    for (const Complex& r : roots) p = p * Polynomial{Complex(1.0), -r};
    return p;
}

} // namespace quadroots
