#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "quadroots/branch.hpp"
#include "quadroots/solver.hpp"

using namespace quadroots;

namespace {

bool close(Complex a, Complex b, double tol = 1e-10) { return std::abs(a - b) <= tol; }

ShiftedProblem quadratic_problem() {
    // z^2 - 1 shifted by 3: f = z^2 + 6z + 8, W = -(6z + 8)
    return plan_shift(Polynomial{1, 0, -1});
}

std::mt19937_64& rng() {
    static std::mt19937_64 gen(31);
    return gen;
}

Polynomial random_monic(int degree) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> c{Complex(1.0)};
    for (int i = 0; i < degree; ++i) {
        Complex v;
        do {
            v = Complex(u(rng()), u(rng()));
        } while (std::abs(v) > 1.0);
        c.push_back(v);
    }
    return Polynomial(std::move(c));
}

} // namespace

TEST_CASE("radicand negates the non-leading coefficients") {
    const Polynomial w1 = radicand(Polynomial{1, 6, 8});
    CHECK(w1.degree() == 1);
    CHECK(close(w1[0], Complex(-6, 0)));
    CHECK(close(w1[1], Complex(-8, 0)));

    const Polynomial w2 = radicand(Polynomial{1, 6});
    CHECK(w2.degree() == 0);
    CHECK(close(w2[0], Complex(-6, 0)));

    const Polynomial w3 = radicand(Polynomial{1, 0, 0, 5});
    CHECK(w3.degree() == 0);
    CHECK(close(w3[0], Complex(-5, 0)));
}

TEST_CASE("branch shift count") {
    CHECK(branch_shift_count(Polynomial{-6, -8}, {Complex(-4.0 / 3.0, 0)}, 1e-3) == 1);
    CHECK(branch_shift_count(Polynomial{Complex(-6, 0)}, {}, 1e-3) == 0);
    CHECK(branch_shift_count(Polynomial{1, 0, 1}, {Complex(0, 1), Complex(0, -1)}, 1e-3) == 2);
    CHECK_THROWS_AS(branch_shift_count(Polynomial{1, -1}, {Complex(1, 0)}, 1e-3),
                    RadicandOnAxis);
}

TEST_CASE("continued argument along paths") {
    const Polynomial W{-6, -8};

    // W stays negative real on the positive axis
    std::vector<Complex> ray{Complex(0, 0), Complex(5, 0)};
    CHECK(continued_arg(W, ray, M_PI) == doctest::Approx(M_PI).epsilon(1e-12));

    // quarter circle from 1 to i: arg(8 + 6i) continues by atan(3/4)
    std::vector<Complex> arc;
    for (int s = 0; s <= 32; ++s) {
        const double t = M_PI / 2.0 * s / 32.0;
        arc.emplace_back(std::cos(t), std::sin(t));
    }
    CHECK(continued_arg(W, arc, M_PI) ==
          doctest::Approx(M_PI + std::atan(0.75)).epsilon(1e-12));

    const Polynomial Wc{Complex(-6, 0)};
    std::vector<Complex> wander{Complex(0, 0), Complex(2, 1), Complex(-1, 3)};
    CHECK(continued_arg(Wc, wander, M_PI) == doctest::Approx(M_PI));
}

TEST_CASE("continuation through a radicand zero is rejected") {
    const Polynomial W{1, -1}; // zero at 1
    std::vector<Complex> path{Complex(0, 0), Complex(2, 0)};
    CHECK_THROWS_AS(continued_arg(W, path, M_PI), PathThroughZero);
}

TEST_CASE("edge values of the worked quadratic") {
    const ShiftedProblem sp = quadratic_problem();
    REQUIRE(sp.A == doctest::Approx(3.0));
    REQUIRE(sp.Z == 1);
    CHECK(sp.base_phi() == doctest::Approx(M_PI));

    const double s14 = std::sqrt(14.0);
    CHECK(close(edge_value(sp, 0, 1.0, Edge::upper), Complex(1.0, -s14), 1e-12));
    CHECK(close(edge_value(sp, 0, 1.0, Edge::lower), Complex(1.0, s14), 1e-12));
    CHECK(close(edge_value(sp, 1, 0.0, Edge::upper), Complex(0.0, 2.0 * std::sqrt(2.0)), 1e-12));
}

TEST_CASE("pole values of the worked quadratic") {
    const ShiftedProblem sp = quadratic_problem();
    auto [f0i, f0mi] = pole_values(sp, 0);
    CHECK(close(f0i, Complex(1, -2), 1e-12));
    CHECK(close(f0mi, Complex(1, 2), 1e-12));
    auto [f1i, f1mi] = pole_values(sp, 1);
    CHECK(close(f1i, Complex(-1, 4), 1e-12));
    CHECK(close(f1mi, Complex(-1, -4), 1e-12));
}

TEST_CASE("branch consistency: the radical part solves r^n = W") {
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng()() % 7);
        const ShiftedProblem sp = plan_shift(random_monic(n));
        for (double x : {0.0, 0.3, 1.0, 2.7, 10.0, 123.0}) {
            const Complex w = eval(sp.radicand_poly, Complex(x, 0.0));
            for (int k = 0; k < n; ++k) {
                for (Edge e : {Edge::upper, Edge::lower}) {
                    const Complex r = Complex(x, 0.0) - edge_value(sp, k, x, e);
                    Complex rn(1.0);
                    for (int j = 0; j < n; ++j) rn *= r;
                    CHECK(std::abs(rn - w) <= 1e-10 * (1.0 + std::abs(w)));
                }
            }
        }
    }
}

TEST_CASE("cut crossing permutes branches by Z") {
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 2 + static_cast<int>(rng()() % 7);
        const ShiftedProblem sp = plan_shift(random_monic(n));
        for (double x : {0.05, 0.9, 3.3, 17.0}) {
            for (int k = 0; k < n; ++k) {
                const Complex lo = edge_value(sp, k, x, Edge::lower);
                const Complex up = edge_value(sp, (k + sp.Z) % n, x, Edge::upper);
                CHECK(std::abs(lo - up) <= 1e-12 * (1.0 + std::abs(up)));
            }
        }
    }
}

TEST_CASE("conjugation symmetry of pole values for real coefficients") {
    for (const Polynomial& p :
         {Polynomial{1, 0, -1}, Polynomial{1, 1, -2}, Polynomial{1, 0.5, -0.25, 0.125}}) {
        const ShiftedProblem sp = plan_shift(p);
        const int n = sp.degree();
        std::vector<Complex> at_i, conj_at_minus_i;
        for (int k = 0; k < n; ++k) {
            auto [fi, fmi] = pole_values(sp, k);
            at_i.push_back(fi);
            conj_at_minus_i.push_back(std::conj(fmi));
        }
        // equal as multisets
        auto m = match_root_sets(at_i, conj_at_minus_i);
        CHECK(m.max_distance <= 1e-10);
        CHECK(m.unmatched_a == 0);
    }
}

TEST_CASE("argument track snapshot") {
    const ShiftedProblem sp = quadratic_problem();
    edge_value(sp, 0, 2.0, Edge::upper);
    const ArgTrack upper = sp.track(Edge::upper);
    CHECK(upper.base_phi == doctest::Approx(M_PI));
    REQUIRE(upper.samples.size() >= 2);
    for (size_t i = 1; i < upper.samples.size(); ++i) {
        CHECK(upper.samples[i].first >= upper.samples[i - 1].first);
        CHECK(std::abs(upper.samples[i].second - upper.samples[i - 1].second) < M_PI);
    }
    const ArgTrack lower = sp.track(Edge::lower);
    CHECK(lower.base_phi == doctest::Approx(M_PI + kTwoPi * sp.Z));
}
