#include <doctest.h>

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <random>

#include "halfline/direct.hpp"
#include "halfline/examples.hpp"
#include "oracles.hpp"

using namespace halfline;

TEST_SUITE("direct") {
    TEST_CASE("single cell against closed form") {
        const double v = -7.3, b = 1.3, c = 0.8;
        const auto nd = make_operator_spec(b, {v}, Boundary::non_dirichlet(c));
        const auto d = make_operator_spec(b, {v}, Boundary::dirichlet());
        for (cplx k : {cplx(0.0), cplx(0.37), cplx(2.7), cplx(41.0), cplx(1.5, 0.8), cplx(0.0, 2.2), cplx(-3.0, 0.4)}) {
            CAPTURE(k);
            const auto tr = jost_boundary_trace(nd, k);
            const auto ref = oracle::one_cell(v, b, k);
            CHECK(std::abs(tr.f0 - ref.f0) < 1e-10 * (1.0 + std::abs(ref.f0)));
            CHECK(std::abs(tr.fp0 - ref.fp0) < 1e-10 * (1.0 + std::abs(ref.fp0)));
            CHECK(std::abs(jost_function(nd, k) - oracle::jost(v, b, false, c, k)) < 1e-9 * (1.0 + std::abs(k)));
            CHECK(std::abs(jost_function(d, k) - oracle::jost(v, b, true, 0.0, k)) < 1e-10);
        }
    }

    TEST_CASE("split cells give the same answer") {
        const auto one = make_operator_spec(1.0, {-3.0}, Boundary::non_dirichlet(0.2));
        const auto many = refine(one, 37);
        for (double k : {0.1, 1.0, 9.0})
            CHECK(std::abs(jost_function(one, k) - jost_function(many, k)) < 1e-11);
    }

    TEST_CASE("S is unimodular and Hermitian") {
        const auto s = make_operator_spec(2.0, {-4.0, 2.0, -1.0, 6.0}, Boundary::non_dirichlet(-0.7));
        const auto d = make_operator_spec(2.0, {-4.0, 2.0, -1.0, 6.0}, Boundary::dirichlet());
        for (double k : {0.05, 0.5, 3.0, 30.0}) {
            CHECK(std::abs(std::abs(scattering_matrix(s, k)) - 1.0) < 1e-12);
            CHECK(std::abs(scattering_matrix(s, -k) - std::conj(scattering_matrix(s, k))) < 1e-12);
            CHECK(std::abs(std::abs(scattering_matrix(d, k)) - 1.0) < 1e-12);
        }
    }

    TEST_CASE("Jost symmetry on the real axis") {
        const auto s = make_operator_spec(1.0, {-2.0, 5.0}, Boundary::non_dirichlet(0.3));
        const auto d = make_operator_spec(1.0, {-2.0, 5.0}, Boundary::dirichlet());
        for (double k : {0.4, 2.0, 11.0}) {
            CHECK(std::abs(jost_function(d, -k) - std::conj(jost_function(d, k))) < 1e-12);
            CHECK(std::abs(jost_function(s, -k) + std::conj(jost_function(s, k))) < 1e-12);
        }
    }

    TEST_CASE("generic S at zero") {
        const auto s = make_operator_spec(1.0, {-2.0, 5.0}, Boundary::non_dirichlet(0.3));
        CHECK_FALSE(is_exceptional(s));
        CHECK(std::abs(scattering_matrix(s, 0.0) + 1.0) < 1e-12);
        const auto d = make_operator_spec(1.0, {-2.0, 5.0}, Boundary::dirichlet());
        CHECK_FALSE(is_exceptional(d));
        CHECK(std::abs(scattering_matrix(d, 0.0) - 1.0) < 1e-12);
        const auto n = make_operator_spec(1.0, {0.0}, Boundary::non_dirichlet(0.0));
        CHECK(is_exceptional(n));
        CHECK(std::abs(scattering_matrix(n, 0.0) - 1.0) < 1e-12);
    }

    TEST_CASE("free Dirichlet is exactly trivial") {
        const auto z = make_operator_spec(1.0, {0.0, 0.0}, Boundary::dirichlet());
        for (double k : {0.0, 0.3, 50.0}) {
            const auto S = scattering_matrix(z, k);
            CHECK(S.real() == 1.0);
            CHECK(S.imag() == 0.0);
        }
        CHECK_FALSE(is_exceptional(z));
    }

    TEST_CASE("bound states of a Dirichlet well") {
        // v = -40 on [0, 1]: zeros of q cot q = -gamma with q^2 = 40 - gamma^2.
        const auto s = make_operator_spec(1.0, {-40.0}, Boundary::dirichlet());
        const auto bs = bound_states(s, default_beta_max(s));
        auto eq = [](double g) {
            const double q = std::sqrt(40.0 - g * g);
            return q * std::cos(q) + g * std::sin(q);
        };
        std::vector<double> ref;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            const double lo = std::sqrt(40.0) * i / n, hi = std::sqrt(40.0) * (i + 1) / n;
            if (eq(lo) * eq(hi) < 0.0) {
                auto r = boost::math::tools::bisect(eq, lo, hi, [](double a, double c) { return c - a < 1e-14; });
                ref.push_back(0.5 * (r.first + r.second));
            }
        }
        REQUIRE(ref.size() == 2);
        REQUIRE(bs.size() == ref.size());
        std::sort(ref.begin(), ref.end());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(std::find_if(bs.begin(), bs.end(), [&](const BoundState& b) {
                      return std::abs(b.gamma - ref[i]) < 1e-9;
                  }) != bs.end());
        }
    }

    TEST_CASE("norming constants relate through the Jost function") {
        const auto s = make_operator_spec(1.0, {-30.0, -10.0}, Boundary::non_dirichlet(0.4));
        for (const auto& b : bound_states(s, default_beta_max(s))) {
            const auto [g, m] = norming_constants(s, b.gamma);
            // g = 2 gamma m / |F(-i gamma)|
            CHECK(g == doctest::Approx(2.0 * b.gamma * m / std::abs(jost_function(s, cplx(0.0, -b.gamma)))).epsilon(1e-8));
            // phi normalized: g^2 int phi^2 = 1 via a fine quadrature of the regular solution.
            const int n = 20000;
            std::vector<double> x(n + 1);
            const double L = 1.0 + 10.0 / b.gamma;
            for (int i = 0; i <= n; ++i) x[i] = L * i / n;
            const auto phi = regular_solution(s, cplx(0.0, b.gamma), x);
            double I = 0.0;
            for (int i = 0; i < n; ++i)
                I += 0.5 * (std::norm(phi.values[i]) + std::norm(phi.values[i + 1])) * (x[i + 1] - x[i]);
            CHECK(g * g * I == doctest::Approx(1.0).epsilon(1e-6));
        }
    }

    TEST_CASE("full-line coefficients are unitary") {
        const auto s = make_operator_spec(1.5, {3.0, -2.0, 1.0}, Boundary::dirichlet());
        for (double k : {0.3, 1.0, 7.0}) {
            const auto c = full_line_coefficients(s, k);
            CHECK(std::norm(c.T) + std::norm(c.R) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::norm(c.T) + std::norm(c.L) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    TEST_CASE("full-line coefficients at zero energy") {
        const auto root = examples::root_solve_example_63_a();
        CHECK(root.residual < 1e-10);
        CHECK(root.a == doctest::Approx(0.857247).epsilon(1e-6));
        const auto c = full_line_coefficients(examples::ex63(root.a), 0.0);
        CHECK(std::abs(c.T - 0.973827) < 5e-4);
        CHECK(std::abs(c.R + c.L) < 1e-10);
        CHECK(std::norm(c.T) + std::norm(c.R) == doctest::Approx(1.0).epsilon(1e-10));
    }

    TEST_CASE("H vanishes at bound states") {
        const auto s = examples::ex62a();
        for (const auto& b : bound_states(s, default_beta_max(s))) CHECK(std::abs(h_function(s, b.gamma)) < 1e-8);
    }
    TEST_CASE("properties on random specs") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        for (int t = 0; t < 10; ++t) {
            std::vector<double> cells(6);
            for (auto& c : cells) c = -20.0 + 30.0 * U(rng);
            const Boundary bc = t % 2 ? Boundary::dirichlet() : Boundary::non_dirichlet(-3.0 + 6.0 * U(rng));
            const auto s = make_operator_spec(0.5 + 2.0 * U(rng), cells, bc);
            const double sign = bc.is_dirichlet() ? 1.0 : -1.0;
            CAPTURE(t);
            for (int i = 0; i < 20; ++i) {
                const double k = -50.0 + 100.0 * U(rng);
                CHECK(std::abs(std::abs(scattering_matrix(s, k)) - 1.0) < 1e-8);
                const cplx z(-5.0 + 10.0 * U(rng), -3.0 + 6.0 * U(rng));
                const cplx a = jost_function(s, -std::conj(z)), b = sign * std::conj(jost_function(s, z));
                CHECK(std::abs(a - b) < 1e-9 * (1.0 + std::abs(b)));
            }
            // Mean over a circle equals the center value for an entire function.
            const cplx c0(1.0 + U(rng), -1.0 + 2.0 * U(rng));
            const int n = 64;
            cplx mean = 0.0;
            for (int j = 0; j < n; ++j) mean += jost_function(s, c0 + 0.5 * std::polar(1.0, 2.0 * M_PI * j / n));
            mean /= double(n);
            CHECK(std::abs(mean - jost_function(s, c0)) < 1e-6 * (1.0 + std::abs(mean)));
        }
    }

    TEST_CASE("high-energy asymptotics") {
        const auto s = make_operator_spec(1.0, {-3.0, 8.0, 1.0}, Boundary::non_dirichlet(0.6));
        const cplx I(0.0, 1.0);
        auto resid = [&](double k) {
            return std::abs(jost_function(s, k) - k + I * 0.6 - 0.5 * I * integral_of_potential(s));
        };
        const double r3 = resid(1e3), r4 = resid(1e4);
        CHECK(r3 < 1e-2);
        CHECK(r4 < r3);
    }
}
