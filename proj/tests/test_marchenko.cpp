#include <doctest.h>

#include <random>

#include "halfline/direct.hpp"
#include "halfline/errors.hpp"
#include "halfline/examples.hpp"
#include "halfline/marchenko.hpp"

using namespace halfline;

namespace {

double cells_off_jumps(const OperatorSpec& got, const OperatorSpec& ref, double lo, double hi,
                       const std::vector<double>& jumps, double margin) {
    const double h = got.potential.cell_width();
    double worst = 0.0;
    for (std::size_t i = 0; i < got.potential.cells.size(); ++i) {
        const double x = (i + 0.5) * h;
        if (x < lo || x > hi) continue;
        if (std::any_of(jumps.begin(), jumps.end(), [&](double j) { return std::abs(x - j) < margin; })) continue;
        worst = std::max(worst, std::abs(got.potential.cells[i] - ref.potential.value_at(x)));
    }
    return worst;
}

SampledFunction constant(const std::vector<double>& k, cplx v) {
    return {k, std::vector<cplx>(k.size(), v)};
}

}  // namespace

TEST_SUITE("marchenko") {
    TEST_CASE("residue sign decides the class") {
        CHECK(theta_class_from_residue(cplx(0.0, -2.0)) == ThetaClass::Dirichlet);
        CHECK(theta_class_from_residue(cplx(0.0, 2.0)) == ThetaClass::NonDirichlet);
        CHECK(theta_class_from_residue(cplx(1.0, 1e-15)) == ThetaClass::Undetermined);
    }

    TEST_CASE("trivial kernels") {
        const auto k = examples::default_k();
        std::vector<double> y;
        for (int j = 0; j <= 400; ++j) y.push_back(0.01 * j);
        for (double m : marchenko_kernel(constant(k, 1.0), {}, ThetaClass::Dirichlet, y)) CHECK(std::abs(m) < 1e-12);
        const auto K = solve_marchenko(std::vector<double>(401, 0.0), 0.01, 100);
        for (double d : K.diagonal) CHECK(d == 0.0);
        for (double v : extract_potential(K.diagonal, 1.0).cells) CHECK(v == 0.0);
    }

    TEST_CASE("case detection") {
        const auto k = examples::default_k();
        CHECK(detect_case(constant(k, 1.0)).tag == CaseTag::III);
        const auto a = detect_case(sample_scattering(examples::ex62a(), k), {.support = 1.0});
        REQUIRE(a.tag == CaseTag::I);
        REQUIRE(a.poles.size() == 2);
        const auto bs = bound_states(examples::ex62a(), default_beta_max(examples::ex62a()));
        for (std::size_t i = 0; i < 2; ++i) CHECK(a.poles[i].gamma == doctest::Approx(bs[i].gamma).epsilon(1e-6));
        CHECK(a.theta_class == ThetaClass::NonDirichlet);
        const auto b = detect_case(sample_scattering(examples::ex62b(), k), {.support = 1.0});
        REQUIRE(b.tag == CaseTag::I);
        CHECK(b.theta_class == ThetaClass::NonDirichlet);
        const auto d = detect_case(sample_scattering(examples::well(-40.0, Boundary::dirichlet()), k), {.support = 1.0});
        REQUIRE(d.tag == CaseTag::I);
        CHECK(d.theta_class == ThetaClass::Dirichlet);
        const auto root = examples::root_solve_example_63_a();
        const auto e = detect_case(sample_scattering(examples::ex63(root.a), k), {.support = 1.0});
        CHECK(e.tag == CaseTag::III);
        CHECK(e.poles.empty());
    }

    TEST_CASE("case partition on random wells") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        const auto k = examples::default_k();
        for (int t = 0; t < 8; ++t) {
            const Boundary bc = t % 2 ? Boundary::dirichlet() : Boundary::non_dirichlet(-2.0 + 4.0 * U(rng));
            const auto s = make_operator_spec(1.0, {-15.0 + 25.0 * U(rng), -15.0 + 25.0 * U(rng)}, bc);
            const auto det = detect_case(sample_scattering(s, k), {.support = 1.0});
            const auto bs = bound_states(s, default_beta_max(s));
            CAPTURE(t);
            const CaseTag want = !bs.empty() ? CaseTag::I
                                 : std::abs(scattering_matrix(s, 0.0) + 1.0) < 1e-3 ? CaseTag::II
                                                                                    : CaseTag::III;
            CHECK(det.tag == want);
            CHECK(det.poles.size() == bs.size());
        }
    }

    TEST_CASE("Jost trace from the kernel") {
        const auto s = make_operator_spec(1.0, {3.0, -1.0, 2.0, 0.5}, Boundary::dirichlet());
        REQUIRE(bound_states(s, default_beta_max(s)).empty());
        const int n = 200;
        const double h = 1.0 / n;
        std::vector<double> y;
        for (int j = 0; j <= 4 * n; ++j) y.push_back(j * h);
        const auto M = marchenko_kernel(sample_scattering(s, examples::default_k()), {}, ThetaClass::Dirichlet, y,
                                        {.support = 1.0});
        const auto K = solve_marchenko(M, h, n);
        CHECK(K.max_residual < 1e-8);
        for (int i = 1; i <= 20; ++i) {
            const double kk = 0.5 * i;
            const auto tr = trace_from_kernel(K, kk);
            const auto ref = jost_boundary_trace(s, kk);
            CHECK(std::abs(tr.f0 - ref.f0) < 1e-3);
        }
    }

    TEST_CASE("free Robin data with one bound state") {
        const auto s = make_operator_spec(1.0, {0.0}, Boundary::non_dirichlet(1.0));
        const auto inv = invert_scattering(sample_scattering(s, examples::default_k()), 1.0, 100);
        REQUIRE(inv.tag == CaseTag::I);
        REQUIRE(inv.solutions.size() == 1);
        const auto& r = inv.solutions[0];
        CHECK(r.spec.boundary.cot_theta == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(r.spec.potential.max_abs() < 2e-2);
        REQUIRE(r.bound_states.size() == 1);
        CHECK(r.bound_states[0].gamma == doctest::Approx(1.0).epsilon(1e-6));
    }

    TEST_CASE("uniqueness round trips") {
        const auto k = examples::default_k();
        {
            const auto s = examples::ex62b();
            const auto inv = invert_scattering(sample_scattering(s, k), 1.0, 100);
            REQUIRE(inv.solutions.size() == 1);
            CHECK(cells_off_jumps(inv.solutions[0].spec, s, 0.0, 0.95, {}, 0.0) < 2e-2);
            CHECK(inv.solutions[0].spec.boundary.cot_theta == doctest::Approx(6.0).epsilon(1e-2 / 6.0));
        }
        {
            const auto s = examples::dirichlet_well();
            const auto inv = invert_scattering(sample_scattering(s, k), 1.0, 100);
            REQUIRE(inv.solutions.size() == 1);
            CHECK(inv.solutions[0].spec.boundary.is_dirichlet());
            CHECK(cells_off_jumps(inv.solutions[0].spec, s, 0.0, 1.0, {1.0}, 0.05) < 2e-2);
        }
        {
            const auto s = make_operator_spec(1.0, {4.0, 4.0, -2.0, -2.0}, Boundary::non_dirichlet(0.5));
            REQUIRE(bound_states(s, default_beta_max(s)).empty());
            const auto inv = invert_scattering(sample_scattering(s, k), 1.0, 100);
            CHECK(inv.tag == CaseTag::II);
            REQUIRE(inv.solutions.size() == 1);
            CHECK(inv.solutions[0].spec.boundary.cot_theta == doctest::Approx(0.5).epsilon(2e-2));
            CHECK(cells_off_jumps(inv.solutions[0].spec, s, 0.0, 1.0, {0.5, 1.0}, 0.05) < 2e-2);
        }
    }

    TEST_CASE("flipped kernel branch fails verification") {
        const auto s = make_operator_spec(1.0, {4.0, 4.0, -2.0, -2.0}, Boundary::non_dirichlet(0.5));
        const auto S = sample_scattering(s, examples::default_k());
        const int n = 100;
        const double h = 1.0 / n;
        std::vector<double> y;
        for (int j = 0; j <= 4 * n; ++j) y.push_back(j * h);
        const auto right = solve_marchenko(marchenko_kernel(S, {}, ThetaClass::NonDirichlet, y, {.support = 1.0}), h, n);
        CHECK(recover_theta(right, S).boundary.cot_theta == doctest::Approx(0.5).epsilon(2e-2));
        const auto K = solve_marchenko(marchenko_kernel(S, {}, ThetaClass::Dirichlet, y, {.support = 1.0}), h, n);
        CHECK_THROWS_AS(recover_theta(K, S), VerificationError);
    }

    TEST_CASE("trivial scattering has two free solutions") {
        const auto inv = invert_scattering(constant(examples::default_k(), 1.0), 1.0, 100);
        REQUIRE(inv.tag == CaseTag::III);
        REQUIRE(inv.solutions.size() == 2);
        CHECK(inv.solutions[0].spec.boundary.is_dirichlet());
        CHECK(inv.solutions[1].spec.boundary.cot_theta == doctest::Approx(0.0).epsilon(1e-6));
        for (const auto& r : inv.solutions) CHECK(r.spec.potential.max_abs() < 1e-6);
    }

    TEST_CASE("transparent pair") {
        const auto root = examples::root_solve_example_63_a();
        const auto s = examples::ex63(root.a);
        const auto k = examples::default_k();
        const auto inv = invert_scattering(sample_scattering(s, k), 1.0, 100);
        REQUIRE(inv.solutions.size() == 2);
        const auto& v1 = inv.solutions[0].spec;
        const auto& v2 = inv.solutions[1].spec;
        CHECK(v1.boundary.is_dirichlet());
        CHECK(cells_off_jumps(v1, s, 0.0, 1.0, {0.5, 1.0}, 0.05) < 2e-2);
        CHECK(integral_of_potential(v2) == doctest::Approx(0.5 * (1.0 - root.a)).epsilon(1e-2 / 0.0714));
        CHECK(inv.jost_relation_error < 1e-4);
        for (int i = 1; i <= 20; ++i) {
            const double kk = 0.5 * i;
            const auto c1 = full_line_coefficients(v1, kk), c2 = full_line_coefficients(v2, kk);
            CHECK(std::abs(c2.R + c1.R) < 1e-3);
            CHECK(std::abs(c2.T - c1.T) < 1e-3);
        }
    }

    TEST_CASE("full-line Marchenko") {
        const auto root = examples::root_solve_example_63_a();
        const auto s = examples::ex63(root.a);
        const auto k = examples::default_k();
        SampledFunction R{k, {}};
        for (double x : k) R.values.push_back(full_line_coefficients(s, x).R);
        const auto v1 = full_line_marchenko(R, 1.0, 100);
        CHECK(cells_off_jumps({v1, Boundary::dirichlet()}, s, 0.0, 1.0, {0.5, 1.0}, 0.05) < 2e-2);
        for (auto& r : R.values) r = -r;
        const auto v2 = full_line_marchenko(R, 1.0, 100);
        CHECK(integral_of_potential({v2, Boundary::dirichlet()}) == doctest::Approx(0.0713765).epsilon(1e-2 / 0.0714));
    }
}
