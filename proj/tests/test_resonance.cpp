#include <doctest.h>

#include <random>

#include "halfline/darboux.hpp"
#include "halfline/direct.hpp"
#include "halfline/errors.hpp"
#include "halfline/examples.hpp"
#include "halfline/resonance.hpp"

using namespace halfline;

namespace {

const Resonance* near(const ResonanceReport& r, double gamma, double tol) {
    for (const auto& z : r.resonances)
        if (std::abs(z.gamma - gamma) < tol) return &z;
    return nullptr;
}

}  // namespace

TEST_SUITE("resonance") {
    TEST_CASE("free Robin operator") {
        // F(k) = k + i c vanishes only at k = -i c.
        for (double c : {0.5, 1.0, 3.0}) {
            const auto s = make_operator_spec(1.0, {0.0}, Boundary::non_dirichlet(-c));
            const auto rep = analyze_resonances(s, 2.0 * c + 1.0);
            REQUIRE(rep.resonances.size() == 1);
            CHECK(rep.resonances[0].gamma == doctest::Approx(c).epsilon(1e-9));
            CHECK(rep.resonances[0].eligibility == Eligibility::Eligible);
            CHECK(rep.resonances[0].g_squared == doctest::Approx(2.0 * c).epsilon(1e-7));
            CHECK(rep.M == 1);
        }
    }

    TEST_CASE("worked examples") {
        {
            const auto r = analyze_resonances(examples::ex62a(), default_beta_max(examples::ex62a()));
            CHECK(r.bound_state_count == 2);
        }
        {
            const auto r = analyze_resonances(examples::ex62c(), 10.0);
            const auto* z = near(r, 3.6205, 2e-3);
            REQUIRE(z != nullptr);
            CHECK_FALSE(z->simple);
            CHECK(z->eligibility == Eligibility::Ineligible);
        }
        {
            const auto r = analyze_resonances(examples::ex62b(), default_beta_max(examples::ex62b()));
            int eligible = 0;
            for (const auto& z : r.resonances) eligible += z.eligibility == Eligibility::Eligible;
            CHECK(r.M == eligible + r.bound_state_count);
        }
    }

    TEST_CASE("non-resonance is rejected") {
        const auto s = make_operator_spec(1.0, {0.0}, Boundary::non_dirichlet(-1.0));
        CHECK_THROWS_AS(classify_eligibility(s, 1.7), InvalidInput);
        CHECK_THROWS_AS(add_bound_state(s, 1.7), InvalidInput);
    }

    TEST_CASE("random wells: alternation and stripped classification") {
        std::mt19937_64 rng(20261015);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        int checked = 0;
        for (int trial = 0; trial < 20; ++trial) {
            const Boundary bc = trial % 3 == 0 ? Boundary::dirichlet() : Boundary::non_dirichlet(-4.0 + 8.0 * U(rng));
            const auto s = make_operator_spec(1.0, {-30.0 + 40.0 * U(rng), -30.0 + 40.0 * U(rng)}, bc);
            const double beta_max = 12.0;
            const auto rep = analyze_resonances(s, beta_max);
            CAPTURE(trial);
            // Simple eligible resonances are separated by ineligible ones.
            const Resonance* last = nullptr;
            for (const auto& z : rep.resonances) {
                if (!z.simple) continue;
                if (last && last->eligibility == Eligibility::Eligible && z.eligibility == Eligibility::Eligible &&
                    z.gamma - last->gamma > kPairSeparation)
                    FAIL("two adjacent eligible resonances at " << last->gamma << " and " << z.gamma);
                last = &z;
            }
            for (const auto& z : rep.resonances) {
                if (!z.simple || z.gamma > 0.9 * beta_max) continue;
                CHECK(classify_via_stripped(s, z.gamma) == z.eligibility);
                ++checked;
            }
        }
        CHECK(checked >= 10);
    }

    TEST_CASE("sampled H matches pointwise evaluation") {
        const auto s = examples::ex62b();
        const auto h = sample_h(s, {-3.0, -0.5, 0.5, 2.0});
        for (std::size_t i = 0; i < h.size(); ++i)
            CHECK(h.values[i].real() == doctest::Approx(h_function(s, h.grid[i])).epsilon(1e-12));
    }
}
