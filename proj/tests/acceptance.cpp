// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "halfline/darboux.hpp"
#include "halfline/direct.hpp"
#include "halfline/errors.hpp"
#include "halfline/examples.hpp"
#include "halfline/gelfand_levitan.hpp"
#include "halfline/marchenko.hpp"
#include "halfline/resonance.hpp"

using namespace halfline;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [" << what << "]";
        }
    }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
bool rel_near(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

const Resonance* find_resonance(const ResonanceReport& r, double gamma, double tol) {
    for (const auto& x : r.resonances)
        if (near(x.gamma, gamma, tol)) return &x;
    return nullptr;
}

// sup |cells - reference| over cells whose centre is at least `margin` from every listed jump.
double cell_error(const OperatorSpec& got, const OperatorSpec& ref, const std::vector<double>& jumps, double margin) {
    const auto& c = got.potential.cells;
    const double h = got.potential.cell_width();
    double worst = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double x = (static_cast<double>(i) + 0.5) * h;
        if (std::any_of(jumps.begin(), jumps.end(), [&](double j) { return std::abs(x - j) < margin; })) continue;
        worst = std::max(worst, std::abs(c[i] - ref.potential.value_at(x)));
    }
    return worst;
}

void criterion1(Outcome& o) {
    const auto spec = examples::ex62a();
    const auto bs = bound_states(spec, default_beta_max(spec));
    o.check(bs.size() == 2, "two bound states");
    if (bs.size() == 2) {
        o.check(near(bs[0].gamma, 0.760409, 5e-4), "gamma1");
        o.check(near(bs[1].gamma, 3.25273, 5e-4), "gamma2");
    }
    const auto rep = analyze_resonances(spec, default_beta_max(spec));
    const auto* r = find_resonance(rep, 2.82084, 5e-4);
    o.check(r != nullptr, "resonance 2.82084");
    if (r) {
        o.check(r->eligibility == Eligibility::Ineligible, "ineligible");
        o.check(rel_near(r->g_squared, -4.23761, 1e-3), "g^2");
        o.detail << " g2=" << r->g_squared;
    }
}

void criterion2(Outcome& o) {
    const auto spec = examples::ex62b();
    const auto bs = bound_states(spec, default_beta_max(spec));
    o.check(bs.size() == 1 && near(bs[0].gamma, 6.01664, 5e-4), "bound state 6.01664");
    const auto rep = analyze_resonances(spec, default_beta_max(spec));
    const auto* e = find_resonance(rep, 3.36182, 5e-4);
    const auto* i = find_resonance(rep, 5.95842, 5e-4);
    o.check(e && e->eligibility == Eligibility::Eligible, "3.36182 eligible");
    o.check(e && rel_near(e->g_squared, 1.93209, 1e-3), "g^2 1.93209");
    o.check(i && i->eligibility == Eligibility::Ineligible, "5.95842 ineligible");
    if (e) o.detail << " g2=" << e->g_squared;
}

void criterion3(Outcome& o) {
    const auto spec = examples::ex62c();
    o.check(bound_states(spec, default_beta_max(spec)).empty(), "no bound states");
    const auto rep = analyze_resonances(spec, 10.0);
    const auto* r = find_resonance(rep, 3.6205, 2e-3);
    o.check(r != nullptr, "zero near 3.6205");
    if (r) {
        o.check(!r->simple, "double");
        o.check(r->eligibility == Eligibility::Ineligible, "ineligible");
        o.detail << " beta=" << -r->gamma;
    }
}

void criterion4(Outcome& o) {
    const auto root = examples::root_solve_example_63_a();
    const double a = root.a;
    o.check(near(a, 0.857247, 5e-6) && root.residual < 1e-10, "a");
    o.detail << " a=" << a;
    const auto spec = examples::ex63(a);
    const auto c = full_line_coefficients(spec, 0.0);
    o.check(near(c.T.real(), 0.973827, 5e-4) && near(c.T.imag(), 0.0, 5e-4), "T(0)");
    o.check(near(c.L.real(), -0.2273, 5e-4), "L(0)");
    o.check(near(c.R.real(), 0.2273, 5e-4), "R(0)");
    const auto S = sample_scattering(spec, examples::default_k());
    const auto inv = invert_scattering(S, 1.0, 100);
    o.check(inv.tag == CaseTag::III && inv.solutions.size() == 2, "case III with two solutions");
    if (inv.solutions.size() != 2) return;
    bool dirichlet = false, neumann = false;
    for (const auto& s : inv.solutions) {
        if (s.spec.boundary.is_dirichlet()) dirichlet = true;
        else if (near(s.spec.boundary.cot_theta, 0.0, 1e-2)) neumann = true;
        o.check(s.s_error <= 1e-3, "S reproduced");
    }
    o.check(dirichlet && neumann, "theta = pi and pi/2");
    const double d = integral_of_potential(inv.solutions[0].spec) - integral_of_potential(inv.solutions[1].spec);
    o.check(std::abs(d) <= 1e-2, "integrals equal");
    o.detail << " intdiff=" << d;
}

void criterion5(Outcome& o) {
    const auto spec = examples::ex61();
    const auto rep = analyze_resonances(spec, 5.0);
    int eligible = 0;
    for (const auto& r : rep.resonances) eligible += r.eligibility == Eligibility::Eligible;
    o.check(eligible == 1 && rep.M == 1, "one eligible resonance");
    const auto* r = find_resonance(rep, 1.0, 1e-8);
    o.check(r && rel_near(r->g_squared, 2.0, 1e-8), "gamma 1, g^2 2");
    const auto add = add_bound_state(spec, 1.0);
    std::vector<double> x;
    for (int i = 0; i <= 200; ++i) x.push_back(0.01 * i);
    const auto V = transformed_potential_at(spec, 1.0, add.g_squared, Direction::Add, x);
    double sup = std::max(add.spec.potential.max_abs(), 0.0);
    for (double v : V) sup = std::max(sup, std::abs(v));
    o.check(sup < 1e-8, "V stays zero");
    o.check(!add.spec.boundary.is_dirichlet() && near(add.spec.boundary.cot_theta, 1.0, 1e-8), "cot becomes 1");
    o.detail << " supV=" << sup;
}

void criterion6(Outcome& o) {
    std::mt19937 rng(20261015);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    DarbouxOptions opt;
    opt.refine = 512;
    opt.max_cells = 65536;
    double unimod = 0, wronsk = 0, norming = 0, modulus = 0, law = 0, trip = 0;
    int bound = 0, transforms = 0;
    for (int trial = 0; trial < 200 && transforms < 4; ++trial) {
        std::vector<double> cells(8);
        for (auto& v : cells) v = -4.0 + 8.0 * U(rng);
        const Boundary bc = trial % 4 == 3 ? Boundary::dirichlet() : Boundary::non_dirichlet(-1.5 + 2.0 * U(rng));
        const auto spec = make_operator_spec(1.0, cells, bc);
        if (trial < 20) {
            for (int j = 0; j < 10; ++j) {
                const double k = 20.0 * std::abs(U(rng)) + 1e-3;
                unimod = std::max(unimod, std::abs(std::abs(scattering_matrix(spec, k)) - 1.0));
                const auto p = jost_boundary_trace(spec, k), q = jost_boundary_trace(spec, -k);
                const cplx W = p.f0 * q.fp0 - p.fp0 * q.f0;
                wronsk = std::max(wronsk, std::abs(W + cplx(0.0, 2.0 * k)) / (1.0 + k));
            }
            for (const auto& b : bound_states(spec, default_beta_max(spec))) {
                const double F = std::abs(jost_function(spec, cplx(0.0, -b.gamma)));
                norming = std::max(norming, std::abs(b.g - 2.0 * b.gamma * b.m / F) / b.g);
                ++bound;
            }
        }
        const Resonance* e = nullptr;
        const auto rep = analyze_resonances(spec, 10.0);
        for (const auto& r : rep.resonances)
            if (r.eligibility == Eligibility::Eligible) e = &r;
        if (!e) continue;
        ++transforms;
        std::vector<double> k(50);
        for (auto& v : k) v = 15.0 * std::abs(U(rng)) + 1e-2;
        std::sort(k.begin(), k.end());
        const auto F = sample_jost(spec, k);
        const auto G = transform_jost(F, e->gamma, Direction::Add);
        const auto add = add_bound_state(spec, e->gamma, opt);
        const auto Fn = sample_jost(add.spec, k);
        for (std::size_t i = 0; i < k.size(); ++i) {
            modulus = std::max(modulus, std::abs(std::abs(G.values[i]) - std::abs(F.values[i])) / std::abs(F.values[i]));
            law = std::max(law, std::abs(Fn.values[i] - G.values[i]) / std::abs(G.values[i]));
        }
        const auto back = remove_bound_state(add.spec, add.gamma, add.bound_state.g, opt);
        const auto coarse = coarsen(back.spec.potential.cells, cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) trip = std::max(trip, std::abs(coarse[i] - cells[i]));
        if (!bc.is_dirichlet()) trip = std::max(trip, std::abs(back.spec.boundary.cot_theta - bc.cot_theta));
    }
    o.check(unimod <= 1e-8, "unimodularity");
    o.check(wronsk <= 1e-8, "Wronskian");
    o.check(norming <= 1e-6 && bound > 0, "norming relation");
    o.check(modulus <= 1e-9, "|F| invariance");
    o.check(law <= 1e-6, "F transform law");
    o.check(trip <= 1e-6, "add/remove round trip");
    o.check(transforms == 4, "transforms exercised");
    o.detail << " unimod=" << unimod << " wronsk=" << wronsk << " norming=" << norming << " (" << bound
             << " states) modulus=" << modulus << " law=" << law << " trip=" << trip << " transforms=" << transforms;
}

void criterion7(Outcome& o) {
    const auto k = examples::default_k();
    auto marchenko = [&](const OperatorSpec& spec, const char* name) {
        const auto inv = invert_scattering(sample_scattering(spec, k), 1.0, 100);
        o.check(inv.solutions.size() == 1, std::string(name) + " unique");
        if (inv.solutions.size() != 1) return;
        const auto& s = inv.solutions[0].spec;
        const double e = cell_error(s, spec, {1.0}, 0.05);
        o.check(e <= 2e-2, std::string(name) + " cells");
        o.check(s.boundary.is_dirichlet() == spec.boundary.is_dirichlet(), std::string(name) + " class");
        if (!spec.boundary.is_dirichlet())
            o.check(near(s.boundary.cot_theta, spec.boundary.cot_theta, 1e-2), std::string(name) + " cot");
        o.detail << " " << name << "=" << e;
    };
    marchenko(examples::ex62a(), "ex62a");
    marchenko(examples::dirichlet_well(), "well");

    const auto spec = examples::ex62b();
    const auto absF = sample_abs_jost(spec, k);
    const auto fam = enumerate_solutions(absF, default_beta_max(spec), 1.0, 100);
    o.check(fam.members.size() == 4, "family of 4");
    double best = 1e300;
    for (const auto& m : fam.members) {
        if (m.spec.boundary.is_dirichlet() || !near(m.spec.boundary.cot_theta, 6.0, 1e-2)) continue;
        best = std::min(best, cell_error(m.spec, spec, {1.0}, 0.05));
    }
    o.check(best <= 2e-2, "original in family");
    o.check(fam.max_modulus_error <= 1e-3, "member |F|");
    o.detail << " family=" << best << " modulus=" << fam.max_modulus_error;
}

std::vector<double> ineligible_below(const OperatorSpec& spec, double beta_max, double cut) {
    std::vector<double> out;
    for (const auto& r : analyze_resonances(spec, beta_max).resonances)
        if (r.eligibility == Eligibility::Ineligible && r.gamma < cut) out.push_back(r.gamma);
    return out;
}

void criterion8(Outcome& o) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> V(-30.0, 10.0), C(-4.0, 4.0);
    const double beta_max = 15.0;
    DarbouxOptions opt;
    opt.refine = 256;
    opt.max_cells = 2048;
    int alternation = 0, count = 0, invariance = 0, agreement = 0, adds = 0, removes = 0, stripped = 0;
    double shift = 0.0;  // discretization of the transformed potential, not an invariance test
    for (int trial = 0; trial < 50; ++trial) {
        const Boundary bc = trial % 5 == 0 ? Boundary::dirichlet() : Boundary::non_dirichlet(C(rng));
        const auto spec = make_operator_spec(1.0, {V(rng), V(rng)}, bc);
        const auto rep = analyze_resonances(spec, beta_max);
        int eligible = 0;
        bool last_eligible = false;
        for (std::size_t i = 0; i < rep.resonances.size(); ++i) {
            const auto& r = rep.resonances[i];
            const bool el = r.eligibility == Eligibility::Eligible;
            if (el && i > 0 && last_eligible) ++alternation;
            last_eligible = el;
            eligible += el;
            if (!r.simple) continue;
            if (classify_via_stripped(spec, r.gamma, bound_states(spec, beta_max)) != r.eligibility) ++agreement;
            if ((r.g_squared > 0.0) != el) ++agreement;
        }

        // M counted on the bound-state-free member reached by removing every bound state.
        OperatorSpec base = spec;
        for (auto bs = bound_states(base, beta_max); !bs.empty(); bs = bound_states(base, beta_max))
            base = remove_bound_state(base, bs.back().gamma, bs.back().g, opt).spec;
        if (!bound_states(spec, beta_max).empty()) ++stripped;
        int base_eligible = 0;
        for (const auto& r : analyze_resonances(base, beta_max).resonances)
            base_eligible += r.eligibility == Eligibility::Eligible;
        if (base_eligible != eligible + rep.bound_state_count) ++count;

        const double cut = 0.8 * beta_max;
        const auto before = ineligible_below(spec, beta_max, cut);
        std::vector<double> after;
        const Resonance* e = nullptr;
        for (const auto& r : rep.resonances)
            if (r.eligibility == Eligibility::Eligible && r.gamma < cut) e = &r;
        if (e) {
            after = ineligible_below(add_bound_state(spec, e->gamma, opt).spec, beta_max, cut);
            ++adds;
        } else if (const auto bs = bound_states(spec, beta_max); !bs.empty()) {
            after = ineligible_below(remove_bound_state(spec, bs.back().gamma, bs.back().g, opt).spec, beta_max, cut);
            ++removes;
        } else {
            continue;
        }
        if (before.size() != after.size()) {
            ++invariance;
        } else {
            for (std::size_t i = 0; i < before.size(); ++i) shift = std::max(shift, std::abs(before[i] - after[i]));
        }
    }
    o.check(alternation == 0, "alternation");
    o.check(count == 0, "M = eligible + N");
    o.check(invariance == 0, "ineligible count invariance");
    o.check(agreement == 0, "criteria agree");
    o.check(adds > 0 && stripped > 0, "transforms exercised");
    o.detail << " violations alt=" << alternation << " M=" << count << " inv=" << invariance << " agree=" << agreement
             << " adds=" << adds << " removes=" << removes << " stripped=" << stripped << " max_shift=" << shift;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"1 example 6.2(a) spectrum", criterion1},   {"2 example 6.2(b) spectrum", criterion2},
        {"3 example 6.2(c) double zero", criterion3}, {"4 example 6.3 nonuniqueness", criterion4},
        {"5 example 6.1 family", criterion5},         {"6 property suite", criterion6},
        {"7 inversion round trips", criterion7},      {"8 eligibility structure", criterion8},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.pass;
        std::printf("%s criterion %s (%.1f s):%s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.str().c_str());
        std::fflush(stdout);
    }
    return failures;
}
