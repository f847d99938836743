#include "halfline/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "halfline/direct.hpp"
#include "halfline/errors.hpp"
#include "halfline/propagate.hpp"
#include "halfline/resonance.hpp"

namespace halfline {

namespace {

std::vector<SolutionPoint> regular_profile(const OperatorSpec& spec, double gamma, const std::vector<double>& x) {
    Propagator p(spec.potential);
    const bool dir = spec.boundary.is_dirichlet();
    return p.forward(cplx(0.0, gamma), dir ? 0.0 : 1.0, dir ? 1.0 : -spec.boundary.cot_theta, x, true);
}

// Removal term 2 f^2 / int_x^infinity f^2 and its slope, f the Jost solution at k = i gamma.
// Equals 2 g^2 phi^2 / (1 - g^2 int_0^x phi^2) when g is the norming constant.
struct RemovalTerm {
    std::vector<double> q, dq;
};
RemovalTerm removal_term(const OperatorSpec& spec, double gamma, const std::vector<double>& x) {
    const double b = spec.potential.b;
    std::vector<double> inside;
    for (double v : x)
        if (v <= b) inside.push_back(std::max(v, 0.0));
    const auto pts = Propagator(spec.potential).jost_backward(cplx(0.0, gamma), inside, true);
    const double tail = std::exp(-2.0 * gamma * b) / (2.0 * gamma);
    RemovalTerm out{std::vector<double>(x.size()), std::vector<double>(x.size())};
    for (std::size_t i = 0; i < x.size(); ++i) {
        double f, fp, J;
        if (i < pts.size()) {
            f = pts[i].y.real();
            fp = pts[i].yp.real();
            J = pts[i].integral.real() + tail;
        } else {
            f = std::exp(-gamma * x[i]);
            fp = -gamma * f;
            J = f * f / (2.0 * gamma);
        }
        out.q[i] = 2.0 * f * f / J;
        out.dq[i] = 4.0 * f * fp / J + 2.0 * f * f * f * f / (J * J);
    }
    return out;
}

std::size_t refined_count(std::size_t n, const DarbouxOptions& opt) {
    std::size_t r = static_cast<std::size_t>(std::max(1, opt.refine));
    while (r > 1 && n * r > std::max(opt.max_cells, n)) --r;
    return n * r;
}

// sign = -1 adds (denominator 1 + g^2 I), +1 removes (1 - g^2 I).
std::vector<double> transformed_cells(const OperatorSpec& spec, double gamma, double g2, int sign,
                                      const DarbouxOptions& opt) {
    const auto& pot = spec.potential;
    const std::size_t n_new = refined_count(pot.cells.size(), opt);
    const std::size_t r = n_new / pot.cells.size();
    const double h = pot.b / static_cast<double>(n_new);
    std::vector<double> edges(n_new + 1);
    for (std::size_t i = 0; i <= n_new; ++i) edges[i] = pot.b * static_cast<double>(i) / static_cast<double>(n_new);
    std::vector<double> q(n_new + 1);
    if (sign > 0) {
        q = removal_term(spec, gamma, edges).q;
    } else {
        const auto prof = regular_profile(spec, gamma, edges);
        for (std::size_t i = 0; i <= n_new; ++i) {
            const double phi = prof[i].y.real();
            q[i] = 2.0 * g2 * phi * phi / (1.0 + g2 * prof[i].integral.real());
        }
    }
    std::vector<double> out(n_new);
    for (std::size_t i = 0; i < n_new; ++i) out[i] = pot.cells[i / r] + sign * (q[i + 1] - q[i]) / h;
    return out;
}

double support_residual(const OperatorSpec& spec, double gamma, double g2, Direction dir) {
    const double b = spec.potential.b;
    std::vector<double> x(64);
    for (int i = 0; i < 64; ++i) x[i] = b + b * (i + 1) / 64.0;
    double m = 0.0;
    for (double v : transformed_potential_at(spec, gamma, g2, dir, x)) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

double support_preserving_norming_constant(const OperatorSpec& spec, double gamma) {
    const double g = polish_resonance(spec, gamma);
    const auto prof = regular_profile(spec, g, {spec.potential.b});
    const double phib = prof[0].y.real();
    return 2.0 * g / (phib * phib - 2.0 * g * prof[0].integral.real());
}

DarbouxResult add_bound_state(const OperatorSpec& spec, double gamma, const DarbouxOptions& opt) {
    const double g = polish_resonance(spec, gamma);
    const double g2 = support_preserving_norming_constant(spec, g);
    if (!(g2 > 0.0) || classify_eligibility(spec, g) != Eligibility::Eligible)
        throw InvalidInput("resonance gamma=" + std::to_string(g) + " is ineligible (g^2=" + std::to_string(g2) +
                           ")");
    DarbouxResult res;
    res.gamma = g;
    res.g_squared = g2;
    Boundary bc = spec.boundary;
    if (!bc.is_dirichlet()) bc.cot_theta += g2;
    res.spec = make_operator_spec(spec.potential.b, transformed_cells(spec, g, g2, -1, opt), bc);
    // |F_new(-i g)| = 2 g |H_old'(-g)| since F_old vanishes there.
    const double slope = std::abs(h_derivative(spec, -g));
    res.bound_state = {g, std::sqrt(g2), std::sqrt(g2) * slope};
    res.support_residual = support_residual(spec, g, g2, Direction::Add);
    return res;
}

DarbouxResult remove_bound_state(const OperatorSpec& spec, double gamma, double gnorm, const DarbouxOptions& opt) {
    if (!(gnorm > 0.0)) throw InvalidInput("norming constant must be positive");
    double beta = gamma;
    if (!(gamma > 0.0) || !polish_zero(spec, beta, 1e-3 * (1.0 + gamma)) || !(beta > 0.0))
        throw InvalidInput("gamma=" + std::to_string(gamma) + " is not a bound state");
    const double g2 = gnorm * gnorm;
    const auto [g_true, m_true] = norming_constants(spec, beta);
    if (std::abs(gnorm - g_true) > 1e-6 * g_true)
        throw InvalidInput("norming constant g=" + std::to_string(gnorm) + " does not match the bound state (g=" +
                           std::to_string(g_true) + ")");
    DarbouxResult res;
    res.gamma = beta;
    res.g_squared = g2;
    Boundary bc = spec.boundary;
    if (!bc.is_dirichlet()) bc.cot_theta -= g2;
    res.spec = make_operator_spec(spec.potential.b, transformed_cells(spec, beta, g2, +1, opt), bc);
    res.bound_state = {beta, gnorm, m_true};
    res.support_residual = support_residual(spec, beta, g2, Direction::Remove);
    return res;
}

std::vector<double> transformed_potential_at(const OperatorSpec& spec, double gamma, double g2, Direction dir,
                                             const std::vector<double>& x) {
    std::vector<double> out(x.size());
    if (dir == Direction::Remove) {
        const auto r = removal_term(spec, gamma, x);
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = spec.potential.value_at(x[i]) + r.dq[i];
        return out;
    }
    const auto prof = regular_profile(spec, gamma, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double phi = prof[i].y.real(), dphi = prof[i].yp.real();
        const double den = 1.0 + g2 * prof[i].integral.real();
        const double q1 = (4.0 * g2 * phi * dphi * den - 2.0 * g2 * g2 * phi * phi * phi * phi) / (den * den);
        out[i] = spec.potential.value_at(x[i]) - q1;
    }
    return out;
}

SampledFunction transform_jost(const SampledFunction& F, double gamma, Direction dir) {
    SampledFunction out = F;
    const cplx ig(0.0, gamma);
    for (std::size_t i = 0; i < F.size(); ++i) {
        const double k = F.grid[i];
        const cplx r = (k - ig) / (k + ig);
        out.values[i] *= dir == Direction::Add ? r : 1.0 / r;
    }
    return out;
}

SampledFunction transform_scattering(const SampledFunction& S, double gamma, Direction dir) {
    SampledFunction out = S;
    const cplx ig(0.0, gamma);
    for (std::size_t i = 0; i < S.size(); ++i) {
        const double k = S.grid[i];
        const cplx r = (k + ig) / (k - ig);
        out.values[i] *= dir == Direction::Add ? r * r : 1.0 / (r * r);
    }
    return out;
}

}  // namespace halfline
