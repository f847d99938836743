#include "halfline/direct.hpp"

#include <algorithm>
#include <cmath>

#include "halfline/errors.hpp"
#include "halfline/propagate.hpp"

namespace halfline {

namespace {

const cplx I(0.0, 1.0);

BoundaryTrace trace(const Propagator& p, cplx k) {
    BoundaryTrace t{k, 0.0, 0.0};
    p.jost_at_zero(k, t.f0, t.fp0);
    return t;
}

double h_of(const Propagator& p, const Boundary& bc, double beta) {
    const BoundaryTrace t = trace(p, cplx(0.0, beta));
    const cplx h = bc.is_dirichlet() ? t.f0 : -(t.fp0 + bc.cot_theta * t.f0);
    if (std::abs(h.imag()) > 1e-9 * (1.0 + std::abs(h.real())))
        throw NumericalError("H(beta) has a non-negligible imaginary part");
    return h.real();
}

double dh_of(const Propagator& p, const Boundary& bc, double beta) {
    const double d = 1e-6 * (1.0 + std::abs(beta));
    return (h_of(p, bc, beta + d) - h_of(p, bc, beta - d)) / (2.0 * d);
}

bool exceptional_trace(const Boundary& bc, const BoundaryTrace& t0) {
    const cplx F0 = jost_function(bc, t0);
    return std::abs(F0) < 1e-9 * (1.0 + std::abs(t0.f0) + std::abs(t0.fp0));
}

}  // namespace

BoundaryTrace jost_boundary_trace(const OperatorSpec& spec, cplx k) {
    return trace(Propagator(spec.potential), k);
}

cplx jost_function(const Boundary& bc, const BoundaryTrace& tr) {
    if (bc.is_dirichlet()) return tr.f0;
    return -I * (tr.fp0 + bc.cot_theta * tr.f0);
}

cplx jost_function(const OperatorSpec& spec, cplx k) {
    return jost_function(spec.boundary, jost_boundary_trace(spec, k));
}

SampledFunction regular_solution(const OperatorSpec& spec, cplx k, const std::vector<double>& x) {
    Propagator p(spec.potential);
    const bool dir = spec.boundary.is_dirichlet();
    const auto pts = p.forward(k, dir ? 0.0 : 1.0, dir ? 1.0 : -spec.boundary.cot_theta, x, false);
    SampledFunction out{x, {}};
    for (const auto& s : pts) out.values.push_back(s.y);
    return out;
}

SampledFunction jost_solution(const OperatorSpec& spec, cplx k, const std::vector<double>& x) {
    Propagator p(spec.potential);
    const double b = spec.potential.b;
    std::vector<double> inside;
    for (double xi : x)
        if (xi <= b) inside.push_back(xi);
    const auto pts = p.jost_backward(k, inside, false);
    SampledFunction out{x, {}};
    for (std::size_t i = 0; i < x.size(); ++i)
        out.values.push_back(i < pts.size() ? pts[i].y : std::exp(I * k * x[i]));
    return out;
}

double HEvaluator::operator()(double beta) const { return h_of(prop_, bc_, beta); }

double HEvaluator::derivative(double beta) const { return dh_of(prop_, bc_, beta); }

double h_function(const OperatorSpec& spec, double beta) {
    return h_of(Propagator(spec.potential), spec.boundary, beta);
}

double h_derivative(const OperatorSpec& spec, double beta) {
    return dh_of(Propagator(spec.potential), spec.boundary, beta);
}

bool is_exceptional(const OperatorSpec& spec) {
    return exceptional_trace(spec.boundary, jost_boundary_trace(spec, 0.0));
}

namespace {

cplx scattering_from(const Propagator& p, const Boundary& bc, double k, int exceptional_flag) {
    if (k == 0.0) {
        const bool exc = exceptional_flag >= 0 ? exceptional_flag == 1 : exceptional_trace(bc, trace(p, 0.0));
        const double generic = bc.is_dirichlet() ? 1.0 : -1.0;
        return exc ? -generic : generic;
    }
    const BoundaryTrace t = trace(p, k);
    const BoundaryTrace tm{-k, std::conj(t.f0), std::conj(t.fp0)};
    const cplx Fk = jost_function(bc, t);
    if (std::abs(Fk) < 1e-300) throw NumericalError("Jost function underflow on the real axis");
    const cplx Fm = jost_function(bc, tm);
    return (bc.is_dirichlet() ? 1.0 : -1.0) * Fm / Fk;
}

}  // namespace

cplx scattering_matrix(const OperatorSpec& spec, double k) {
    return scattering_from(Propagator(spec.potential), spec.boundary, k, -1);
}

FullLineCoefficients full_line_coefficients(const OperatorSpec& spec, cplx k) {
    Propagator p(spec.potential);
    const BoundaryTrace t = trace(p, k);
    FullLineCoefficients out{k, 0.0, 0.0, 0.0, false};
    if (std::abs(k) < 1e-14) {
        if (std::abs(t.fp0) < 1e-9 * (1.0 + std::abs(t.f0))) {
            const double d = 1e-5;
            const cplx fd = trace(p, d).fp0;
            const cplx dfp = I * fd.imag() / d;  // f'(-k,0) = conj f'(k,0)
            const cplx den = dfp + I * t.f0;
            out.T = 2.0 * I / den;
            out.L = (I * t.f0 - dfp) / den;
            out.R = (dfp - I * t.f0) / den;
        } else {
            out.T = 0.0;
            out.L = -1.0;
            out.R = -1.0;
        }
        return out;
    }
    const BoundaryTrace tm = trace(p, -k);
    const cplx den = t.fp0 + I * k * t.f0;
    out.bound_state_pole = std::abs(den) < 1e-12 * (1.0 + std::abs(t.fp0) + std::abs(k * t.f0));
    out.T = 2.0 * I * k / den;
    out.L = (I * k * t.f0 - t.fp0) / den;
    out.R = -(tm.fp0 + I * k * tm.f0) / den;
    return out;
}

bool polish_zero(const OperatorSpec& spec, double& beta, double max_move) {
    Propagator p(spec.potential);
    const double start = beta;
    double b = beta;
    for (int it = 0; it < 30; ++it) {
        const double h = h_of(p, spec.boundary, b);
        const double d = 1e-7 * (1.0 + std::abs(b));
        const double dh = (h_of(p, spec.boundary, b + d) - h_of(p, spec.boundary, b - d)) / (2.0 * d);
        if (dh == 0.0 || !std::isfinite(dh)) return false;
        const double step = h / dh;
        b -= step;
        if (std::abs(b - start) > max_move) return false;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(b))) break;
    }
    beta = b;
    return true;
}

std::pair<double, double> norming_constants(const OperatorSpec& spec, double gamma) {
    if (!(gamma > 0.0)) throw InvalidInput("norming constants need gamma > 0");
    double g0 = gamma;
    if (!polish_zero(spec, g0, 1e-3 * (1.0 + gamma)) || g0 <= 0.0)
        throw InvalidInput("gamma is not a bound state of the operator");
    Propagator p(spec.potential);
    const double b = spec.potential.b;
    const cplx k(0.0, g0);
    const bool dir = spec.boundary.is_dirichlet();
    const auto phi = p.forward(k, dir ? 0.0 : 1.0, dir ? 1.0 : -spec.boundary.cot_theta, {b}, true);
    const double phib = phi[0].y.real();
    const double intphi = phi[0].integral.real() + phib * phib / (2.0 * g0);
    const auto f = p.jost_backward(k, {0.0}, true);
    const double intf = f[0].integral.real() + std::exp(-2.0 * g0 * b) / (2.0 * g0);
    return {1.0 / std::sqrt(intphi), 1.0 / std::sqrt(intf)};
}

double default_beta_max(const OperatorSpec& spec) {
    double vmin = 0.0;
    for (double v : spec.potential.cells) vmin = std::min(vmin, v);
    const double c = spec.boundary.is_dirichlet() ? 0.0 : std::max(0.0, spec.boundary.cot_theta);
    return 1.5 * (std::sqrt(-vmin) + c + 1.0) + 1.0;
}

BoundStateSet bound_states(const OperatorSpec& spec, double beta_max) {
    if (!(beta_max > 0.0)) throw InvalidInput("beta_max must be positive");
    Propagator p(spec.potential);
    const auto& bc = spec.boundary;
    const double step = std::min(1e-2 * beta_max, 0.05);
    const int n = static_cast<int>(std::ceil(beta_max / step));
    BoundStateSet out;
    double lo = 1e-8 * beta_max;
    double hlo = h_of(p, bc, lo);
    for (int i = 1; i <= n; ++i) {
        const double hi = std::min(beta_max, i * step);
        const double hhi = h_of(p, bc, hi);
        const bool exact = hhi == 0.0;
        if (exact || (hlo != 0.0 && (hlo < 0.0) != (hhi < 0.0))) {
            double a = lo, c = hi, fa = hlo;
            while (!exact && c - a > 1e-13 * (1.0 + c)) {
                const double m = 0.5 * (a + c);
                const double fm = h_of(p, bc, m);
                if (fm == 0.0) {
                    a = c = m;
                } else if ((fm < 0.0) == (fa < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    c = m;
                }
            }
            double root = exact ? hi : 0.5 * (a + c);
            double polished = root;
            if (polish_zero(spec, polished, 1e-10 * (1.0 + root))) root = polished;
            const auto [g, m] = norming_constants(spec, root);
            out.push_back({root, g, m});
        }
        lo = hi;
        hlo = hhi;
    }
    return out;
}

SampledFunction sample_jost(const OperatorSpec& spec, const std::vector<double>& k) {
    Propagator p(spec.potential);
    SampledFunction out{k, std::vector<cplx>(k.size())};
    for (std::size_t i = 0; i < k.size(); ++i) out.values[i] = jost_function(spec.boundary, trace(p, k[i]));
    return out;
}

SampledFunction sample_scattering(const OperatorSpec& spec, const std::vector<double>& k) {
    Propagator p(spec.potential);
    const int exc = exceptional_trace(spec.boundary, trace(p, 0.0)) ? 1 : 0;
    SampledFunction out{k, std::vector<cplx>(k.size())};
    for (std::size_t i = 0; i < k.size(); ++i) out.values[i] = scattering_from(p, spec.boundary, k[i], exc);
    return out;
}

SampledFunction sample_abs_jost(const OperatorSpec& spec, const std::vector<double>& k) {
    auto f = sample_jost(spec, k);
    for (auto& v : f.values) v = std::abs(v);
    return f;
}

}  // namespace halfline
