#include "halfline/gelfand_levitan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "halfline/direct.hpp"
#include "halfline/errors.hpp"
#include "halfline/fourier.hpp"
#include "halfline/parallel.hpp"
#include "halfline/rational.hpp"

namespace halfline {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

std::vector<double> trapezoid_weights(const std::vector<double>& k) {
    std::vector<double> w(k.size(), 0.0);
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        const double h = 0.5 * (k[i + 1] - k[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    return w;
}

std::vector<double> moduli(const SampledFunction& absF) {
    std::vector<double> a(absF.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(absF.values[i]);
    return a;
}

// Four-point Lagrange interpolation (and slope) on a sorted grid.
std::pair<double, double> lagrange(const std::vector<double>& x, const std::vector<double>& y, double at) {
    auto it = std::lower_bound(x.begin(), x.end(), at);
    long j = static_cast<long>(it - x.begin()) - 2;
    j = std::clamp<long>(j, 0, static_cast<long>(x.size()) - 4);
    double v = 0.0, d = 0.0;
    for (long a = j; a < j + 4; ++a) {
        double la = 1.0, dla = 0.0;
        for (long b = j; b < j + 4; ++b) {
            if (b == a) continue;
            const double den = x[static_cast<std::size_t>(a)] - x[static_cast<std::size_t>(b)];
            double term = 1.0 / den;
            for (long c = j; c < j + 4; ++c)
                if (c != a && c != b)
                    term *= (at - x[static_cast<std::size_t>(c)]) / (x[static_cast<std::size_t>(a)] - x[static_cast<std::size_t>(c)]);
            dla += term;
            la *= (at - x[static_cast<std::size_t>(b)]) / den;
        }
        v += la * y[static_cast<std::size_t>(a)];
        d += dla * y[static_cast<std::size_t>(a)];
    }
    return {v, d};
}

// (1/pi) int_0^inf w(k) (cos kt - shift) dk with the tail model transformed in closed form.
class CosineData {
public:
    CosineData(const SampledFunction& absF, ThetaClass cls, const GLOptions& opt) {
        const SampledFunction half = nonnegative_half(absF);
        const auto a = moduli(half);
        shift_ = cls == ThetaClass::Dirichlet ? 1.0 : 0.0;
        SampledFunction w;
        w.grid = half.grid;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double k = half.grid[i];
            const double v = cls == ThetaClass::Dirichlet ? 1.0 / (a[i] * a[i]) - 1.0 : k * k / (a[i] * a[i]) - 1.0;
            w.values.emplace_back(v);
        }
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (std::isfinite(w.values[i].real())) continue;
            // only k = 0 can be singular; its weight vanishes in the Dirichlet form
            if (half.grid[i] != 0.0) throw InvalidInput("|F| vanishes at nonzero k");
            w.values[i] = shift_ == 1.0 || i + 1 >= w.size() ? 0.0 : w.values[i + 1];
        }
        tail_ = fit_cosine_tail(w, opt.tail_terms, opt.tail_lambda, opt.support);
        k_ = w.grid;
        const auto tw = trapezoid_weights(k_);
        const double kmax = k_.back();
        c_.resize(k_.size());
        for (std::size_t i = 0; i < k_.size(); ++i) {
            const double r = w.values[i].real() - tail_(k_[i]);
            if (k_[i] >= (1.0 - opt.taper_fraction) * kmax) tail_residual_ = std::max(tail_residual_, std::abs(r));
            c_[i] = tw[i] * taper(k_[i], kmax, opt.taper_fraction) * r / kPi;
        }
        tail_at_zero_ = tail_.cosine_transform(0.0);
    }

    double operator()(double t) const {
        double s = 0.0;
        for (std::size_t i = 0; i < k_.size(); ++i) s += c_[i] * (std::cos(k_[i] * t) - shift_);
        return s + tail_.cosine_transform(t) - shift_ * tail_at_zero_;
    }

    double tail_residual() const { return tail_residual_; }

private:
    double shift_ = 0.0;
    CosineTail tail_;
    std::vector<double> k_, c_;
    double tail_at_zero_ = 0.0;
    double tail_residual_ = 0.0;
};

double bound_term(ThetaClass cls, const BoundStateSet& bs, double x, double y) {
    double s = 0.0;
    for (const auto& b : bs) {
        if (cls == ThetaClass::Dirichlet)
            s += b.g * b.g / (b.gamma * b.gamma) * std::sinh(b.gamma * x) * std::sinh(b.gamma * y);
        else
            s += b.g * b.g * std::cosh(b.gamma * x) * std::cosh(b.gamma * y);
    }
    return s;
}

void check_class(ThetaClass cls) {
    if (cls == ThetaClass::Undetermined) throw InvalidInput("boundary class must be known");
}

// Kernel diagonal at x_j = j bmax / cells, from trapezoid solves on n and 2n
// cells combined by Richardson extrapolation.
std::vector<double> diagonal_on(const SampledFunction& absF, const BoundStateSet& bound_states, ThetaClass cls,
                                double bmax, int cells, const GLOptions& opt, double* tail_residual = nullptr) {
    const int n = opt.solver_cells;
    if (n < 2) throw InvalidInput("solver_cells must be at least 2");
    const GLKernelTable fine = gl_kernel_table(absF, bound_states, cls, bmax / (2 * n), 2 * n, opt);
    if (tail_residual) *tail_residual = fine.tail_residual;
    GLKernelTable coarse = fine;
    coarse.n = n;
    coarse.h = 2.0 * fine.h;
    coarse.C.resize(static_cast<std::size_t>(2 * n + 1));
    for (int j = 0; j <= 2 * n; ++j) coarse.C[static_cast<std::size_t>(j)] = fine.C[static_cast<std::size_t>(2 * j)];
    const GLSolution Af = solve_gl(fine);
    const GLSolution Ac = solve_gl(coarse);
    std::vector<double> ext(static_cast<std::size_t>(n + 1));
    for (int j = 0; j <= n; ++j)
        ext[static_cast<std::size_t>(j)] =
            (4.0 * Af.diagonal[static_cast<std::size_t>(2 * j)] - Ac.diagonal[static_cast<std::size_t>(j)]) / 3.0;
    std::vector<double> out(static_cast<std::size_t>(cells + 1));
    for (int c = 0; c <= cells; ++c) {
        const double pos = static_cast<double>(c) * n / cells;
        const int j = std::min(static_cast<int>(pos), n - 1);
        const double t = pos - j;
        out[static_cast<std::size_t>(c)] =
            (1.0 - t) * ext[static_cast<std::size_t>(j)] + t * ext[static_cast<std::size_t>(j + 1)];
    }
    return out;
}

std::vector<double> sample_points(double lo, double hi, int count) {
    std::vector<double> k(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) k[static_cast<std::size_t>(j)] = lo + (hi - lo) * j / (count - 1);
    return k;
}

}  // namespace

ThetaClass detect_theta_class(const SampledFunction& absF) {
    absF.validate();
    const SampledFunction half = nonnegative_half(absF);
    const double kmax = half.grid.back();
    if (kmax < 50.0) throw InvalidInput("class detection needs samples up to k >= 50");
    double skk = 0.0, ska = 0.0, sa = 0.0, saa = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < half.size(); ++i) {
        const double k = half.grid[i];
        if (k < 0.1 * kmax) continue;
        const double a = std::abs(half.values[i]);
        skk += k * k;
        ska += k * a;
        sa += a;
        saa += a * a;
        ++count;
    }
    // residuals of the least-squares fits a = c k and a = c, relative to |a|
    const double linear = std::sqrt(std::max(0.0, saa - ska * ska / skk) / saa);
    const double flat = std::sqrt(std::max(0.0, saa - sa * sa / static_cast<double>(count)) / saa);
    if (std::abs(linear - flat) < 0.1 * std::max(linear, flat))
        throw NumericalError("large-k behaviour of |F| fits neither branch");
    return linear < flat ? ThetaClass::NonDirichlet : ThetaClass::Dirichlet;
}

OuterJost::OuterJost(const SampledFunction& absF, ThetaClass cls, double support, int terms, double lambda)
    : cls_(cls), lambda_(lambda) {
    check_class(cls);
    absF.validate();
    const SampledFunction half = nonnegative_half(absF);
    if (half.size() < 8) throw InvalidInput("too few |F| samples");
    const auto a = moduli(half);
    k_ = half.grid;
    double a0 = a[0];
    if (k_[0] != 0.0) a0 = a[0] - k_[0] * (a[1] - a[0]) / (k_[1] - k_[0]);
    const double ref = lagrange(k_, a, std::min(1.0, k_.back())).first;
    exceptional_ = std::abs(a0) < 1e-6 * std::max(ref, 1e-300);

    SampledFunction l;
    l.grid = k_;
    for (std::size_t i = 0; i < a.size(); ++i) l.values.emplace_back(std::log(a[i] / std::abs(prefactor(k_[i]))));
    if (k_[0] == 0.0 && !std::isfinite(l.values[0].real()))
        l.values[0] = (4.0 * l.values[1].real() - l.values[2].real()) / 3.0;
    for (const auto& v : l.values)
        if (!std::isfinite(v.real())) throw InvalidInput("|F| must be positive away from k = 0");
    tail_ = fit_analytic_tail(l, terms, lambda_, 2.0 * support);
    if (!(tail_.residual < 1e-2)) throw NumericalError("log|F| does not decay relative to its asymptotic branch");

    std::vector<double> r(k_.size());
    for (std::size_t i = 0; i < k_.size(); ++i) r[i] = l.values[i].real() - tail_(k_[i]).real();
    for (std::size_t i = k_.size(); i-- > 0;) {
        if (k_[i] == 0.0) continue;
        t_.push_back(-k_[i]);
        r_.push_back(r[i]);
    }
    zero_ = t_.size();
    t_.insert(t_.end(), k_.begin(), k_.end());
    r_.insert(r_.end(), r.begin(), r.end());
    w_ = trapezoid_weights(t_);
    const double h = t_[1] - t_[0];
    bool uniform = true;
    for (std::size_t j = 1; j < t_.size() && uniform; ++j) uniform = std::abs(t_[j] - t_[j - 1] - h) < 1e-9 * h;
    if (uniform) step_ = h;
}

cplx OuterJost::prefactor(cplx k) const {
    const cplx kl = k + I * lambda_;
    if (cls_ == ThetaClass::NonDirichlet) return exceptional_ ? k : kl;
    return exceptional_ ? k / kl : cplx(1.0);
}

double OuterJost::remainder_at(double k) const { return lagrange(t_, r_, k).first; }

double OuterJost::pv_integral(double k) const {
    const auto [rk, drk] = lagrange(t_, r_, k);
    double s = 0.0;
    for (std::size_t i = 0; i < t_.size(); ++i) {
        const double d = t_[i] - k;
        s += w_[i] * (std::abs(d) < 1e-9 ? drk : (r_[i] - rk) / d);
    }
    const double K = t_.back();
    return s + rk * std::log((K - k) / (K + k));
}

double OuterJost::node_pv(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = (j + 1) % 2; i < t_.size(); i += 2)
        s += r_[i] / (t_[i] - t_[j]);
    return 2.0 * step_ * s;
}

cplx OuterJost::operator()(cplx k) const {
    if (k.imag() < 0.0) throw InvalidInput("outer function is evaluated only for Im k >= 0");
    if (k.imag() == 0.0) {
        const double x = k.real();
        if (std::abs(x) >= t_.back()) throw InvalidInput("k outside the sampled range");
        if (exceptional_ && x == 0.0) return 0.0;
        double rx, J;
        const double pos = step_ > 0.0 ? (x - t_[0]) / step_ : -1.0;
        if (step_ > 0.0 && std::abs(pos - std::round(pos)) < 1e-9) {
            const auto j = static_cast<std::size_t>(std::llround(pos));
            rx = r_[j];
            J = node_pv(j);
        } else {
            rx = remainder_at(x);
            J = pv_integral(x);
        }
        return prefactor(k) * std::exp(tail_(k) + cplx(rx, -J / kPi));
    }
    cplx s = 0.0;
    for (std::size_t i = 0; i < t_.size(); ++i) s += w_[i] * r_[i] / (t_[i] - k);
    return prefactor(k) * std::exp(tail_(k) + s / (kPi * I));
}

std::vector<cplx> OuterJost::on_grid() const {
    std::vector<cplx> out(k_.size());
    parallel_for(static_cast<int>(k_.size()), [&](int i) {
        const double k = k_[static_cast<std::size_t>(i)];
        if (exceptional_ && k == 0.0) {
            out[static_cast<std::size_t>(i)] = 0.0;
            return;
        }
        const double J = step_ > 0.0 ? node_pv(zero_ + static_cast<std::size_t>(i)) : pv_integral(k);
        out[static_cast<std::size_t>(i)] =
            prefactor(k) * std::exp(tail_(k) + cplx(r_[zero_ + static_cast<std::size_t>(i)], -J / kPi));
    });
    return out;
}

cplx outer_jost(const SampledFunction& absF, ThetaClass cls, cplx k) { return OuterJost(absF, cls)(k); }

SampledFunction base_scattering(const OuterJost& F0) {
    SampledFunction S;
    S.grid = F0.grid();
    const auto F = F0.on_grid();
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (std::abs(F[i]) == 0.0) {
            // exceptional k = 0: S(0) is the limit of conj(F)/F from the right
            S.values.emplace_back(0.0);
            continue;
        }
        S.values.push_back(std::conj(F[i]) / F[i]);
    }
    if (!S.values.empty() && std::abs(S.values[0]) == 0.0) {
        if (S.size() < 2) throw InvalidInput("too few samples");
        S.values[0] = S.values[1].real() >= 0.0 ? 1.0 : -1.0;
    }
    return S;
}

namespace {

// S(k) e^{2ik support} times `factor` on |k| <= fit_kmax, spaced by about fit_step.
template <class Factor>
RationalApprox fit_window(const SampledFunction& half, double support, const GLOptions& opt, Factor factor) {
    const double kmax = std::min(opt.fit_kmax, half.grid.back());
    std::vector<std::pair<double, cplx>> picked;
    double last = -1e300;
    for (std::size_t i = 0; i < half.size(); ++i) {
        const double k = half.grid[i];
        if (k > kmax) break;
        if (k - last < opt.fit_step * (1.0 - 1e-9)) continue;
        last = k;
        picked.emplace_back(k, half.values[i]);
    }
    std::vector<cplx> Z, V;
    for (std::size_t i = picked.size(); i-- > 0;) {
        const double k = picked[i].first;
        if (k == 0.0) continue;
        Z.emplace_back(-k);
        V.push_back(std::conj(picked[i].second) * std::polar(1.0, -2.0 * k * support) * factor(-k));
    }
    for (const auto& [k, s] : picked) {
        Z.emplace_back(k);
        V.push_back(s * std::polar(1.0, 2.0 * k * support) * factor(k));
    }
    return aaa(Z, V, opt.fit_tol, opt.fit_max_degree);
}

cplx blaschke_squared(double k, double gamma) {
    const cplx B = cplx(k, gamma) / cplx(k, -gamma);
    return B * B;
}

// (1/2 pi i) closed integrals of r and (k - c) r over a circle about c.
std::pair<cplx, cplx> circle_moments(const RationalApprox& r, cplx c, double radius) {
    constexpr int nodes = 128;
    cplx m0 = 0.0, m1 = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const cplx d = radius * std::polar(1.0, 2.0 * kPi * j / nodes);
        const cplx v = r(c + d) * d / static_cast<double>(nodes);
        m0 += v;
        m1 += v * d;
    }
    return {m0, m1};
}

}  // namespace

std::vector<BaseResonance> base_resonances(const SampledFunction& S0, ThetaClass cls, double beta_max,
                                           const GLOptions& opt, double* fit_error) {
    check_class(cls);
    const SampledFunction half = nonnegative_half(S0);
    const double kmax = std::min(opt.fit_kmax, half.grid.back());
    const RationalApprox r = fit_window(half, opt.support, opt, [](double) { return 1.0; });
    if (fit_error) *fit_error = r.max_error;
    if (r.max_error > 1e-8) throw NumericalError("rational fit of S(k;0) failed (error " + std::to_string(r.max_error) + ")");

    std::vector<BaseResonance> out;
    for (const cplx p : r.poles()) {
        if (!(p.imag() < -1e-3) || std::abs(p.real()) > 1e-2 * (1.0 + std::abs(p))) continue;
        if (std::abs(p) > std::min(beta_max, kmax)) continue;
        const cplx res = r.residue(p);
        if (std::abs(res) < 1e-6) continue;
        BaseResonance b;
        b.gamma = -p.imag();
        b.residue = res;
        out.push_back(b);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.gamma < y.gamma; });

    parallel_for(static_cast<int>(out.size()), [&](int idx) {
        BaseResonance& b = out[static_cast<std::size_t>(idx)];
        double gap = b.gamma;
        for (const auto& o : out)
            if (&o != &b) gap = std::min(gap, std::abs(o.gamma - b.gamma));
        const double radius = std::min(0.5, 0.5 * gap);
        for (int it = 0; it < 4; ++it) {
            const double g = b.gamma;
            const RationalApprox q = fit_window(half, opt.support, opt, [g](double k) { return blaschke_squared(k, g); });
            const auto [c, c2] = circle_moments(q, cplx(0.0, g), radius);
            const double step = (I * c2 / c).real();
            b.added_residue = c * std::exp(2.0 * g * opt.support);
            b.last_step = std::abs(step);
            if (!std::isfinite(step) || std::abs(step) > radius)
                throw NumericalError("resonance refinement diverged near gamma = " + std::to_string(g));
            b.gamma = g + step;
            if (std::abs(step) < 1e-10 * (1.0 + g)) break;
        }
        b.m_squared = std::abs(b.added_residue.imag());
        b.eligible = theta_class_from_residue(b.added_residue) == cls;
    });
    return out;
}

SampledFunction member_scattering(const SampledFunction& S0, const std::vector<BaseResonance>& added) {
    SampledFunction S = S0;
    for (std::size_t i = 0; i < S.size(); ++i)
        for (const auto& b : added) S.values[i] *= blaschke_squared(S.grid[i], b.gamma);
    return S;
}

std::vector<Pole> member_poles(const std::vector<BaseResonance>& added) {
    std::vector<Pole> out;
    for (const auto& b : added) {
        double factor = 1.0;
        for (const auto& c : added)
            if (&c != &b) factor *= std::pow((b.gamma + c.gamma) / (b.gamma - c.gamma), 2);
        Pole p;
        p.gamma = b.gamma;
        p.residue = b.added_residue * factor;
        p.m = std::sqrt(std::abs(p.residue.imag()));
        out.push_back(p);
    }
    return out;
}

double gl_kernel(const SampledFunction& absF, const BoundStateSet& bound_states, ThetaClass cls, double x, double y,
                 const GLOptions& opt) {
    check_class(cls);
    const CosineData C(absF, cls, opt);
    const double sign = cls == ThetaClass::Dirichlet ? -1.0 : 1.0;
    return C(x - y) + sign * C(x + y) + bound_term(cls, bound_states, x, y);
}

double GLKernelTable::at(int i, int m) const {
    const double sign = cls == ThetaClass::Dirichlet ? -1.0 : 1.0;
    return C[static_cast<std::size_t>(std::abs(i - m))] + sign * C[static_cast<std::size_t>(i + m)] +
           bound_term(cls, bound_states, i * h, m * h);
}

GLKernelTable gl_kernel_table(const SampledFunction& absF, const BoundStateSet& bound_states, ThetaClass cls,
                              double h, int n, const GLOptions& opt) {
    check_class(cls);
    absF.validate();
    if (!(h > 0.0) || n < 1) throw InvalidInput("kernel grid must be nonempty");
    GLKernelTable G;
    G.h = h;
    G.n = n;
    G.cls = cls;
    G.bound_states = bound_states;
    const CosineData C(absF, cls, opt);
    G.C.resize(static_cast<std::size_t>(2 * n + 1));
    parallel_for(2 * n + 1, [&](int j) { G.C[static_cast<std::size_t>(j)] = C(j * h); });
    G.tail_residual = C.tail_residual();
    return G;
}

GLSolution solve_gl(const GLKernelTable& G) {
    const int n = G.n;
    const double h = G.h;
    Eigen::MatrixXd full(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int m = 0; m <= i; ++m) full(i, m) = full(m, i) = G.at(i, m);

    GLSolution out;
    out.h = h;
    out.n = n;
    out.diagonal.assign(static_cast<std::size_t>(n + 1), 0.0);
    std::vector<double> res(static_cast<std::size_t>(n + 1), 0.0);
    parallel_for(n + 1, [&](int i) {
        const int s = i + 1;
        Eigen::VectorXd w = Eigen::VectorXd::Constant(s, h);
        if (s == 1) {
            w(0) = 0.0;
        } else {
            w(0) = w(s - 1) = 0.5 * h;
        }
        const Eigen::MatrixXd B = Eigen::MatrixXd::Identity(s, s) + full.topLeftCorner(s, s) * w.asDiagonal();
        const Eigen::VectorXd rhs = -full.row(i).head(s).transpose();
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
        if (!(lu.rcond() > 1e-14)) throw NumericalError("Gel'fand-Levitan system is singular; data outside the solvable class");
        const Eigen::VectorXd A = lu.solve(rhs);
        if (!A.allFinite()) throw NumericalError("Gel'fand-Levitan solve produced non-finite values");
        res[static_cast<std::size_t>(i)] =
            (B * A - rhs).lpNorm<Eigen::Infinity>() / std::max(1.0, rhs.lpNorm<Eigen::Infinity>());
        out.diagonal[static_cast<std::size_t>(i)] = A(i);
    });
    out.max_residual = *std::max_element(res.begin(), res.end());
    if (out.max_residual > 1e-8) throw NumericalError("Gel'fand-Levitan discrete residual above 1e-8");
    return out;
}

OperatorSpec extract_potential_and_theta(const std::vector<double>& diagonal, double b, ThetaClass cls) {
    check_class(cls);
    if (diagonal.size() < 2) throw InvalidInput("need the kernel diagonal at two or more points");
    const std::size_t n = diagonal.size() - 1;
    const double h = b / static_cast<double>(n);
    std::vector<double> cells(n);
    for (std::size_t i = 0; i < n; ++i) cells[i] = 2.0 * (diagonal[i + 1] - diagonal[i]) / h;
    const Boundary bc = cls == ThetaClass::Dirichlet ? Boundary::dirichlet() : Boundary::non_dirichlet(-diagonal[0]);
    return make_operator_spec(b, std::move(cells), bc);
}

OperatorSpec invert_modulus(const SampledFunction& absF, const BoundStateSet& bound_states, ThetaClass cls,
                            double bmax, int cells, const GLOptions& options) {
    check_class(cls);
    if (!(bmax > 0.0) || !std::isfinite(bmax)) throw InvalidInput("bmax must be positive");
    if (cells < 1) throw InvalidInput("cells must be positive");
    GLOptions opt = options;
    if (opt.support <= 0.0) opt.support = bmax;
    return extract_potential_and_theta(diagonal_on(absF, bound_states, cls, bmax, cells, opt), bmax, cls);
}

double modulus_mismatch(const OperatorSpec& spec, const SampledFunction& absF, std::size_t stride) {
    stride = std::max<std::size_t>(stride, 1);
    std::vector<double> k;
    std::vector<double> a;
    for (std::size_t i = 0; i < absF.size(); i += stride) {
        k.push_back(absF.grid[i]);
        a.push_back(std::abs(absF.values[i]));
    }
    const SampledFunction F = sample_abs_jost(spec, k);
    double worst = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i)
        worst = std::max(worst, std::abs(std::abs(F.values[i]) - a[i]) / std::max(1.0, a[i]));
    return worst;
}

SolutionFamily enumerate_solutions(const SampledFunction& absF, double beta_max, double bmax, int cells,
                                   const GLOptions& options) {
    if (!(beta_max > 0.0)) throw InvalidInput("beta_max must be positive");
    GLOptions opt = options;
    if (opt.support <= 0.0) opt.support = bmax;
    SolutionFamily fam;
    fam.theta_class = detect_theta_class(absF);

    if (cells < 1) throw InvalidInput("cells must be positive");
    fam.base = extract_potential_and_theta(
        diagonal_on(absF, {}, fam.theta_class, bmax, cells, opt, &fam.base_tail_residual), bmax, fam.theta_class);

    const OuterJost outer(absF, fam.theta_class, opt.support, opt.outer_terms, opt.outer_lambda);
    fam.outer_tail_residual = outer.tail_residual();
    for (double k : sample_points(0.5, std::min(10.0, 0.5 * absF.grid.back()), 20)) {
        const cplx direct = jost_function(fam.base, k);
        fam.outer_mismatch = std::max(fam.outer_mismatch, std::abs(outer(k) - direct) / std::max(1.0, std::abs(direct)));
    }
    if (!bound_states(fam.base, beta_max).empty())
        throw VerificationError("base solution has a bound state; the outer factorization failed");

    const SampledFunction S0 = base_scattering(outer);
    fam.resonances = base_resonances(S0, fam.theta_class, beta_max, opt, &fam.fit_error);
    std::vector<BaseResonance> eligible;
    for (const auto& r : fam.resonances)
        if (r.eligible) {
            eligible.push_back(r);
            fam.eligible_betas.push_back(-r.gamma);
        }
    fam.M = static_cast<int>(eligible.size());
    if (fam.M > 16) throw InvalidInput("more than 16 eligible resonances in the window");

    MarchenkoOptions mopt;
    mopt.support = opt.support;
    mopt.taper_fraction = opt.taper_fraction;
    const std::size_t stride = std::max<std::size_t>(1, absF.size() / 400);
    const unsigned count = 1u << fam.M;
    fam.members.resize(count);
    parallel_for(static_cast<int>(count), [&](int m) {
        FamilyMember& mem = fam.members[static_cast<std::size_t>(m)];
        mem.mask = static_cast<unsigned>(m);
        if (m == 0) {
            mem.spec = fam.base;
        } else {
            std::vector<BaseResonance> added;
            for (int s = 0; s < fam.M; ++s)
                if (mem.mask & (1u << s)) added.push_back(eligible[static_cast<std::size_t>(s)]);
            const Reconstruction r = invert_with_poles(member_scattering(S0, added), member_poles(added),
                                                       fam.theta_class, bmax, cells, mopt);
            mem.spec = r.spec;
        }
        mem.bound_states = bound_states(mem.spec, beta_max);
        mem.modulus_error = modulus_mismatch(mem.spec, absF, stride);
    });
    for (const auto& mem : fam.members) {
        fam.max_modulus_error = std::max(fam.max_modulus_error, mem.modulus_error);
        if (!(mem.modulus_error < 1e-3))
            throw VerificationError("family member " + std::to_string(mem.mask) + " reproduces |F| only to " +
                                    std::to_string(mem.modulus_error));
    }
    return fam;
}

}  // namespace halfline
