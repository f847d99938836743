#include "halfline/marchenko.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "halfline/errors.hpp"
#include "halfline/fourier.hpp"
#include "halfline/parallel.hpp"
#include "halfline/rational.hpp"

namespace halfline {

namespace {

constexpr double kFitFailure = 1e-8;
constexpr double kResidueFloor = 1e-6;
constexpr double kClassFloor = 1e-8;
constexpr double kMinNystromCells = 200;

const cplx I(0.0, 1.0);

// S on k >= 0, extended to -k by S(-k) = conj S(k) when only one side is given.
void symmetric_window(const SampledFunction& S, double kmax, double step, double shift, std::vector<cplx>& Z,
                      std::vector<cplx>& F) {
    const bool has_negative = S.grid.front() < 0.0;
    double last = -1e300;
    for (std::size_t i = 0; i < S.size(); ++i) {
        const double k = S.grid[i];
        if (std::abs(k) > kmax) continue;
        if (k - last < step * (1.0 - 1e-9) && i + 1 < S.size() && std::abs(S.grid[i + 1]) <= kmax) continue;
        last = k;
        const cplx v = S.values[i] * std::polar(1.0, 2.0 * k * shift);
        Z.emplace_back(k);
        F.push_back(v);
        if (!has_negative && k > 0.0) {
            Z.emplace_back(-k);
            F.push_back(std::conj(v));
        }
    }
}

std::vector<double> trapezoid(int count, double h) {
    std::vector<double> w(static_cast<std::size_t>(count), h);
    if (count == 1) {
        w[0] = 0.0;
    } else {
        w.front() = w.back() = 0.5 * h;
    }
    return w;
}

double sign_of(ThetaClass cls) { return cls == ThetaClass::Dirichlet ? -1.0 : 1.0; }

// K(x_i, y) on the Nystrom grid with linear extension below the diagonal.
double row_value(const std::vector<double>& row, int i, int m) {
    const int off = m - i;
    if (off < 0) return row[0] + off * (row.size() > 1 ? row[1] - row[0] : 0.0);
    if (off >= static_cast<int>(row.size())) return 0.0;
    return row[static_cast<std::size_t>(off)];
}

// Weights of int_0^{N h} p(y) e^{iky} dy for the piecewise-linear interpolant p of samples at m h.
std::vector<cplx> filon_weights(int N, double h, double k) {
    const double th = k * h;
    cplx interior, first, last;
    if (std::abs(th) < 1e-3) {
        const double t2 = th * th;
        interior = 1.0 - t2 / 12.0;
        first = cplx(0.5 - t2 / 24.0, th / 6.0);
        last = cplx(0.5 - t2 / 8.0, th / 3.0);
    } else {
        const double sinc = std::sin(0.5 * th) / (0.5 * th);
        interior = sinc * sinc;
        const cplx e = std::polar(1.0, th);
        first = (1.0 + I * th - e) / (th * th);
        last = (e - 1.0 - I * th * e) / (th * th);
    }
    std::vector<cplx> w(static_cast<std::size_t>(N + 1));
    for (int m = 0; m <= N; ++m) w[static_cast<std::size_t>(m)] = h * interior * std::polar(1.0, k * m * h);
    if (N == 0) {
        w[0] = 0.0;
        return w;
    }
    w[0] = h * first;
    w[static_cast<std::size_t>(N)] = h * last * std::polar(1.0, k * N * h) * std::polar(1.0, -th);
    return w;
}

int solver_cells(int cells) {
    const int factor = std::max(1, static_cast<int>(std::ceil(kMinNystromCells / cells)));
    return cells * factor;
}

std::vector<double> kernel_grid(double h, int n) {
    std::vector<double> t(static_cast<std::size_t>(4 * n + 1));
    for (std::size_t j = 0; j < t.size(); ++j) t[j] = static_cast<double>(j) * h;
    return t;
}

Potential coarse_potential(const MarchenkoSolution& K, double bmax, int cells) {
    const int factor = K.n / cells;
    std::vector<double> diag;
    for (int c = 0; c <= cells; ++c) diag.push_back(K.diagonal[static_cast<std::size_t>(c * factor)]);
    return extract_potential(diag, bmax);
}

std::vector<double> sample_points(double lo, double hi, int count) {
    std::vector<double> k(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) k[static_cast<std::size_t>(j)] = lo + (hi - lo) * j / (count - 1);
    return k;
}

// Value of S at the grid point nearest k >= 0.
std::pair<double, cplx> nearest_sample(const SampledFunction& S, double k) {
    auto it = std::lower_bound(S.grid.begin(), S.grid.end(), k);
    if (it == S.grid.end()) --it;
    std::size_t i = static_cast<std::size_t>(it - S.grid.begin());
    if (i > 0 && std::abs(S.grid[i - 1] - k) < std::abs(S.grid[i] - k)) --i;
    return {S.grid[i], S.values[i]};
}

void check_sampling(const SampledFunction& S, double bmax, int cells) {
    S.validate();
    if (!(bmax > 0.0) || !std::isfinite(bmax)) throw InvalidInput("bmax must be positive");
    if (cells < 1) throw InvalidInput("cells must be positive");
    if (S.grid.back() <= 0.0) throw InvalidInput("scattering data needs samples with k > 0");
}

MarchenkoOptions with_sites(MarchenkoOptions opt, double bmax) {
    if (opt.support <= 0.0) opt.support = bmax;
    return opt;
}

}  // namespace

const char* to_string(CaseTag t) {
    switch (t) {
        case CaseTag::I: return "I";
        case CaseTag::II: return "II";
        case CaseTag::III: return "III";
        default: return "undetermined";
    }
}

ThetaClass theta_class_from_residue(cplx residue) {
    const double s = (I * residue).real();
    if (std::abs(s) < kClassFloor * (1.0 + std::abs(residue))) return ThetaClass::Undetermined;
    return s > 0.0 ? ThetaClass::Dirichlet : ThetaClass::NonDirichlet;
}

CaseDetection detect_case(const SampledFunction& S, const MarchenkoOptions& opt) {
    S.validate();
    std::vector<cplx> Z, F;
    symmetric_window(S, opt.fit_kmax, opt.fit_step, opt.support, Z, F);
    if (Z.size() < 4) throw InvalidInput("too few samples for case detection");

    CaseDetection det;
    const RationalApprox r = aaa(Z, F, opt.fit_tol, opt.fit_max_degree);
    double fmax = 0.0;
    for (const auto& f : F) fmax = std::max(fmax, std::abs(f));
    det.fit_error = r.max_error / std::max(fmax, 1e-300);
    det.degree = r.z.size() - 1;

    const auto zero = std::find(S.grid.begin(), S.grid.end(), 0.0);
    det.s_at_zero = zero != S.grid.end() ? S.values[static_cast<std::size_t>(zero - S.grid.begin())] : r(0.0);
    if (det.fit_error > kFitFailure) return det;

    for (const cplx& p : r.poles()) {
        if (p.imag() <= 1e-3 || std::abs(p.real()) >= 1e-2 * (1.0 + std::abs(p)) || std::abs(p) > opt.fit_kmax)
            continue;
        const cplx res = r.residue(p) * std::exp(2.0 * p.imag() * opt.support);
        if (std::abs(res) <= kResidueFloor) continue;
        det.poles.push_back({p.imag(), res, std::sqrt(std::abs(res.imag()))});
    }
    std::sort(det.poles.begin(), det.poles.end(), [](const Pole& a, const Pole& b) { return a.gamma < b.gamma; });

    if (!det.poles.empty()) {
        det.tag = CaseTag::I;
        det.theta_class = theta_class_from_residue(det.poles.front().residue);
        for (const auto& p : det.poles)
            if (theta_class_from_residue(p.residue) != det.theta_class) det.theta_class = ThetaClass::Undetermined;
        if (det.theta_class == ThetaClass::Undetermined) det.tag = CaseTag::Undetermined;
    } else if (std::abs(det.s_at_zero + 1.0) < 1e-3) {
        det.tag = CaseTag::II;
    } else if (std::abs(det.s_at_zero - 1.0) < 1e-3) {
        det.tag = CaseTag::III;
    }
    return det;
}

std::vector<double> marchenko_kernel(const SampledFunction& S, const std::vector<Pole>& poles, ThetaClass cls,
                                     const std::vector<double>& y, const MarchenkoOptions& opt,
                                     double* tail_residual) {
    if (cls == ThetaClass::Undetermined) throw InvalidInput("kernel branch needs a boundary class");
    SampledFunction g = nonnegative_half(S);
    const double sigma = sign_of(cls);
    for (auto& v : g.values) v = sigma * (v - 1.0);
    const OscillatingTail tail = fit_oscillating_tail(g, opt.tail_terms, opt.tail_lambda,
                                                      opt.support > 0.0 ? opt.support : 0.5 * y.back());
    double worst = 0.0;
    const double kmax = g.grid.back();
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.values[i] -= tail(g.grid[i]);
        if (g.grid[i] >= (1.0 - opt.taper_fraction) * kmax) worst = std::max(worst, std::abs(g.values[i]));
    }
    if (tail_residual) *tail_residual = worst;
    std::vector<double> M = hermitian_fourier(g, y, opt.taper_fraction);
    for (std::size_t j = 0; j < y.size(); ++j) M[j] += tail.transform(y[j]);
    for (const auto& p : poles)
        for (std::size_t j = 0; j < y.size(); ++j) M[j] += p.m * p.m * std::exp(-p.gamma * y[j]);
    return M;
}

std::vector<double> solve_marchenko_row(const std::vector<double>& M, double h, int n, int i, double* residual) {
    if (i < 0 || i > n || M.size() < static_cast<std::size_t>(4 * n + 1))
        throw InvalidInput("kernel table too short for the requested row");
    const int s = 2 * (n - i) + 1;
    const auto w = trapezoid(s, h);
    Eigen::MatrixXd A(s, s);
    Eigen::VectorXd rhs(s);
    for (int l = 0; l < s; ++l) {
        rhs(l) = -M[static_cast<std::size_t>(2 * i + l)];
        for (int m = 0; m < s; ++m)
            A(l, m) = (l == m ? 1.0 : 0.0) + w[static_cast<std::size_t>(m)] * M[static_cast<std::size_t>(2 * i + l + m)];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) throw NumericalError("Marchenko system is singular; data outside the solvable class");
    const Eigen::VectorXd K = lu.solve(rhs);
    if (!K.allFinite()) throw NumericalError("Marchenko solve produced non-finite values");
    if (residual) *residual = (A * K - rhs).lpNorm<Eigen::Infinity>() / std::max(1.0, rhs.lpNorm<Eigen::Infinity>());
    return {K.data(), K.data() + s};
}

MarchenkoSolution solve_marchenko(const std::vector<double>& M, double h, int n) {
    MarchenkoSolution out;
    out.h = h;
    out.n = n;
    out.diagonal.assign(static_cast<std::size_t>(n + 1), 0.0);
    out.leading.resize(static_cast<std::size_t>(std::min(n + 1, 3)));
    std::vector<double> res(static_cast<std::size_t>(n + 1), 0.0);
    parallel_for(n + 1, [&](int i) {
        auto row = solve_marchenko_row(M, h, n, i, &res[static_cast<std::size_t>(i)]);
        out.diagonal[static_cast<std::size_t>(i)] = row[0];
        if (i < 3) out.leading[static_cast<std::size_t>(i)] = std::move(row);
    });
    out.max_residual = *std::max_element(res.begin(), res.end());
    if (out.max_residual > 1e-8) throw NumericalError("Marchenko discrete residual above 1e-8");
    return out;
}

Potential extract_potential(const std::vector<double>& diagonal, double b) {
    if (diagonal.size() < 2) throw InvalidInput("need the kernel diagonal at two or more points");
    const std::size_t n = diagonal.size() - 1;
    const double h = b / static_cast<double>(n);
    Potential V;
    V.b = b;
    V.cells.resize(n);
    for (std::size_t i = 0; i < n; ++i) V.cells[i] = -2.0 * (diagonal[i + 1] - diagonal[i]) / h;
    return V;
}

BoundaryTrace trace_from_kernel(const MarchenkoSolution& K, double k) {
    const int n = K.n;
    const double h = K.h;
    const auto& r0 = K.leading.at(0);
    const auto w = filon_weights(2 * n, h, k);
    cplx f = 1.0, fp = I * k - r0[0];
    const bool has_rows = K.leading.size() == 3;
    for (int m = 0; m <= 2 * n; ++m) {
        const cplx e = w[static_cast<std::size_t>(m)];
        f += r0[static_cast<std::size_t>(m)] * e;
        if (has_rows) {
            const double kx = (-3.0 * r0[static_cast<std::size_t>(m)] + 4.0 * row_value(K.leading[1], 1, m) -
                               row_value(K.leading[2], 2, m)) /
                              (2.0 * h);
            fp += kx * e;
        }
    }
    return {k, f, fp};
}

double dirichlet_deviation(const MarchenkoSolution& K, const SampledFunction& S, const MarchenkoOptions& opt) {
    const SampledFunction half = nonnegative_half(S);
    double dev = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < half.size(); ++i) {
        const double k = half.grid[i];
        if (k <= 0.0 || k > opt.dirichlet_kmax) continue;
        const cplx f = trace_from_kernel(K, k).f0;
        dev = std::max(dev, std::abs(half.values[i] * f - std::conj(f)));
        scale = std::max(scale, std::abs(f));
    }
    return scale > 0.0 ? dev / scale : dev;
}

ThetaRecovery recover_theta(const MarchenkoSolution& K, const SampledFunction& S, const MarchenkoOptions& opt,
                            ThetaClass known) {
    ThetaRecovery out;
    const SampledFunction half = nonnegative_half(S);
    const double dev = dirichlet_deviation(K, S, opt);
    out.dirichlet_deviation = dev;
    if (known == ThetaClass::Dirichlet || (known == ThetaClass::Undetermined && dev < opt.dirichlet_threshold)) {
        out.boundary = Boundary::dirichlet();
        return out;
    }

    std::vector<double> re;
    std::vector<cplx> all;
    for (double kt : sample_points(opt.theta_kmin, opt.theta_kmax, opt.theta_points)) {
        const auto [k, s] = nearest_sample(half, kt);
        const BoundaryTrace tr = trace_from_kernel(K, k);
        const cplx c = (-std::conj(tr.fp0) - s * tr.fp0) / (std::conj(tr.f0) + s * tr.f0);
        all.push_back(c);
        re.push_back(c.real());
    }
    std::vector<double> sorted = re;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double cot = sorted[sorted.size() / 2];
    double spread = 0.0;
    for (const auto& c : all) spread = std::max(spread, std::abs(c - cot));
    out.boundary = Boundary::non_dirichlet(cot);
    out.cot_spread = spread;
    if (spread > 1e-2 * (1.0 + std::abs(cot)))
        throw VerificationError("boundary parameter is inconsistent across k (spread " + std::to_string(spread) + ")");
    return out;
}

double scattering_mismatch(const OperatorSpec& spec, const SampledFunction& S, std::size_t stride) {
    double worst = 0.0;
    stride = std::max<std::size_t>(stride, 1);
    for (std::size_t i = 0; i < S.size(); i += stride) {
        if (S.grid[i] == 0.0) continue;  // S(0) flips sign under arbitrarily small perturbations of exceptional data
        worst = std::max(worst, std::abs(scattering_matrix(spec, S.grid[i]) - S.values[i]));
    }
    return worst;
}

namespace {

std::size_t verify_stride(const SampledFunction& S) { return std::max<std::size_t>(1, S.size() / 400); }

Reconstruction finish(const Potential& V, const Boundary& bc, const std::vector<Pole>& poles,
                      const MarchenkoSolution& K, const SampledFunction& S) {
    Reconstruction r;
    r.spec = make_operator_spec(V.b, V.cells, bc);
    r.kernel_residual = K.max_residual;
    for (const auto& p : poles) {
        const double absF = std::abs(jost_function(r.spec, cplx(0.0, -p.gamma)));
        r.bound_states.push_back({p.gamma, 2.0 * p.gamma * p.m / absF, p.m});
    }
    r.s_error = scattering_mismatch(r.spec, S, verify_stride(S));
    return r;
}

}  // namespace

Reconstruction invert_with_poles(const SampledFunction& S, const std::vector<Pole>& poles, ThetaClass cls, double bmax,
                                 int cells, const MarchenkoOptions& options, double* tail_residual) {
    check_sampling(S, bmax, cells);
    if (cls == ThetaClass::Undetermined) throw InvalidInput("boundary class must be known");
    const MarchenkoOptions opt = with_sites(options, bmax);
    const int n = solver_cells(cells);
    const double h = bmax / n;
    const auto M = marchenko_kernel(S, poles, cls, kernel_grid(h, n), opt, tail_residual);
    const MarchenkoSolution K = solve_marchenko(M, h, n);
    const ThetaRecovery th = recover_theta(K, S, opt, cls);
    return finish(coarse_potential(K, bmax, cells), th.boundary, poles, K, S);
}

InversionResult invert_case_iii(const SampledFunction& S, double bmax, int cells, const MarchenkoOptions& options) {
    check_sampling(S, bmax, cells);
    const MarchenkoOptions opt = with_sites(options, bmax);
    InversionResult out;
    out.tag = CaseTag::III;
    const int n = solver_cells(cells);
    const double h = bmax / n;
    const auto t = kernel_grid(h, n);
    double tail = 0.0;
    std::vector<double> M1 = marchenko_kernel(S, {}, ThetaClass::Dirichlet, t, opt, &tail);
    std::vector<double> M2(M1.size());
    std::transform(M1.begin(), M1.end(), M2.begin(), [](double v) { return -v; });
    const MarchenkoSolution K1 = solve_marchenko(M1, h, n);
    const MarchenkoSolution K2 = solve_marchenko(M2, h, n);
    out.tail_residual = tail;

    out.solutions.push_back(finish(coarse_potential(K1, bmax, cells), Boundary::dirichlet(), {}, K1, S));
    out.solutions.push_back(finish(coarse_potential(K2, bmax, cells), Boundary::non_dirichlet(0.0), {}, K2, S));

    double num = 0.0, den = 0.0;
    for (double k : sample_points(opt.theta_kmin, opt.theta_kmax, opt.theta_points)) {
        const cplx F2 = -I * trace_from_kernel(K2, k).fp0;
        const cplx kf1 = k * trace_from_kernel(K1, k).f0;
        num = std::max(num, std::abs(F2 - kf1));
        den = std::max(den, std::abs(kf1));
    }
    out.jost_relation_error = num / den;
    out.integral_difference =
        integral_of_potential(out.solutions[0].spec) - integral_of_potential(out.solutions[1].spec);
    return out;
}

InversionResult invert_scattering(const SampledFunction& S, double bmax, int cells, const MarchenkoOptions& options) {
    check_sampling(S, bmax, cells);
    const MarchenkoOptions opt = with_sites(options, bmax);
    const CaseDetection det = detect_case(S, opt);
    if (det.tag == CaseTag::Undetermined)
        throw NumericalError("case detection failed (rational fit error " + std::to_string(det.fit_error) + ")");
    if (det.tag == CaseTag::III) {
        InversionResult out = invert_case_iii(S, bmax, cells, opt);
        out.detection = det;
        return out;
    }

    InversionResult out;
    out.tag = det.tag;
    out.detection = det;
    const int n = solver_cells(cells);
    const double h = bmax / n;
    const auto t = kernel_grid(h, n);

    auto attempt = [&](ThetaClass cls, ThetaClass known) {
        double tail = 0.0;
        const auto M = marchenko_kernel(S, det.poles, cls, t, opt, &tail);
        const MarchenkoSolution K = solve_marchenko(M, h, n);
        const ThetaRecovery th = recover_theta(K, S, opt, known);
        out.tail_residual = tail;
        out.dirichlet_deviation = th.dirichlet_deviation;
        out.cot_spread = th.boundary.is_dirichlet() ? 0.0 : th.cot_spread;
        return std::make_pair(K, th);
    };

    if (det.tag == CaseTag::I) {
        auto [K, th] = attempt(det.theta_class, det.theta_class);
        out.solutions.push_back(finish(coarse_potential(K, bmax, cells), th.boundary, det.poles, K, S));
        return out;
    }
    // case II: the Dirichlet branch first, accepted only if the kernel reproduces S as f(-k,0)/f(k,0)
    double tail = 0.0;
    const auto Md = marchenko_kernel(S, {}, ThetaClass::Dirichlet, t, opt, &tail);
    const MarchenkoSolution Kd = solve_marchenko(Md, h, n);
    const double dev = dirichlet_deviation(Kd, S, opt);
    out.tail_residual = tail;
    out.dirichlet_deviation = dev;
    if (dev < opt.dirichlet_threshold) {
        out.cot_spread = 0.0;
        out.solutions.push_back(finish(coarse_potential(Kd, bmax, cells), Boundary::dirichlet(), {}, Kd, S));
        return out;
    }
    auto [Kn, thn] = attempt(ThetaClass::NonDirichlet, ThetaClass::NonDirichlet);
    out.dirichlet_deviation = dev;
    out.solutions.push_back(finish(coarse_potential(Kn, bmax, cells), thn.boundary, {}, Kn, S));
    return out;
}

Potential full_line_marchenko(const SampledFunction& R, double bmax, int cells, const MarchenkoOptions& options) {
    check_sampling(R, bmax, cells);
    const MarchenkoOptions opt = with_sites(options, bmax);
    const int n = solver_cells(cells);
    const double h = bmax / n;
    const auto t = kernel_grid(h, n);
    SampledFunction g = nonnegative_half(R);
    const OscillatingTail tail = fit_oscillating_tail(g, opt.tail_terms, opt.tail_lambda, opt.support);
    for (std::size_t i = 0; i < g.size(); ++i) g.values[i] -= tail(g.grid[i]);
    auto Rhat = hermitian_fourier(g, t, opt.taper_fraction);
    for (std::size_t j = 0; j < t.size(); ++j) Rhat[j] += tail.transform(t[j]);
    const MarchenkoSolution K = solve_marchenko(Rhat, h, n);
    return coarse_potential(K, bmax, cells);
}

}  // namespace halfline
