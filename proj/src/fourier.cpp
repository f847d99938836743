#include "halfline/fourier.hpp"

#include <cmath>
#include <numbers>
#include <algorithm>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "halfline/errors.hpp"

namespace halfline {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> trapezoid_weights(const std::vector<double>& k) {
    const std::size_t n = k.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = 0.5 * (k[i + 1] - k[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    return w;
}

bool is_uniform(const std::vector<double>& k) {
    if (k.size() < 3) return false;
    const double dk = (k.back() - k.front()) / static_cast<double>(k.size() - 1);
    for (std::size_t i = 1; i < k.size(); ++i)
        if (std::abs(k[i] - k[i - 1] - dk) > 1e-9 * dk) return false;
    return true;
}

// sum_i c_i e^{i k_i y}, with a rotation recurrence on uniform grids.
cplx exp_sum(const std::vector<double>& k, const std::vector<cplx>& c, double y, bool uniform) {
    cplx acc = 0.0;
    if (uniform) {
        const double dk = (k.back() - k.front()) / static_cast<double>(k.size() - 1);
        const cplx rot = std::polar(1.0, dk * y);
        cplx e = std::polar(1.0, k.front() * y);
        for (std::size_t i = 0; i < k.size(); ++i) {
            acc += c[i] * e;
            e *= rot;
            if ((i & 255) == 255) e = std::polar(1.0, k[i + 1 < k.size() ? i + 1 : i] * y);
        }
        return acc;
    }
    for (std::size_t i = 0; i < k.size(); ++i) acc += c[i] * std::polar(1.0, k[i] * y);
    return acc;
}

}  // namespace

SampledFunction nonnegative_half(const SampledFunction& g) {
    SampledFunction out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.grid[i] < 0.0) continue;
        out.grid.push_back(g.grid[i]);
        out.values.push_back(g.values[i]);
    }
    if (out.size() < 2) throw InvalidInput("need samples on k >= 0");
    return out;
}

cplx UpperTail::operator()(double k) const {
    const cplx u = cplx(0.0, 1.0) / cplx(k, lambda);
    cplx p = 1.0, s = 0.0;
    for (double rj : r) {
        p *= u;
        s += rj * p;
    }
    return s;
}

UpperTail fit_upper_tail(const SampledFunction& g, int terms, double lambda, double from_fraction) {
    UpperTail t;
    t.lambda = lambda;
    if (terms <= 0) return t;
    const double kmax = g.grid.back();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.grid[i] >= from_fraction * kmax && g.grid[i] > 0.0) idx.push_back(i);
    if (idx.size() < static_cast<std::size_t>(terms)) throw InvalidInput("too few samples to fit the large-k tail");
    Eigen::MatrixXd A(2 * idx.size(), terms);
    Eigen::VectorXd rhs(2 * idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const double k = g.grid[idx[r]];
        const cplx u = cplx(0.0, 1.0) / cplx(k, lambda);
        cplx p = 1.0;
        for (int j = 0; j < terms; ++j) {
            p *= u;
            A(2 * r, j) = p.real();
            A(2 * r + 1, j) = p.imag();
        }
        rhs(2 * r) = g.values[idx[r]].real();
        rhs(2 * r + 1) = g.values[idx[r]].imag();
    }
    const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(rhs);
    t.r.assign(sol.data(), sol.data() + terms);
    return t;
}

std::vector<double> oscillation_sites(const std::vector<double>& k, const std::vector<cplx>& v, double xmax) {
    const int N = static_cast<int>(k.size());
    if (N < 8) return {};
    const double dk = (k.back() - k.front()) / (N - 1);
    const int L = N / 2, rows = N - L;
    Eigen::MatrixXcd Y(rows, L + 1);
    for (int n = 0; n < rows; ++n)
        for (int m = 0; m <= L; ++m) Y(n, m) = v[static_cast<std::size_t>(n + m)];
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(Y, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (!(sv(0) > 0.0)) return {};
    int r = 0;
    while (r < sv.size() && sv(r) > 1e-2 * sv(0)) ++r;
    r = std::min(r, rows - 2);
    if (r < 1) return {};
    const Eigen::MatrixXcd U = svd.matrixU().leftCols(r);
    const Eigen::MatrixXcd U1 = U.topRows(rows - 1), U2 = U.bottomRows(rows - 1);
    const Eigen::MatrixXcd Phi = U1.completeOrthogonalDecomposition().solve(U2);
    const Eigen::VectorXcd z = Phi.eigenvalues();
    std::vector<double> sites;
    for (int i = 0; i < z.size(); ++i) {
        if (std::abs(std::abs(z(i)) - 1.0) > 0.1) continue;
        const double x = std::abs(std::arg(z(i))) / (2.0 * dk);
        if (x < 0.02 * xmax || x > 1.05 * xmax) continue;
        sites.push_back(x);
    }
    std::sort(sites.begin(), sites.end());
    std::vector<double> merged;
    const double resolution = kPi / (2.0 * (k.back() - k.front()));
    for (double x : sites)
        if (merged.empty() || x - merged.back() > resolution) merged.push_back(x);
    return merged;
}

namespace {

struct JointFit {
    std::vector<double> coef;
    double residual = 0.0;
};

JointFit joint_fit(const SampledFunction& g, const std::vector<std::size_t>& idx, int terms, double lambda,
                   const std::vector<double>& sites) {
    const int cols = terms * (1 + 2 * static_cast<int>(sites.size()));
    Eigen::MatrixXd A(2 * idx.size(), cols);
    Eigen::VectorXd rhs(2 * idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const double k = g.grid[idx[r]];
        const cplx u = cplx(0.0, 1.0) / cplx(k, lambda);
        std::vector<cplx> pw(static_cast<std::size_t>(terms));
        cplx p = 1.0;
        for (int j = 0; j < terms; ++j) pw[static_cast<std::size_t>(j)] = (p *= u);
        int c = 0;
        auto put = [&](cplx val) {
            A(2 * r, c) = val.real();
            A(2 * r + 1, c) = val.imag();
            ++c;
        };
        for (int j = 0; j < terms; ++j) put(pw[static_cast<std::size_t>(j)]);
        for (double x : sites) {
            const cplx em = std::polar(1.0, -2.0 * k * x), ep = std::conj(em);
            for (int j = 0; j < terms; ++j) put(em * pw[static_cast<std::size_t>(j)]);
            for (int j = 0; j < terms; ++j) put(ep * pw[static_cast<std::size_t>(j)]);
        }
        rhs(2 * r) = g.values[idx[r]].real();
        rhs(2 * r + 1) = g.values[idx[r]].imag();
    }
    JointFit f;
    const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(rhs);
    f.coef.assign(sol.data(), sol.data() + cols);
    f.residual = (A * sol - rhs).norm();
    return f;
}

}  // namespace

cplx OscillatingTail::operator()(double k) const {
    cplx s = smooth(k);
    const cplx u = cplx(0.0, 1.0) / cplx(k, smooth.lambda);
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const cplx em = std::polar(1.0, -2.0 * k * sites[i]), ep = std::conj(em);
        cplx p = 1.0;
        for (std::size_t j = 0; j < minus[i].size(); ++j) {
            p *= u;
            s += (minus[i][j] * em + plus[i][j] * ep) * p;
        }
    }
    return s;
}

double OscillatingTail::transform(double y) const {
    const double l = smooth.lambda;
    double s = 0.0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const double tau = y - 2.0 * sites[i];
        if (tau > 0.0) continue;
        const double e = std::exp(l * tau);
        double fact = 1.0, pw = 1.0;
        for (std::size_t j = 0; j < minus[i].size(); ++j) {
            if (j > 0) {
                fact *= static_cast<double>(j);
                pw *= -tau;
            }
            const double basis = pw * e / fact;
            s += minus[i][j] * (tau == 0.0 && j == 0 ? 0.5 * basis : basis);
        }
    }
    return s;
}

namespace {

// C_j(t) = e^{-lambda t} sum_m alpha_{j,m} lambda^{m-2j+1} t^m for t >= 0.
const std::vector<double>& matern_alpha(int j) {
    static const std::vector<std::vector<double>> table = [] {
        std::vector<std::vector<double>> t{{}, {0.5}};
        for (int n = 1; n < 24; ++n) {
            const auto& prev = t[static_cast<std::size_t>(n)];
            std::vector<double> next(prev.size() + 1, 0.0);
            for (std::size_t m = 0; m < next.size(); ++m) {
                const double am = m < prev.size() ? prev[m] : 0.0;
                const double am1 = m > 0 ? prev[m - 1] : 0.0;
                next[m] = (-(static_cast<double>(m) - 2.0 * n + 1.0) * am + am1) / (2.0 * n);
            }
            t.push_back(next);
        }
        return t;
    }();
    if (j < 1 || j >= static_cast<int>(table.size())) throw InvalidInput("unsupported tail order");
    return table[static_cast<std::size_t>(j)];
}

}  // namespace

double matern_cosine(int j, double lambda, double t) {
    const auto& al = matern_alpha(j);
    const double x = std::abs(t);
    double s = 0.0, p = std::pow(lambda, 1.0 - 2.0 * j);
    for (std::size_t m = 0; m < al.size(); ++m, p *= lambda * x) s += al[m] * p;
    return s * std::exp(-lambda * x);
}

double matern_cosine_slope(int j, double lambda, double t) {
    const auto& al = matern_alpha(j);
    const double x = std::abs(t);
    // d/dx of e^{-lambda x} sum c_m x^m, c_m = alpha_m lambda^{m-2j+1}
    double s = 0.0;
    for (std::size_t m = 0; m < al.size(); ++m) {
        const double cm = al[m] * std::pow(lambda, static_cast<double>(m) - 2.0 * j + 1.0);
        s -= lambda * cm * std::pow(x, static_cast<double>(m));
        if (m > 0) s += cm * static_cast<double>(m) * std::pow(x, static_cast<double>(m) - 1.0);
    }
    const double v = s * std::exp(-lambda * x);
    return t < 0.0 ? -v : (t == 0.0 ? 0.0 : v);
}

double CosineTail::operator()(double k) const {
    const double d0 = 1.0 / (k * k + lambda * lambda);
    double p = 1.0, s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        p *= d0;
        double coef = a[j];
        for (std::size_t q = 0; q < sites.size(); ++q)
            coef += c[q][j] * std::cos(2.0 * k * sites[q]) + d[q][j] * k * std::sin(2.0 * k * sites[q]);
        s += coef * p;
    }
    return s;
}

double CosineTail::cosine_transform(double t) const {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const int order = static_cast<int>(j) + 1;
        s += a[j] * matern_cosine(order, lambda, t);
        for (std::size_t q = 0; q < sites.size(); ++q) {
            const double x2 = 2.0 * sites[q];
            s += 0.5 * c[q][j] * (matern_cosine(order, lambda, t - x2) + matern_cosine(order, lambda, t + x2));
            // k sin(k tau) transforms to -C_j'(tau)
            s -= 0.5 * d[q][j] * (matern_cosine_slope(order, lambda, x2 + t) + matern_cosine_slope(order, lambda, x2 - t));
        }
    }
    return s;
}

namespace {

JointFit cosine_fit(const SampledFunction& w, const std::vector<std::size_t>& idx, int terms, double lambda,
                    const std::vector<double>& sites) {
    const int cols = terms * (1 + 2 * static_cast<int>(sites.size()));
    Eigen::MatrixXd A(idx.size(), cols);
    Eigen::VectorXd rhs(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const double k = w.grid[idx[r]];
        const double d0 = 1.0 / (k * k + lambda * lambda), sc = k * k + lambda * lambda;
        int col = 0;
        double p = sc;
        for (int j = 0; j < terms; ++j) A(r, col++) = (p *= d0);
        for (double x : sites) {
            const double cs = std::cos(2.0 * k * x), sn = k * std::sin(2.0 * k * x);
            p = sc;
            for (int j = 0; j < terms; ++j) A(r, col++) = cs * (p *= d0);
            p = sc;
            for (int j = 0; j < terms; ++j) A(r, col++) = sn * (p *= d0);
        }
        rhs(r) = w.values[idx[r]].real() * sc;
    }
    JointFit f;
    const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(rhs);
    f.coef.assign(sol.data(), sol.data() + cols);
    f.residual = (A * sol - rhs).norm();
    return f;
}

template <class FitFn>
std::vector<double> select_sites(std::vector<double> sites, double half_width, FitFn fit_of) {
    auto refine = [&](std::vector<double>& s) {
        for (int sweep = 0; sweep < 2; ++sweep)
            for (std::size_t q = 0; q < s.size(); ++q) {
                auto cost = [&](double x) {
                    auto trial = s;
                    trial[q] = x;
                    return fit_of(trial);
                };
                const double lo = std::max(1e-3, s[q] - half_width), hi = s[q] + half_width;
                s[q] = boost::math::tools::brent_find_minima(cost, lo, hi, 40).first;
            }
    };
    // backward elimination: drop sites whose removal costs less than a factor 2 in residual
    refine(sites);
    while (!sites.empty()) {
        const double with = fit_of(sites);
        double best_ratio = 1e300;
        std::size_t weakest = 0;
        for (std::size_t q = 0; q < sites.size(); ++q) {
            auto trial = sites;
            trial.erase(trial.begin() + static_cast<long>(q));
            const double ratio = fit_of(trial) / std::max(with, 1e-300);
            if (ratio < best_ratio) {
                best_ratio = ratio;
                weakest = q;
            }
        }
        if (best_ratio >= 2.0) break;
        sites.erase(sites.begin() + static_cast<long>(weakest));
        refine(sites);
    }
    std::sort(sites.begin(), sites.end());
    return sites;
}

std::vector<std::size_t> fit_rows(const SampledFunction& g, double k0) {
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.grid[i] >= k0 && g.grid[i] > 0.0) all.push_back(i);
    const std::size_t stride = std::max<std::size_t>(1, all.size() / 1500);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < all.size(); i += stride) idx.push_back(all[i]);
    return idx;
}

// Remainder r(k) k^2 resampled at spacing resolving frequencies up to 2 xmax.
template <class Remainder>
void resample(const SampledFunction& g, double k0, double xmax, Remainder rem, std::vector<double>& ku,
              std::vector<cplx>& vu) {
    const double dk = 0.8 * kPi / (2.0 * 1.05 * xmax);
    for (double k = k0; k <= g.grid.back(); k += dk) {
        const auto it = std::lower_bound(g.grid.begin(), g.grid.end(), k);
        if (it == g.grid.end()) break;
        const std::size_t i = static_cast<std::size_t>(it - g.grid.begin());
        ku.push_back(g.grid[i]);
        vu.push_back(rem(i) * g.grid[i] * g.grid[i]);
    }
}

}  // namespace

CosineTail fit_cosine_tail(const SampledFunction& w, int terms, double lambda, double xmax, double from_fraction) {
    CosineTail t;
    t.lambda = lambda;
    if (terms <= 0) return t;
    const double kmax = w.grid.back(), k0 = from_fraction * kmax;
    const auto idx = fit_rows(w, k0);
    if (idx.size() < static_cast<std::size_t>(terms)) throw InvalidInput("too few samples to fit the large-k tail");
    auto fit_of = [&](const std::vector<double>& sites) { return cosine_fit(w, idx, terms, lambda, sites).residual; };

    std::vector<double> sites;
    if (xmax > 0.0) {
        const JointFit smooth = cosine_fit(w, idx, terms, lambda, {});
        t.a.assign(smooth.coef.begin(), smooth.coef.end());
        std::vector<double> ku;
        std::vector<cplx> vu;
        resample(w, k0, xmax, [&](std::size_t i) { return cplx(w.values[i].real() - t(w.grid[i])); }, ku, vu);
        sites = select_sites(oscillation_sites(ku, vu, xmax), kPi / (2.0 * (kmax - k0)), fit_of);
    }
    const JointFit f = cosine_fit(w, idx, terms, lambda, sites);
    t.a.assign(f.coef.begin(), f.coef.begin() + terms);
    t.sites = sites;
    std::size_t col = static_cast<std::size_t>(terms);
    for (std::size_t q = 0; q < sites.size(); ++q) {
        t.c.emplace_back(f.coef.begin() + static_cast<long>(col), f.coef.begin() + static_cast<long>(col + terms));
        col += static_cast<std::size_t>(terms);
        t.d.emplace_back(f.coef.begin() + static_cast<long>(col), f.coef.begin() + static_cast<long>(col + terms));
        col += static_cast<std::size_t>(terms);
    }
    return t;
}

OscillatingTail fit_oscillating_tail(const SampledFunction& g, int terms, double lambda, double xmax,
                                     double from_fraction) {
    OscillatingTail t;
    t.smooth = fit_upper_tail(g, terms, lambda, from_fraction);
    if (terms <= 0 || !(xmax > 0.0)) return t;
    const double kmax = g.grid.back(), k0 = from_fraction * kmax;
    const auto idx = fit_rows(g, k0);
    auto fit_of = [&](const std::vector<double>& sites) { return joint_fit(g, idx, terms, lambda, sites).residual; };
    std::vector<double> ku;
    std::vector<cplx> vu;
    resample(g, k0, xmax, [&](std::size_t i) { return g.values[i] - t.smooth(g.grid[i]); }, ku, vu);
    const auto sites = select_sites(oscillation_sites(ku, vu, xmax), kPi / (2.0 * (kmax - k0)), fit_of);
    if (sites.empty()) return t;

    const JointFit f = joint_fit(g, idx, terms, lambda, sites);
    t.smooth.r.assign(f.coef.begin(), f.coef.begin() + terms);
    t.sites = sites;
    std::size_t c = static_cast<std::size_t>(terms);
    for (std::size_t q = 0; q < sites.size(); ++q) {
        t.minus.emplace_back(f.coef.begin() + static_cast<long>(c), f.coef.begin() + static_cast<long>(c + terms));
        c += static_cast<std::size_t>(terms);
        t.plus.emplace_back(f.coef.begin() + static_cast<long>(c), f.coef.begin() + static_cast<long>(c + terms));
        c += static_cast<std::size_t>(terms);
    }
    return t;
}

cplx AnalyticTail::operator()(cplx k) const {
    const cplx u = cplx(0.0, 1.0) / (k + cplx(0.0, lambda));
    cplx s = 0.0, p = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        p *= u;
        cplx coef = a[j];
        for (std::size_t q = 0; q < sites.size(); ++q) coef += b[q][j] * std::exp(cplx(0.0, 2.0) * k * sites[q]);
        s += coef * p;
    }
    return s;
}

namespace {

JointFit analytic_fit(const SampledFunction& w, const std::vector<std::size_t>& idx, int terms, double lambda,
                      const std::vector<double>& sites) {
    const int cols = terms * (1 + static_cast<int>(sites.size()));
    Eigen::MatrixXd A(idx.size(), cols);
    Eigen::VectorXd rhs(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const double k = w.grid[idx[r]];
        // rows scaled by |k + i lambda| so every column stays O(1)
        const double sc = std::hypot(k, lambda);
        const cplx u = cplx(0.0, 1.0) / cplx(k, lambda);
        int col = 0;
        cplx p = sc;
        for (int j = 0; j < terms; ++j) A(r, col++) = (p *= u).real();
        for (double x : sites) {
            const cplx e = std::polar(1.0, 2.0 * k * x);
            p = sc;
            for (int j = 0; j < terms; ++j) A(r, col++) = (e * (p *= u)).real();
        }
        rhs(r) = w.values[idx[r]].real() * sc;
    }
    JointFit f;
    const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(rhs);
    f.coef.assign(sol.data(), sol.data() + cols);
    f.residual = (A * sol - rhs).norm();
    return f;
}

}  // namespace

AnalyticTail fit_analytic_tail(const SampledFunction& w, int terms, double lambda, double xmax, double from_fraction) {
    AnalyticTail t;
    t.lambda = lambda;
    if (terms <= 0) return t;
    const double kmax = w.grid.back(), k0 = from_fraction * kmax;
    const auto idx = fit_rows(w, k0);
    if (idx.size() < static_cast<std::size_t>(terms)) throw InvalidInput("too few samples to fit the large-k tail");
    auto fit_of = [&](const std::vector<double>& sites) { return analytic_fit(w, idx, terms, lambda, sites).residual; };

    std::vector<double> sites;
    if (xmax > 0.0) {
        const JointFit smooth = analytic_fit(w, idx, terms, lambda, {});
        t.a.assign(smooth.coef.begin(), smooth.coef.end());
        std::vector<double> ku;
        std::vector<cplx> vu;
        resample(w, k0, xmax, [&](std::size_t i) { return cplx(w.values[i].real() - t(w.grid[i]).real()); }, ku, vu);
        const double half_width = kPi / (2.0 * (kmax - k0));
        sites = select_sites(oscillation_sites(ku, vu, xmax), half_width, fit_of);
        // weaker harmonics hide under the leading ones; search the remainder again with more weight
        AnalyticTail first = t;
        const JointFit f1 = analytic_fit(w, idx, terms, lambda, sites);
        first.a.assign(f1.coef.begin(), f1.coef.begin() + terms);
        first.sites = sites;
        for (std::size_t q = 0; q < sites.size(); ++q) {
            const auto from = f1.coef.begin() + static_cast<long>((q + 1) * static_cast<std::size_t>(terms));
            first.b.emplace_back(from, from + terms);
        }
        ku.clear();
        vu.clear();
        resample(w, k0, xmax, [&](std::size_t i) {
            const double k = w.grid[i];
            return cplx((w.values[i].real() - first(k).real()) * k * k);
        }, ku, vu);
        std::vector<double> merged = sites;
        for (double x : oscillation_sites(ku, vu, xmax))
            if (std::none_of(sites.begin(), sites.end(), [&](double s) { return std::abs(s - x) < half_width; }))
                merged.push_back(x);
        if (merged.size() > sites.size()) sites = select_sites(merged, half_width, fit_of);
    }
    const JointFit f = analytic_fit(w, idx, terms, lambda, sites);
    t.a.assign(f.coef.begin(), f.coef.begin() + terms);
    t.sites = sites;
    t.b.clear();
    for (std::size_t q = 0; q < sites.size(); ++q) {
        const auto from = f.coef.begin() + static_cast<long>((q + 1) * static_cast<std::size_t>(terms));
        t.b.emplace_back(from, from + terms);
    }
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w.grid[i] >= k0) t.residual = std::max(t.residual, std::abs(w.values[i].real() - t(w.grid[i]).real()));
    return t;
}

double taper(double k, double kmax, double fraction) {
    const double start = (1.0 - fraction) * kmax;
    if (k <= start || fraction <= 0.0) return 1.0;
    if (k >= kmax) return 0.0;
    return 0.5 * (1.0 + std::cos(kPi * (k - start) / (fraction * kmax)));
}

std::vector<double> hermitian_fourier(const SampledFunction& g, const std::vector<double>& y, double taper_fraction) {
    const auto& k = g.grid;
    const auto w = trapezoid_weights(k);
    std::vector<cplx> c(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) c[i] = g.values[i] * w[i] * taper(k[i], k.back(), taper_fraction);
    const bool uni = is_uniform(k);
    std::vector<double> out(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) out[j] = exp_sum(k, c, y[j], uni).real() / kPi;
    return out;
}

std::vector<double> cosine_fourier(const SampledFunction& wf, const std::vector<double>& t, double taper_fraction) {
    const auto& k = wf.grid;
    const auto w = trapezoid_weights(k);
    std::vector<cplx> c(k.size());
    for (std::size_t i = 0; i < k.size(); ++i)
        c[i] = wf.values[i].real() * w[i] * taper(k[i], k.back(), taper_fraction);
    const bool uni = is_uniform(k);
    std::vector<double> out(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) out[j] = exp_sum(k, c, t[j], uni).real() / kPi;
    return out;
}

}  // namespace halfline
