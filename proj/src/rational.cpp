#include "halfline/rational.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "halfline/errors.hpp"

namespace halfline {

cplx RationalApprox::operator()(cplx x) const {
    cplx num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (x == z[j]) return f[j];
        const cplx c = w[j] / (x - z[j]);
        num += c * f[j];
        den += c;
    }
    return num / den;
}

cplx RationalApprox::denominator(cplx x) const {
    cplx d = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) d += w[j] / (x - z[j]);
    return d;
}

cplx RationalApprox::denominator_slope(cplx x) const {
    cplx d = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) d -= w[j] / ((x - z[j]) * (x - z[j]));
    return d;
}

std::vector<cplx> RationalApprox::poles() const {
    const std::size_t m = z.size();
    if (m < 2) return {};
    cplx s = 0.0;
    double zmax = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        s += w[j];
        zmax = std::max(zmax, std::abs(z[j]));
    }
    // Zeros of sum w_j/(x - z_j) are the eigenvalues of (I - 1 w^T / s)(Z - cI) + cI
    // other than c itself.
    const cplx c = cplx(0.61, 0.83) * (10.0 * zmax + 10.0);
    if (std::abs(s) < 1e-14) return {};
    Eigen::MatrixXcd A(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            A(i, j) = ((i == j ? 1.0 : 0.0) - w[j] / s) * (z[j] - c) + (i == j ? c : 0.0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + m);
    auto far = std::min_element(ev.begin(), ev.end(),
                                [&](cplx a, cplx b) { return std::abs(a - c) < std::abs(b - c); });
    ev.erase(far);
    for (auto& p : ev) {
        for (int it = 0; it < 8; ++it) {
            const cplx d = denominator(p), dd = denominator_slope(p);
            if (dd == 0.0) break;
            const cplx step = d / dd;
            p -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(p))) break;
        }
    }
    return ev;
}

cplx RationalApprox::residue(cplx p) const {
    cplx num = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) num += w[j] * f[j] / (p - z[j]);
    return num / denominator_slope(p);
}

RationalApprox aaa(const std::vector<cplx>& Z, const std::vector<cplx>& F, double tol, std::size_t max_degree) {
    const std::size_t n = Z.size();
    if (n != F.size() || n < 2) throw InvalidInput("aaa: need matching sample vectors");
    double fmax = 0.0;
    cplx mean = 0.0;
    for (const auto& v : F) {
        fmax = std::max(fmax, std::abs(v));
        mean += v;
    }
    mean /= static_cast<double>(n);
    RationalApprox r;
    std::vector<char> used(n, 0);
    std::vector<cplx> R(n, mean);
    std::vector<std::size_t> support;
    for (std::size_t m = 1; m <= std::min(max_degree + 1, n - 1); ++m) {
        std::size_t jmax = 0;
        double emax = -1.0;
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i] && std::abs(F[i] - R[i]) > emax) {
                emax = std::abs(F[i] - R[i]);
                jmax = i;
            }
        used[jmax] = 1;
        support.push_back(jmax);
        r.z.push_back(Z[jmax]);
        r.f.push_back(F[jmax]);
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i]) rows.push_back(i);
        Eigen::MatrixXcd C(rows.size(), m), A(rows.size(), m);
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t b = 0; b < m; ++b) {
                C(a, b) = 1.0 / (Z[rows[a]] - r.z[b]);
                A(a, b) = (F[rows[a]] - r.f[b]) * C(a, b);
            }
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinV);
        const Eigen::VectorXcd wv = svd.matrixV().col(m - 1);
        r.w.assign(wv.data(), wv.data() + m);
        Eigen::VectorXcd wf(m);
        for (std::size_t b = 0; b < m; ++b) wf(b) = wv(b) * r.f[b];
        const Eigen::VectorXcd N = C * wf, D = C * wv;
        double err = 0.0;
        for (std::size_t a = 0; a < rows.size(); ++a) {
            R[rows[a]] = N(a) / D(a);
            err = std::max(err, std::abs(F[rows[a]] - R[rows[a]]));
        }
        for (std::size_t b = 0; b < m; ++b) R[support[b]] = r.f[b];
        r.max_error = err;
        if (err <= tol * fmax) break;
    }
    return r;
}

}  // namespace halfline
