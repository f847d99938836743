#include "halfline/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "halfline/darboux.hpp"
#include "halfline/direct.hpp"
#include "halfline/errors.hpp"

namespace halfline {

namespace {

constexpr double kMarginalSlope = 1e-6;

double bracket_root(const HEvaluator& H, double a, double b, double fa, double fb) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    boost::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve([&](double x) { return H(x); }, a, b, fa, fb,
                                               boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (r.first + r.second);
}

// Zeros of H on beta in [lo, hi] (both negative), nearest to zero first.
std::vector<ImaginaryZero> scan(const HEvaluator& H, double lo, double hi, double step) {
    const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / step)));
    std::vector<double> bs(n + 1), hs(n + 1);
    for (int i = 0; i <= n; ++i) {
        bs[i] = lo + (hi - lo) * i / n;
        hs[i] = H(bs[i]);
    }
    struct Root {
        double beta;
        bool tangent;
    };
    std::vector<Root> roots;
    for (int i = 0; i < n; ++i) {
        if (hs[i + 1] == 0.0) {
            roots.push_back({bs[i + 1], false});
        } else if (hs[i] != 0.0 && (hs[i] < 0.0) != (hs[i + 1] < 0.0)) {
            roots.push_back({bracket_root(H, bs[i], bs[i + 1], hs[i], hs[i + 1]), false});
        }
    }
    // Sign-preserving dips of |H| may hide a close pair or a tangency.
    for (int i = 1; i < n; ++i) {
        const double a = hs[i - 1], m = hs[i], c = hs[i + 1];
        if (a == 0.0 || m == 0.0 || c == 0.0) continue;
        if ((a < 0.0) != (m < 0.0) || (c < 0.0) != (m < 0.0)) continue;
        if (!(std::abs(m) <= std::abs(a) && std::abs(m) <= std::abs(c))) continue;
        const double s = m < 0.0 ? -1.0 : 1.0;
        auto r = boost::math::tools::brent_find_minima([&](double x) { return s * H(x); }, bs[i - 1], bs[i + 1],
                                                       40);
        const double bstar = r.first, hstar = H(bstar);
        if ((hstar < 0.0) != (m < 0.0)) {
            roots.push_back({bracket_root(H, bs[i - 1], bstar, a, hstar), false});
            roots.push_back({bracket_root(H, bstar, bs[i + 1], hstar, c), false});
            continue;
        }
        const double d = 1e-4 * (1.0 + std::abs(bstar));
        const double h2 = (H(bstar + d) - 2.0 * hstar + H(bstar - d)) / (d * d);
        if (h2 == 0.0) continue;
        const double half_width = std::sqrt(2.0 * std::abs(hstar) / std::abs(h2));
        if (half_width < kTangencyHalfWidth) roots.push_back({bstar, true});
    }
    std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) { return x.beta > y.beta; });
    std::vector<ImaginaryZero> out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        ImaginaryZero z{-roots[i].beta, !roots[i].tangent, std::numeric_limits<double>::quiet_NaN()};
        if (i + 1 < roots.size() && roots[i].beta - roots[i + 1].beta < kPairSeparation) {
            z.simple = false;
            z.partner = -roots[i + 1].beta;
            ++i;
        }
        if (!out.empty() && std::abs(out.back().gamma - z.gamma) < 1e-12 * (1.0 + z.gamma)) continue;
        out.push_back(z);
    }
    return out;
}

double scan_step(double beta_max) { return std::min(0.01, beta_max / 1e4); }

bool double_near(const HEvaluator& H, double gamma) {
    const double w = 1.5 * kPairSeparation;
    const auto local = scan(H, -(gamma + w), -std::max(gamma - w, 1e-9), 1e-3);
    for (const auto& z : local) {
        if (z.simple) continue;
        if (std::abs(z.gamma - gamma) < kPairSeparation) return true;
        if (std::isfinite(z.partner) && std::abs(z.partner - gamma) < kPairSeparation) return true;
    }
    return false;
}

}  // namespace

double polish_resonance(const OperatorSpec& spec, double gamma) {
    if (!(gamma > 0.0)) throw InvalidInput("resonance wavenumber must be positive");
    double beta = -gamma;
    if (!polish_zero(spec, beta, 1e-3 * (1.0 + gamma)) || !(beta < 0.0))
        throw InvalidInput("gamma=" + std::to_string(gamma) + " is not an imaginary resonance");
    return -beta;
}

std::vector<ImaginaryZero> imaginary_resonances(const OperatorSpec& spec, double beta_max) {
    if (!(beta_max > 0.0)) throw InvalidInput("beta_max must be positive");
    HEvaluator H(spec);
    return scan(H, -beta_max, -1e-8 * beta_max, scan_step(beta_max));
}

Eligibility classify_eligibility(const OperatorSpec& spec, double gamma) {
    const double g = polish_resonance(spec, gamma);
    HEvaluator H(spec);
    if (double_near(H, g)) return Eligibility::Ineligible;
    const double d = H.derivative(-g);
    if (std::abs(d) < kMarginalSlope) return Eligibility::Ineligible;
    const double hp = H(g);
    if (hp == 0.0) throw NumericalError("H vanishes at both +gamma and -gamma");
    return d / hp > 0.0 ? Eligibility::Eligible : Eligibility::Ineligible;
}

Eligibility classify_via_stripped(const OperatorSpec& spec, double gamma, const BoundStateSet& bound) {
    const double g = polish_resonance(spec, gamma);
    HEvaluator H(spec);
    if (double_near(H, g)) return Eligibility::Ineligible;
    const double d = H.derivative(-g);
    if (std::abs(d) < kMarginalSlope) return Eligibility::Ineligible;
    // H(beta;0) = H(beta;N) prod (beta+gs)/(beta-gs); at a zero only the slope survives.
    double d0 = d;
    for (const auto& s : bound) d0 *= (s.gamma - g) / (-g - s.gamma);
    return d0 > 0.0 ? Eligibility::Eligible : Eligibility::Ineligible;
}

Eligibility classify_via_stripped(const OperatorSpec& spec, double gamma) {
    return classify_via_stripped(spec, gamma, bound_states(spec, default_beta_max(spec)));
}

ResonanceReport analyze_resonances(const OperatorSpec& spec, double beta_max) {
    ResonanceReport rep;
    rep.beta_max = beta_max;
    HEvaluator H(spec);
    int eligible = 0;
    for (const auto& z : imaginary_resonances(spec, beta_max)) {
        Resonance r;
        r.gamma = z.gamma;
        r.simple = z.simple;
        r.g_squared = support_preserving_norming_constant(spec, z.gamma);
        if (z.simple) {
            const double d = H.derivative(-z.gamma);
            r.eligibility = (std::abs(d) >= kMarginalSlope && d / H(z.gamma) > 0.0) ? Eligibility::Eligible
                                                                                   : Eligibility::Ineligible;
        }
        if (r.eligibility == Eligibility::Eligible) ++eligible;
        rep.resonances.push_back(r);
    }
    rep.bound_state_count = static_cast<int>(bound_states(spec, beta_max).size());
    rep.M = eligible + rep.bound_state_count;
    return rep;
}

int maximal_eligible_count(const OperatorSpec& spec, double beta_max) {
    return analyze_resonances(spec, beta_max).M;
}

SampledFunction sample_h(const OperatorSpec& spec, const std::vector<double>& betas) {
    HEvaluator H(spec);
    SampledFunction out{betas, {}};
    for (double b : betas) out.values.emplace_back(H(b), 0.0);
    return out;
}

}  // namespace halfline
