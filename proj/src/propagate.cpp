#include "halfline/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>

#include "halfline/errors.hpp"

namespace halfline {

namespace {

using Gauss = boost::math::quadrature::gauss<double, 10>;

// Gauss nodes on [0,1] with weights summing to 1.
struct UnitRule {
    std::vector<double> t, w;
    UnitRule() {
        const auto& a = Gauss::abscissa();
        const auto& wt = Gauss::weights();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0.0) {
                t.push_back(0.5);
                w.push_back(0.5 * wt[i]);
                continue;
            }
            t.push_back(0.5 * (1.0 - a[i]));
            w.push_back(0.5 * wt[i]);
            t.push_back(0.5 * (1.0 + a[i]));
            w.push_back(0.5 * wt[i]);
        }
    }
};

const UnitRule& unit_rule() {
    static const UnitRule r;
    return r;
}

// Pieces are split so that |eta| * len stays below this for the quadrature.
constexpr double kMaxPhase = 1.5;

struct Stepper {
    cplx k2;
    bool integrals;
    // direction +1 forward, -1 backward
    void advance(double v, double len, int dir, cplx& y, cplx& yp, cplx& acc) const {
        if (len <= 0.0) return;
        const cplx q = v - k2;
        if (!integrals) {
            const Transfer t = transfer(q, len);
            const cplx ny = t.c * y + double(dir) * t.s * yp;
            const cplx nyp = double(dir) * t.qs * y + t.c * yp;
            y = ny;
            yp = nyp;
            return;
        }
        const double phase = std::sqrt(std::abs(q)) * len;
        const int nsub = std::max(1, static_cast<int>(std::ceil(phase / kMaxPhase)));
        const double h = len / nsub;
        const auto& rule = unit_rule();
        for (int s = 0; s < nsub; ++s) {
            cplx sum = 0.0;
            for (std::size_t i = 0; i < rule.t.size(); ++i) {
                const Transfer t = transfer(q, rule.t[i] * h);
                const cplx yi = t.c * y + double(dir) * t.s * yp;
                sum += rule.w[i] * yi * yi;
            }
            acc += sum * h;
            const Transfer t = transfer(q, h);
            const cplx ny = t.c * y + double(dir) * t.s * yp;
            const cplx nyp = double(dir) * t.qs * y + t.c * yp;
            y = ny;
            yp = nyp;
        }
    }
};

}  // namespace

Transfer transfer(cplx q, double len) {
    if (q.imag() == 0.0) {
        const double qr = q.real();
        if (qr > 0.0) {
            const double eta = std::sqrt(qr);
            const double sh = std::sinh(eta * len);
            return {std::cosh(eta * len), sh / eta, eta * sh};
        }
        if (qr < 0.0) {
            const double w = std::sqrt(-qr);
            const double sn = std::sin(w * len);
            return {std::cos(w * len), sn / w, -w * sn};
        }
        return {1.0, len, 0.0};
    }
    const cplx eta = std::sqrt(q);
    const cplx z = eta * len;
    const cplx sh = std::sinh(z);
    return {std::cosh(z), sh / eta, eta * sh};
}

Propagator::Propagator(const Potential& pot) : b_(pot.b) {
    const std::size_t n = pot.cells.size();
    const double h = pot.cell_width();
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && pot.cells[j] == pot.cells[i]) ++j;
        const double x0 = h * static_cast<double>(i);
        const double x1 = (j == n) ? pot.b : h * static_cast<double>(j);
        segs_.push_back({x0, x1, pot.cells[i]});
        i = j;
    }
}

void Propagator::jost_at_zero(cplx k, cplx& f0, cplx& fp0) const {
    const auto pts = jost_backward_impl(k, {0.0}, false);
    f0 = pts[0].y;
    fp0 = pts[0].yp;
}

std::vector<SolutionPoint> Propagator::forward(cplx k, cplx y0, cplx yp0, const std::vector<double>& xs,
                                               bool integrals) const {
    std::vector<SolutionPoint> out;
    out.reserve(xs.size());
    cplx y = y0, yp = yp0, acc = 0.0;
    double x = 0.0;
    const Stepper st{k * k, integrals};
    std::size_t j = 0;
    auto emit_upto = [&](double x1, double v) {
        while (j < xs.size() && xs[j] <= x1) {
            if (xs[j] < x) throw InvalidInput("forward: evaluation points must be ascending and >= 0");
            st.advance(v, xs[j] - x, 1, y, yp, acc);
            x = xs[j];
            out.push_back({y, yp, acc});
            ++j;
        }
        st.advance(v, x1 - x, 1, y, yp, acc);
        x = x1;
    };
    for (const auto& s : segs_) {
        if (j == xs.size()) break;
        emit_upto(s.x1, s.v);
    }
    if (j < xs.size()) emit_upto(std::numeric_limits<double>::infinity(), 0.0);
    return out;
}

std::vector<SolutionPoint> Propagator::jost_backward(cplx k, const std::vector<double>& xs, bool integrals) const {
    if (!xs.empty() && (xs.back() > b_ * (1.0 + 1e-14) || xs.front() < 0.0))
        throw InvalidInput("jost_backward: points must lie in [0, b]");
    return jost_backward_impl(k, xs, integrals);
}

namespace {

// Backward travel keeps y = a + c, y' = eta (a - c) with a ~ e^{eta x} and
// c ~ e^{-eta x}, so a pure exponential stays pure and is never recovered
// from a difference of large numbers. Short segments (|eta| L small) use the
// transfer matrix since nothing grows there.
struct BackState {
    bool amp = true;
    cplx a, c, eta;  // amplitude form
    cplx y, yp;      // matrix form

    cplx value() const { return amp ? a + c : y; }
    cplx slope() const { return amp ? eta * (a - c) : yp; }

    void enter(cplx eta_new, bool use_amp) {
        if (use_amp) {
            if (amp && eta != 0.0 && eta_new != 0.0) {
                const cplx r = eta / eta_new;
                const cplx na = 0.5 * ((1.0 + r) * a + (1.0 - r) * c);
                const cplx nc = 0.5 * ((1.0 - r) * a + (1.0 + r) * c);
                a = na;
                c = nc;
            } else {
                const cplx v = value(), d = slope() / eta_new;
                a = 0.5 * (v + d);
                c = 0.5 * (v - d);
            }
            eta = eta_new;
            amp = true;
        } else if (amp) {
            y = value();
            yp = slope();
            amp = false;
        }
    }

    // Value after moving a distance t towards x = 0 (state unchanged).
    cplx peek(cplx q, double t) const {
        if (amp) return a * std::exp(-eta * t) + c * std::exp(eta * t);
        const Transfer tr = transfer(q, t);
        return tr.c * y - tr.s * yp;
    }

    void move(cplx q, double t) {
        if (t <= 0.0) return;
        if (amp) {
            a *= std::exp(-eta * t);
            c *= std::exp(eta * t);
        } else {
            const Transfer tr = transfer(q, t);
            const cplx ny = tr.c * y - tr.s * yp;
            const cplx nyp = -tr.qs * y + tr.c * yp;
            y = ny;
            yp = nyp;
        }
    }
};

constexpr double kAmplitudeThreshold = 0.5;

}  // namespace

std::vector<SolutionPoint> Propagator::jost_backward_impl(cplx k, const std::vector<double>& xs,
                                                          bool integrals) const {
    std::vector<SolutionPoint> out(xs.size());
    if (xs.empty()) return out;
    const cplx I(0.0, 1.0);
    BackState st;
    st.eta = I * k;  // e^{ikx} is a pure exponential in its own basis
    st.a = std::exp(I * k * b_);
    st.c = 0.0;
    cplx acc = 0.0;
    const cplx k2 = k * k;
    const auto& rule = unit_rule();
    double x = b_;
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(xs.size()) - 1;

    auto advance = [&](cplx q, double len) {
        if (len <= 0.0) return;
        if (!integrals) {
            st.move(q, len);
            return;
        }
        const double phase = std::sqrt(std::abs(q)) * len;
        const int nsub = std::max(1, static_cast<int>(std::ceil(phase / kMaxPhase)));
        const double h = len / nsub;
        for (int s = 0; s < nsub; ++s) {
            cplx sum = 0.0;
            for (std::size_t i = 0; i < rule.t.size(); ++i) {
                const cplx yi = st.peek(q, rule.t[i] * h);
                sum += rule.w[i] * yi * yi;
            }
            acc += sum * h;
            st.move(q, h);
        }
    };

    for (auto it = segs_.rbegin(); it != segs_.rend() && j >= 0; ++it) {
        const cplx q = it->v - k2;
        const cplx eta = std::sqrt(q);
        const double len = it->x1 - it->x0;
        // f = e^{ikx} exactly on a vanishing tail
        const bool free_tail = it == segs_.rbegin() && it->v == 0.0;
        if (!free_tail) st.enter(eta, std::abs(eta) * len >= kAmplitudeThreshold);
        auto to = [&](double target) {
            advance(q, x - target);
            x = target;
            if (free_tail) st.a = std::exp(I * k * x);
        };
        while (j >= 0 && xs[j] >= it->x0) {
            to(std::min(xs[j], b_));
            out[j] = {st.value(), st.slope(), acc};
            --j;
        }
        to(it->x0);
    }
    return out;
}

}  // namespace halfline
