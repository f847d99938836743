#pragma once

#include <vector>

#include "halfline/sampled.hpp"

namespace halfline {

// Samples restricted to k >= 0; negative-k samples are dropped (the callers'
// functions satisfy g(-k) = conj g(k)).
SampledFunction nonnegative_half(const SampledFunction& g);

// Large-k model sum_j r_j (i/(k + i lambda))^j. Every term is analytic in the
// upper half-plane, so its Fourier transform vanishes for y > 0.
struct UpperTail {
    double lambda = 1.0;
    std::vector<double> r;
    cplx operator()(double k) const;
};
UpperTail fit_upper_tail(const SampledFunction& g, int terms, double lambda, double from_fraction = 0.5);

// Sites x_s of oscillations e^{+-2ikx_s}, 0 < x_s <= xmax, in uniformly resampled
// values v(k) (shift-invariance estimate on a Hankel matrix).
std::vector<double> oscillation_sites(const std::vector<double>& k, const std::vector<cplx>& v, double xmax);

// UpperTail plus terms e^{-+2ikx_s} (i/(k + i lambda))^j with real coefficients. Only the
// e^{-2ikx_s} terms have a nonzero transform on y > 0, supported on y < 2x_s.
struct OscillatingTail {
    UpperTail smooth;
    std::vector<double> sites;
    std::vector<std::vector<double>> minus, plus;
    cplx operator()(double k) const;
    double transform(double y) const;  // (1/2pi) int_R model(k) e^{iky} dk, y >= 0
};
OscillatingTail fit_oscillating_tail(const SampledFunction& g, int terms, double lambda, double xmax,
                                     double from_fraction = 0.5);

// (1/pi) int_0^inf cos(kt) / (k^2 + lambda^2)^j dk and its t-derivative, j >= 1.
double matern_cosine(int j, double lambda, double t);
double matern_cosine_slope(int j, double lambda, double t);

// Even real model sum_j 1/(k^2 + lambda^2)^j [a_j + sum_s (c_sj cos 2kx_s + d_sj k sin 2kx_s)]
// with closed-form cosine transform.
struct CosineTail {
    double lambda = 1.0;
    std::vector<double> a;
    std::vector<double> sites;
    std::vector<std::vector<double>> c, d;
    double operator()(double k) const;
    double cosine_transform(double t) const;  // (1/pi) int_0^inf model(k) cos(kt) dk
};
CosineTail fit_cosine_tail(const SampledFunction& w, int terms, double lambda, double xmax,
                           double from_fraction = 0.5);

// Upper-half-plane analytic model sum_j u^j [a_j + sum_s b_sj e^{2ikx_s}], u = i/(k + i lambda),
// real coefficients, fitted so that its real part matches an even real function at large k.
// Its imaginary part on the real axis is then the Hilbert transform of the real part.
struct AnalyticTail {
    double lambda = 1.0;
    std::vector<double> a;
    std::vector<double> sites;
    std::vector<std::vector<double>> b;
    cplx operator()(cplx k) const;
    double residual = 0.0;  // max |fit - data| over the fitted rows
};
AnalyticTail fit_analytic_tail(const SampledFunction& w, int terms, double lambda, double xmax,
                               double from_fraction = 0.5);

// Raised-cosine window over the top `fraction` of [0, kmax].
double taper(double k, double kmax, double fraction);

// (1/2pi) int_{-K}^{K} g(k) taper(k) e^{iky} dk for Hermitian g given on k >= 0.
std::vector<double> hermitian_fourier(const SampledFunction& g, const std::vector<double>& y, double taper_fraction);

// (1/pi) int_0^K w(k) taper(k) cos(kt) dk for real w.
std::vector<double> cosine_fourier(const SampledFunction& w, const std::vector<double>& t, double taper_fraction);

}  // namespace halfline
