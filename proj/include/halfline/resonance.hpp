#pragma once

#include <vector>

#include "halfline/potential.hpp"
#include "halfline/sampled.hpp"

namespace halfline {

enum class Eligibility { Eligible, Ineligible };

// Zero of H at beta = -gamma. A double zero is either a tangency or a pair of
// simple zeros closer than kPairSeparation; it is reported at the member
// nearest beta = 0 and `partner` holds the other one (NaN for a tangency).
struct ImaginaryZero {
    double gamma = 0.0;
    bool simple = true;
    double partner = 0.0;
};

struct Resonance {
    double gamma = 0.0;
    bool simple = true;
    Eligibility eligibility = Eligibility::Ineligible;
    double g_squared = 0.0;  // support-preserving value, sign decides eligibility
};

struct ResonanceReport {
    std::vector<Resonance> resonances;
    double beta_max = 0.0;
    int bound_state_count = 0;
    int M = 0;  // relative to the window
};

inline constexpr double kPairSeparation = 2e-2;
inline constexpr double kTangencyHalfWidth = 1e-2;

std::vector<ImaginaryZero> imaginary_resonances(const OperatorSpec& spec, double beta_max);

// Throws InvalidInput when gamma is not within 1e-3 (1+gamma) of a zero.
Eligibility classify_eligibility(const OperatorSpec& spec, double gamma);
Eligibility classify_via_stripped(const OperatorSpec& spec, double gamma, const BoundStateSet& bound);
Eligibility classify_via_stripped(const OperatorSpec& spec, double gamma);

int maximal_eligible_count(const OperatorSpec& spec, double beta_max);

ResonanceReport analyze_resonances(const OperatorSpec& spec, double beta_max);

// Resonance gamma refined onto the nearest zero of H(-gamma).
double polish_resonance(const OperatorSpec& spec, double gamma);

SampledFunction sample_h(const OperatorSpec& spec, const std::vector<double>& betas);

}  // namespace halfline
