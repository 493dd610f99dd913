#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jade/core.hpp"

namespace jade::baselines {

struct AnalyticSignal {
    std::vector<double> real_part;
    std::vector<double> imag_part;
};

struct NormalizationTrace {
    std::vector<std::vector<double>> envelopes;
    std::vector<double> normalized;
    int iterations = 0;
};

struct PhaseEstimate {
    std::vector<double> phase;      // unwrapped, radians
    std::vector<double> frequency;  // Hz
};

AnalyticSignal analytic_signal(std::span<const double> x);
AnalyticSignal analytic_signal(const Signal& s);

// Adds multiples of 2 pi wherever consecutive samples jump by more than pi.
std::vector<double> unwrap(std::span<const double> phase);
// Central differences (one-sided at the ends) / (2 pi T_s).
std::vector<double> phase_to_frequency(std::span<const double> phase, double sample_period);

PhaseEstimate ht_phase_if(const Signal& s);

NormalizationTrace normalize_am(std::span<const double> x, int max_iterations = 10);
NormalizationTrace normalize_am(const Signal& s, int max_iterations = 10);

PhaseEstimate nht_phase_if(const Signal& s);

// Quadrature phase of an already normalized signal.
std::vector<double> dq_phase(std::span<const double> y);
PhaseEstimate dq_phase_if(const Signal& s);

}  // namespace jade::baselines
