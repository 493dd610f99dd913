#pragma once

#include <cstddef>
#include <vector>

#include "jade/core.hpp"

namespace jade::synth {

// Per-sample truth. The component equals amplitude * cos(phase - quadrature_offset)
// (quadrature_offset = pi/2 for sine models).
struct GroundTruth {
    std::vector<double> phase;      // rad
    std::vector<double> frequency;  // Hz (cycles per unit of the time axis)
    std::vector<double> amplitude;
    double quadrature_offset = 0.0;

    std::vector<double> cosine_phase() const;
};

struct Generated {
    Signal signal;
    GroundTruth truth;
};

// The model variable n runs over 0, step, 2 step, ...; sample_period = step.
Generated quadratic_chirp(std::size_t n_samples, double alpha, double beta, const NoiseSpec& noise,
                          double step = 1.0);

Generated am_fm_signal(std::size_t n_samples, double a1, double w1, double a2, double w2, const NoiseSpec& noise,
                       double step = 1.0);

struct TwoComponent {
    Signal signal;
    Signal first;   // 0.2 sin(phi_1)
    Signal second;  // 2 sin(phi_2)
    GroundTruth first_truth;
    GroundTruth second_truth;
};

// n normalized to [0, 1): n_k = k / n_samples.
TwoComponent two_component(std::size_t n_samples);

struct DuffingParams {
    double alpha = -1.0;
    double beta = 1.0;
    double gamma = 0.1;
    double omega = 1.0;
    double x0 = 1.0;
    double v0 = 0.0;
    double t_end = 400.0;
    double dt = 0.01;
};

struct DuffingSolution {
    Signal x;
    Signal xdot;
};

// Classical RK4 on x' = v, v' = gamma cos(omega t) - alpha x - beta x^3.
// Throws DataError("dt too coarse") when halving dt moves the end state by >= 1e-4 relative.
DuffingSolution duffing_solve(const DuffingParams& p);

// RK4 without the step-halving check; returns (x, v) at every step.
DuffingSolution duffing_integrate(const DuffingParams& p);

}  // namespace jade::synth
