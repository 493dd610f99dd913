#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jade/core.hpp"

namespace jade::fif {

struct Filter {
    std::vector<double> taps;  // taps[k + half_length] for k in [-L, L]
    int half_length = 0;
    double at(int k) const;
};

struct Config {
    double delta = 0.0316227766016838;  // sqrt(1e-3)
    int max_inner_iterations = 200;
    int max_imfs = 32;
    double xi = 7.0;
    int extension_factor = 2;
    // candidate IMFs with norm below floor * ||input|| are left in the remainder
    double imf_energy_floor = 1e-2;

    void validate() const;
};

struct Decomposition {
    std::vector<Signal> imfs;
    Signal remainder;
    Config config_used;
    std::vector<int> filter_lengths;
    std::vector<int> iterations;
};

struct SiftResult {
    std::vector<double> imf;
    int iterations = 0;
};

struct Extension {
    std::vector<double> samples;
    std::size_t offset = 0;  // position of x[0]
};

Filter build_filter(int half_length);
int filter_length(std::span<const double> x, double xi);
int filter_length(const Signal& s, double xi);

// Boundary extension used before circular convolution: reflection about the
// outermost extrema, extension_factor * half_length samples on the left and at
// least that many on the right (padded to an FFT-friendly total length).
Extension extend(std::span<const double> x, int half_length, int extension_factor);

SiftResult sift(std::span<const double> x, const Filter& filter, const Config& config);
Decomposition decompose(const Signal& s, const Config& config = {});

}  // namespace jade::fif
