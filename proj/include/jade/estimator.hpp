#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jade/core.hpp"
#include "jade/spline.hpp"

namespace jade {

enum class Segmentation {
    zero_crossings,  // half-sine templates between sign changes
    monotonic,       // half-cosine templates between extrema
};

struct SectionModel {
    std::size_t start_index = 0;
    std::size_t end_index = 0;
    double template_frequency = 0.0;  // rad/sample, pi / (end - start)
    double template_amplitude = 0.0;
    int sign = 1;
    double removed_mean = 0.0;
};

// Phase in radians, cosine convention: component ~ A cos(phase) + mean.
// Indices outside [first, last] carry the linearly extrapolated spline.
struct PhaseCurve {
    std::vector<double> raw;     // per-section DTW phase, concatenated
    std::vector<double> values;  // spline through raw at the partition points
    spline::CubicSpline spline;  // abscissa in samples
    double sample_period = 1.0;
    std::size_t first = 0;
    std::size_t last = 0;
};

struct IFCurve {
    std::vector<double> values;  // Hz
};

struct JadeOptions {
    std::optional<std::vector<std::size_t>> crossings;  // skip detection (ground-truth mode)
    std::optional<std::vector<std::size_t>> partition;  // spline knots; default: boundaries
    Segmentation segmentation = Segmentation::zero_crossings;
    std::size_t min_section_length = 4;
};

struct JadeResult {
    PhaseCurve phase;
    IFCurve frequency;
    std::vector<SectionModel> sections;
    std::vector<double> amplitude_function;
    std::vector<double> mean_function;
    std::vector<std::size_t> boundaries;
    std::vector<std::size_t> partition;
    // samples n where values[n+1] < values[n] farther than 2 samples from a knot
    std::vector<std::size_t> monotonicity_violations;
    double sample_period = 1.0;
    double start_time = 0.0;
};

struct SectionSplit {
    std::vector<SectionModel> models;
    std::vector<std::vector<double>> blocks;  // start..end inclusive, mean removed
};

std::size_t smoothing_window(std::span<const double> x);
std::size_t smoothing_window(const Signal& s);

std::vector<std::size_t> zero_crossings(std::span<const double> x);
std::vector<std::size_t> zero_crossings(const Signal& s);

// Extrema of the smoothed signal, sorted (monotonic segmentation).
std::vector<std::size_t> monotonic_boundaries(std::span<const double> x);

// Removes sections shorter than min_length. An interior short section loses
// both of its boundaries so half-wave signs keep alternating.
std::vector<std::size_t> merge_short_sections(std::vector<std::size_t> boundaries, std::size_t min_length);

SectionSplit split_sections(std::span<const double> x, std::span<const std::size_t> boundaries,
                            Segmentation mode = Segmentation::zero_crossings);

// samples k = 0..length-1 of sign * amplitude * sin(w k) (cos for monotonic)
std::vector<double> section_template(std::size_t length, double frequency, double amplitude, int sign,
                                     Segmentation mode = Segmentation::zero_crossings);

double fit_template_amplitude(std::span<const double> section, double template_frequency);
double fit_template_amplitude(std::span<const double> section, double template_frequency, int sign,
                              Segmentation mode);

// Phase in [0, pi] across the section; endpoints exactly 0 and pi.
std::vector<double> section_phase(std::span<const double> section, const SectionModel& model,
                                  Segmentation mode = Segmentation::zero_crossings);

JadeResult estimate(const Signal& s, const JadeOptions& options = {});

Signal reconstruct(const JadeResult& r);

double relative_error(std::span<const double> estimate, std::span<const double> truth);
double relative_error(const PhaseCurve& estimate, std::span<const double> truth);

bool check_separability(std::span<const double> amplitude, std::span<const double> phase, double epsilon);

}  // namespace jade
