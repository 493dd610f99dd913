#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jade {

// Raised when the data itself cannot be processed (no oscillation, bad file
// contents, ...). Precondition violations on arguments use std::invalid_argument.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Signal {
public:
    Signal(std::vector<double> samples, double sample_period, double start_time = 0.0);

    std::span<const double> samples() const { return samples_; }
    const std::vector<double>& values() const { return samples_; }
    double sample_period() const { return sample_period_; }
    double start_time() const { return start_time_; }
    std::size_t size() const { return samples_.size(); }
    double operator[](std::size_t i) const { return samples_[i]; }
    double time_at(std::size_t i) const { return start_time_ + static_cast<double>(i) * sample_period_; }

    // Same timing, new samples (length must match).
    Signal with_samples(std::vector<double> samples) const;

private:
    std::vector<double> samples_;
    double sample_period_;
    double start_time_;
};

struct NoiseSpec {
    double sigma_scale = 0.0;
    std::uint64_t seed = 0;
};

// Unit normal draws: mt19937_64 + Box-Muller on 53-bit uniforms.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
    double next();
    std::vector<double> draw(std::size_t n);

private:
    double uniform();  // (0, 1]
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct Extrema {
    std::vector<std::size_t> maxima;
    std::vector<std::size_t> minima;
    std::size_t count() const { return maxima.size() + minima.size(); }
};

Extrema local_extrema(std::span<const double> x);
Extrema local_extrema(const Signal& s);

std::vector<double> moving_average(std::span<const double> x, std::size_t window);
Signal moving_average(const Signal& s, std::size_t window);

double l2_norm(std::span<const double> x);
double snr_db(std::span<const double> signal, std::span<const double> noise);
double snr_db(const Signal& signal, const Signal& noise);

Signal add_noise(const Signal& s, const NoiseSpec& spec);

// Pearson correlation over [begin, end).
double correlation(std::span<const double> a, std::span<const double> b);

}  // namespace jade
