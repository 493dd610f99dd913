#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jade/core.hpp"
#include "jade/estimator.hpp"
#include "jade/fif.hpp"
#include "jade/synth.hpp"

namespace jade::bench {

enum class Method { jade, ht, nht, dq };

Method parse_method(std::string_view name);
std::string method_name(Method m);

struct Fixture {
    std::string name;
    Signal clean;
    synth::GroundTruth truth;
};

// "ex1" chirp, "ex2" AM-FM, "tone" (10 Hz at 1 kHz).
Fixture make_fixture(std::string_view name);
std::vector<std::string> fixture_names();

// Standard fixture signals, also used by the CLI.
synth::Generated example1(const NoiseSpec& noise);
synth::Generated example2(const NoiseSpec& noise);
synth::TwoComponent example3();
synth::DuffingSolution duffing();

const std::vector<double>& table1_snrs();
const std::vector<double>& table2_snrs();

struct SweepRow {
    double snr_db = 0.0;
    double epsilon_median = 0.0;
    double epsilon_iqr = 0.0;
    int seeds = 0;
    int failures = 0;  // counted as infinite error
    double measured_snr_min = 0.0;
    double measured_snr_max = 0.0;
    std::vector<double> epsilons;
};

struct SweepReport {
    std::string method;
    std::string fixture;
    std::vector<SweepRow> rows;  // descending SNR
};

struct SweepOptions {
    std::vector<double> snr_targets;
    int seeds = 10;
    Method method = Method::jade;
    bool ground_truth_crossings = false;
    std::uint64_t base_seed = 1;
    unsigned threads = 0;  // 0: hardware concurrency
};

SweepReport snr_sweep(const Fixture& fixture, const SweepOptions& options);
SweepReport snr_sweep(std::string_view fixture, const SweepOptions& options);

// Nearest samples to where a cosine-convention phase passes pi/2 + k pi.
std::vector<std::size_t> truth_crossings(std::span<const double> cosine_phase);

// Relative error over [first, last] after removing the multiple of 2 pi that
// best aligns estimate with truth.
double phase_error(std::span<const double> estimate, std::span<const double> truth, std::size_t first,
                   std::size_t last);

struct MethodOutcome {
    std::string method;
    std::optional<double> epsilon;
    std::vector<double> phase;
    std::string error;
};

// JADE, HT, NHT, DQ in that order; errors over the truth-crossing span.
std::vector<MethodOutcome> compare_methods(const Signal& signal, const synth::GroundTruth& truth);

struct PipelineResult {
    fif::Decomposition decomposition;
    std::vector<std::size_t> selection;
    std::vector<JadeResult> estimates;
    std::vector<Signal> reconstructions;
    std::vector<double> imf_errors;  // relative l2 over each analysed span
    Signal composite;
    double composite_error = 0.0;        // relative l2 vs input, interior 80%
    double composite_correlation = 0.0;  // interior 80%
};

// selection holds 0-based IMF indices; empty selects every IMF.
PipelineResult pipeline(const Signal& signal, const fif::Config& config, std::vector<std::size_t> selection = {});

std::pair<std::size_t, std::size_t> interior(std::size_t n);

double median(std::vector<double> v);
double iqr(std::vector<double> v);

std::string format_table(const SweepReport& report);

}  // namespace jade::bench
