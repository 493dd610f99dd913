#include "jade/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "jade/baselines.hpp"

namespace jade::bench {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

std::vector<double> estimate_phase(const Signal& s, Method m, const std::vector<std::size_t>* crossings) {
    switch (m) {
        case Method::jade: {
            JadeOptions opt;
            if (crossings) opt.crossings = *crossings;
            return estimate(s, opt).phase.raw;
        }
        case Method::ht: return baselines::ht_phase_if(s).phase;
        case Method::nht: return baselines::nht_phase_if(s).phase;
        case Method::dq: return baselines::dq_phase_if(s).phase;
    }
    throw std::logic_error("unhandled method");
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    const double f = pos - static_cast<double>(lo);
    if (f == 0.0 || v[lo] == v[hi]) return v[lo];
    return v[lo] + f * (v[hi] - v[lo]);
}

}  // namespace

Method parse_method(std::string_view name) {
    if (name == "jade") return Method::jade;
    if (name == "ht") return Method::ht;
    if (name == "nht") return Method::nht;
    if (name == "dq") return Method::dq;
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::jade: return "jade";
        case Method::ht: return "ht";
        case Method::nht: return "nht";
        case Method::dq: return "dq";
    }
    return "?";
}

synth::Generated example1(const NoiseSpec& noise) {
    return synth::quadratic_chirp(3000, std::sqrt(5.0) / 1000, std::sqrt(2.0) / 300, noise, 0.1);
}

synth::Generated example2(const NoiseSpec& noise) {
    return synth::am_fm_signal(3000, 0.3, 1.0 / 35, 1.0, 1.0 / 100, noise, 0.1);
}

synth::TwoComponent example3() { return synth::two_component(2000); }

synth::DuffingSolution duffing() { return synth::duffing_solve(synth::DuffingParams{}); }

Fixture make_fixture(std::string_view name) {
    if (name == "ex1") {
        auto g = example1({});
        return {"ex1", std::move(g.signal), std::move(g.truth)};
    }
    if (name == "ex2") {
        auto g = example2({});
        return {"ex2", std::move(g.signal), std::move(g.truth)};
    }
    if (name == "tone") {
        const std::size_t n = 1000;
        const double ts = 1e-3;
        std::vector<double> x(n);
        synth::GroundTruth t;
        t.phase.resize(n);
        t.frequency.assign(n, 10.0);
        t.amplitude.assign(n, 1.0);
        for (std::size_t k = 0; k < n; ++k) {
            t.phase[k] = 2 * pi * 10.0 * static_cast<double>(k) * ts;
            x[k] = std::cos(t.phase[k]);
        }
        return {"tone", Signal(std::move(x), ts), std::move(t)};
    }
    throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

std::vector<std::string> fixture_names() { return {"ex1", "ex2", "tone"}; }

const std::vector<double>& table1_snrs() {
    static const std::vector<double> v{25.55, 13.62, 9.19, 4.11, -1.45, -6.36, -10.86};
    return v;
}

const std::vector<double>& table2_snrs() {
    static const std::vector<double> v{6.0, 3.6, 1.6, -1.3, -3.4, -6.6};
    return v;
}

std::vector<std::size_t> truth_crossings(std::span<const double> phase) {
    std::vector<std::size_t> z;
    if (phase.size() < 2) return z;
    // crossing levels pi/2 + k pi, k counted from the start of the record
    auto level_index = [](double p) { return std::floor((p - pi / 2) / pi); };
    for (std::size_t n = 0; n + 1 < phase.size(); ++n) {
        const double a = phase[n], b = phase[n + 1];
        const double ka = level_index(a), kb = level_index(b);
        if (kb == ka) continue;
        // one level per step is enough for the sampling rates used here
        const double level = pi / 2 + pi * std::max(ka, kb);
        const double frac = (level - a) / (b - a);
        const std::size_t idx = frac < 0.5 ? n : n + 1;
        if (z.empty() || idx > z.back()) z.push_back(idx);
    }
    return z;
}

double phase_error(std::span<const double> est, std::span<const double> truth, std::size_t first, std::size_t last) {
    if (est.size() != truth.size()) throw std::invalid_argument("length mismatch");
    if (first > last || last >= truth.size()) throw std::invalid_argument("bad error range");
    double mean_diff = 0.0;
    for (std::size_t k = first; k <= last; ++k) mean_diff += truth[k] - est[k];
    mean_diff /= static_cast<double>(last - first + 1);
    const double shift = 2 * pi * std::round(mean_diff / (2 * pi));
    std::vector<double> e, t;
    for (std::size_t k = first; k <= last; ++k) {
        e.push_back(est[k] + shift);
        t.push_back(truth[k]);
    }
    return relative_error(e, t);
}

SweepReport snr_sweep(const Fixture& fx, const SweepOptions& opt) {
    if (opt.seeds < 1) throw std::invalid_argument("seeds must be >= 1");
    if (opt.snr_targets.empty()) throw std::invalid_argument("no SNR targets");
    const auto truth = fx.truth.cosine_phase();
    if (truth.size() != fx.clean.size()) throw std::invalid_argument("truth length differs from signal");
    const auto crossings = truth_crossings(truth);
    if (crossings.size() < 2) throw DataError("ground truth has fewer than two crossings");
    const std::size_t first = crossings.front(), last = crossings.back();

    auto targets = opt.snr_targets;
    std::sort(targets.begin(), targets.end(), std::greater<>());
    const std::size_t rows = targets.size(), seeds = static_cast<std::size_t>(opt.seeds);
    const double clean_norm = l2_norm(fx.clean.samples());

    std::vector<double> eps(rows * seeds), snr(rows * seeds);
    std::vector<int> failed(rows * seeds, 0);
    auto run = [&](std::size_t task) {
        const std::size_t r = task / seeds, s = task % seeds;
        auto noise = GaussianStream(opt.base_seed + s).draw(fx.clean.size());
        const double gamma = clean_norm / (l2_norm(noise) * std::pow(10.0, targets[r] / 20.0));
        std::vector<double> x(fx.clean.values());
        for (std::size_t k = 0; k < x.size(); ++k) {
            noise[k] *= gamma;
            x[k] += noise[k];
        }
        snr[task] = snr_db(fx.clean.samples(), noise);
        try {
            const auto phase = estimate_phase(fx.clean.with_samples(std::move(x)), opt.method,
                                              opt.ground_truth_crossings ? &crossings : nullptr);
            eps[task] = phase_error(phase, truth, first, last);
        } catch (const std::exception&) {
            eps[task] = inf;
            failed[task] = 1;
        }
    };

    const std::size_t total = rows * seeds;
    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    if (threads <= 1) {
        for (std::size_t t = 0; t < total; ++t) run(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t t; (t = next.fetch_add(1)) < total;) run(t);
            });
    }

    SweepReport rep{method_name(opt.method), fx.name, {}};
    for (std::size_t r = 0; r < rows; ++r) {
        SweepRow row;
        row.snr_db = targets[r];
        row.seeds = opt.seeds;
        row.epsilons.assign(eps.begin() + static_cast<std::ptrdiff_t>(r * seeds),
                            eps.begin() + static_cast<std::ptrdiff_t>((r + 1) * seeds));
        row.epsilon_median = median(row.epsilons);
        row.epsilon_iqr = iqr(row.epsilons);
        row.measured_snr_min = *std::min_element(snr.begin() + static_cast<std::ptrdiff_t>(r * seeds),
                                                 snr.begin() + static_cast<std::ptrdiff_t>((r + 1) * seeds));
        row.measured_snr_max = *std::max_element(snr.begin() + static_cast<std::ptrdiff_t>(r * seeds),
                                                 snr.begin() + static_cast<std::ptrdiff_t>((r + 1) * seeds));
        for (std::size_t s = 0; s < seeds; ++s) row.failures += failed[r * seeds + s];
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

SweepReport snr_sweep(std::string_view fixture, const SweepOptions& options) {
    return snr_sweep(make_fixture(fixture), options);
}

std::vector<MethodOutcome> compare_methods(const Signal& signal, const synth::GroundTruth& truth) {
    const auto cp = truth.cosine_phase();
    if (cp.size() != signal.size()) throw std::invalid_argument("truth length differs from signal");
    const auto z = truth_crossings(cp);
    if (z.size() < 2) throw DataError("ground truth has fewer than two crossings");
    std::vector<MethodOutcome> out;
    for (auto m : {Method::jade, Method::ht, Method::nht, Method::dq}) {
        MethodOutcome o;
        o.method = method_name(m);
        try {
            o.phase = estimate_phase(signal, m, nullptr);
            o.epsilon = phase_error(o.phase, cp, z.front(), z.back());
        } catch (const std::exception& e) {
            o.error = e.what();
        }
        out.push_back(std::move(o));
    }
    return out;
}

std::pair<std::size_t, std::size_t> interior(std::size_t n) { return {n / 10, n - n / 10}; }

PipelineResult pipeline(const Signal& signal, const fif::Config& config, std::vector<std::size_t> selection) {
    auto dec = fif::decompose(signal, config);
    if (selection.empty())
        for (std::size_t i = 0; i < dec.imfs.size(); ++i) selection.push_back(i);
    for (auto i : selection)
        if (i >= dec.imfs.size())
            throw DataError("IMF " + std::to_string(i + 1) + " requested but only " + std::to_string(dec.imfs.size()) +
                            " extracted");

    PipelineResult res{std::move(dec), selection, {}, {}, {}, signal, 0.0, 0.0};
    std::vector<double> comp(signal.size(), 0.0);
    for (auto i : selection) {
        const auto& imf = res.decomposition.imfs[i];
        auto est = estimate(imf);
        auto rec = reconstruct(est);
        std::vector<double> a, b;
        for (std::size_t k = est.phase.first; k <= est.phase.last; ++k) {
            a.push_back(rec[k]);
            b.push_back(imf[k]);
        }
        res.imf_errors.push_back(relative_error(a, b));
        for (std::size_t k = 0; k < comp.size(); ++k) comp[k] += rec[k];
        res.estimates.push_back(std::move(est));
        res.reconstructions.push_back(std::move(rec));
    }
    res.composite = signal.with_samples(comp);
    const auto [lo, hi] = interior(signal.size());
    const auto x = signal.samples().subspan(lo, hi - lo);
    const auto c = std::span<const double>(comp).subspan(lo, hi - lo);
    res.composite_error = relative_error(c, x);
    res.composite_correlation = correlation(c, x);
    return res;
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

double iqr(std::vector<double> v) {
    const double q3 = quantile(v, 0.75), q1 = quantile(v, 0.25);
    if (std::isinf(q3)) return inf;
    return q3 - q1;
}

std::string format_table(const SweepReport& r) {
    std::ostringstream os;
    os << "# method " << r.method << ", fixture " << r.fixture << '\n';
    os << std::setw(10) << "snr_db" << std::setw(16) << "epsilon_median" << std::setw(14) << "epsilon_iqr"
       << std::setw(7) << "seeds" << std::setw(10) << "failures" << '\n';
    for (const auto& row : r.rows) {
        os << std::fixed << std::setprecision(2) << std::setw(10) << row.snr_db;
        os << std::scientific << std::setprecision(3) << std::setw(16) << row.epsilon_median << std::setw(14)
           << row.epsilon_iqr;
        os << std::defaultfloat << std::setw(7) << row.seeds << std::setw(10) << row.failures << '\n';
    }
    return os.str();
}

}  // namespace jade::bench
