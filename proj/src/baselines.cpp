#include "jade/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"
#include "jade/spline.hpp"

namespace jade::baselines {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double unit_tolerance = 1e-6;
}  // namespace

AnalyticSignal analytic_signal(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 4) throw std::invalid_argument("analytic signal needs at least 4 samples");
    std::vector<detail::cplx> z(x.begin(), x.end());
    auto spec = detail::fft(z);
    // keep DC (and Nyquist for even n), double positive bins, zero negative bins
    const std::size_t half = (n + 1) / 2;
    for (std::size_t k = 1; k < half; ++k) spec[k] *= 2.0;
    for (std::size_t k = n / 2 + 1; k < n; ++k) spec[k] = 0.0;
    const auto zt = detail::ifft(spec);
    AnalyticSignal a;
    a.real_part.assign(x.begin(), x.end());
    a.imag_part.resize(n);
    for (std::size_t k = 0; k < n; ++k) a.imag_part[k] = zt[k].imag();
    return a;
}

AnalyticSignal analytic_signal(const Signal& s) { return analytic_signal(s.samples()); }

std::vector<double> unwrap(std::span<const double> phase) {
    std::vector<double> out(phase.begin(), phase.end());
    double shift = 0.0;
    for (std::size_t k = 1; k < phase.size(); ++k) {
        const double d = phase[k] - phase[k - 1];
        if (d > pi)
            shift -= 2 * pi * std::ceil((d - pi) / (2 * pi));
        else if (d < -pi)
            shift += 2 * pi * std::ceil((-d - pi) / (2 * pi));
        out[k] = phase[k] + shift;
    }
    return out;
}

std::vector<double> phase_to_frequency(std::span<const double> phase, double sample_period) {
    const std::size_t n = phase.size();
    std::vector<double> f(n, 0.0);
    if (n < 2) return f;
    const double scale = 1.0 / (2 * pi * sample_period);
    f[0] = (phase[1] - phase[0]) * scale;
    f[n - 1] = (phase[n - 1] - phase[n - 2]) * scale;
    for (std::size_t k = 1; k + 1 < n; ++k) f[k] = 0.5 * (phase[k + 1] - phase[k - 1]) * scale;
    return f;
}

static PhaseEstimate ht_of(std::span<const double> x, double ts) {
    const auto a = analytic_signal(x);
    std::vector<double> wrapped(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) wrapped[k] = std::atan2(a.imag_part[k], a.real_part[k]);
    PhaseEstimate e;
    e.phase = unwrap(wrapped);
    e.frequency = phase_to_frequency(e.phase, ts);
    return e;
}

PhaseEstimate ht_phase_if(const Signal& s) { return ht_of(s.samples(), s.sample_period()); }

NormalizationTrace normalize_am(std::span<const double> x, int max_iterations) {
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    const std::size_t n = x.size();
    if (n < 3) throw std::invalid_argument("normalization needs at least 3 samples");
    NormalizationTrace t;
    t.normalized.assign(x.begin(), x.end());
    std::vector<double> mag(n);
    for (int it = 1; it <= max_iterations; ++it) {
        for (std::size_t k = 0; k < n; ++k) mag[k] = std::abs(t.normalized[k]);
        // boundary samples above their only neighbour count as maxima,
        // otherwise the constant extension can sit below |y| at the edges
        std::vector<std::size_t> peaks;
        if (mag[0] > mag[1]) peaks.push_back(0);
        for (auto p : local_extrema(mag).maxima) peaks.push_back(p);
        if (mag[n - 1] > mag[n - 2]) peaks.push_back(n - 1);
        if (peaks.size() < 2) throw DataError("envelope needs at least 2 maxima of |x|");
        std::vector<double> kx, ky;
        for (auto p : peaks) {
            kx.push_back(static_cast<double>(p));
            ky.push_back(mag[p]);
        }
        const auto env = spline::fit(kx, ky);
        std::vector<double> e(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double pos = std::clamp(static_cast<double>(k), kx.front(), kx.back());
            e[k] = env(pos);
            if (!(e[k] > 0.0)) throw DataError("degenerate envelope");
        }
        double peak = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            t.normalized[k] /= e[k];
            peak = std::max(peak, std::abs(t.normalized[k]));
        }
        t.envelopes.push_back(std::move(e));
        t.iterations = it;
        if (peak <= 1.0 + unit_tolerance) break;
    }
    return t;
}

NormalizationTrace normalize_am(const Signal& s, int max_iterations) {
    return normalize_am(s.samples(), max_iterations);
}

PhaseEstimate nht_phase_if(const Signal& s) {
    const auto t = normalize_am(s);
    return ht_of(t.normalized, s.sample_period());
}

std::vector<double> dq_phase(std::span<const double> y) {
    const std::size_t n = y.size();
    if (n < 2) throw std::invalid_argument("quadrature needs at least 2 samples");
    std::vector<double> theta(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(y[k]) > 1.0 + unit_tolerance) throw DataError("normalization failed");
        const double v = std::clamp(y[k], -1.0, 1.0);
        const double dy = k + 1 < n ? y[k + 1] - y[k] : y[k] - y[k - 1];
        // y = cos(theta): falling half in (0, pi), rising half in (pi, 2 pi)
        theta[k] = dy <= 0.0 ? pi / 2 - std::asin(v) : 3 * pi / 2 + std::asin(v);
    }
    return unwrap(theta);
}

PhaseEstimate dq_phase_if(const Signal& s) {
    const auto t = normalize_am(s);
    PhaseEstimate e;
    e.phase = dq_phase(t.normalized);
    e.frequency = phase_to_frequency(e.phase, s.sample_period());
    return e;
}

}  // namespace jade::baselines
