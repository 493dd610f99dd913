#include "jade/core.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace jade {

Signal::Signal(std::vector<double> samples, double sample_period, double start_time)
    : samples_(std::move(samples)), sample_period_(sample_period), start_time_(start_time) {
    if (samples_.empty())
        throw std::invalid_argument("signal has no samples");
    if (!(sample_period_ > 0.0) || !std::isfinite(sample_period_))
        throw std::invalid_argument("sample period must be positive");
    if (!std::isfinite(start_time_))
        throw std::invalid_argument("start time must be finite");
    for (std::size_t i = 0; i < samples_.size(); ++i)
        if (!std::isfinite(samples_[i]))
            throw DataError("non-finite sample at index " + std::to_string(i));
}

Signal Signal::with_samples(std::vector<double> samples) const {
    if (samples.size() != samples_.size())
        throw std::invalid_argument("length mismatch");
    return Signal(std::move(samples), sample_period_, start_time_);
}

double GaussianStream::uniform() {
    // 53 high bits -> [0, 1), shifted to (0, 1] so log() is finite
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

std::vector<double> GaussianStream::draw(std::size_t n) {
    std::vector<double> out(n);
    for (auto& v : out) v = next();
    return out;
}

Extrema local_extrema(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 3) throw std::invalid_argument("insufficient samples");
    Extrema e;
    std::size_t i = 1;
    while (i + 1 < n) {
        if (x[i] == x[i - 1]) {
            ++i;
            continue;
        }
        const bool rising = x[i] > x[i - 1];
        std::size_t j = i;
        while (j + 1 < n && x[j + 1] == x[i]) ++j;
        if (j + 1 < n) {
            const std::size_t mid = (i + j) / 2;
            if (rising && x[j + 1] < x[i]) e.maxima.push_back(mid);
            if (!rising && x[j + 1] > x[i]) e.minima.push_back(mid);
        }
        i = j + 1;
    }
    return e;
}

Extrema local_extrema(const Signal& s) { return local_extrema(s.samples()); }

std::vector<double> moving_average(std::span<const double> x, std::size_t window) {
    if (window == 0 || window % 2 == 0) throw std::invalid_argument("window must be odd");
    if (window > x.size()) throw std::invalid_argument("window longer than signal");
    const std::size_t n = x.size();
    const std::size_t h = window / 2;
    std::vector<double> csum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) csum[i + 1] = csum[i] + x[i];
    std::vector<double> out(n);
    if (window == 1) {
        out.assign(x.begin(), x.end());
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= h ? i - h : 0;
        const std::size_t hi = std::min(n, i + h + 1);
        out[i] = (csum[hi] - csum[lo]) / static_cast<double>(hi - lo);
    }
    return out;
}

Signal moving_average(const Signal& s, std::size_t window) {
    return s.with_samples(moving_average(s.samples(), window));
}

double l2_norm(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc);
}

double snr_db(std::span<const double> signal, std::span<const double> noise) {
    if (signal.size() != noise.size()) throw std::invalid_argument("length mismatch");
    const double nn = l2_norm(noise);
    if (nn == 0.0) throw std::invalid_argument("noise has zero norm");
    return 20.0 * std::log10(l2_norm(signal) / nn);
}

double snr_db(const Signal& signal, const Signal& noise) {
    return snr_db(signal.samples(), noise.samples());
}

Signal add_noise(const Signal& s, const NoiseSpec& spec) {
    if (!std::isfinite(spec.sigma_scale) || spec.sigma_scale < 0.0)
        throw std::invalid_argument("sigma_scale must be finite and >= 0");
    std::vector<double> out(s.values());
    if (spec.sigma_scale == 0.0) return s.with_samples(std::move(out));
    GaussianStream g(spec.seed);
    for (auto& v : out) v += spec.sigma_scale * g.next();
    return s.with_samples(std::move(out));
}

double correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("length mismatch");
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace jade
