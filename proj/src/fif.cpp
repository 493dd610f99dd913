#include "jade/fif.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"

namespace jade::fif {

double Filter::at(int k) const {
    if (k < -half_length || k > half_length) return 0.0;
    return taps[static_cast<std::size_t>(k + half_length)];
}

void Config::validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    if (max_inner_iterations < 1) throw std::invalid_argument("max_inner_iterations must be >= 1");
    if (max_imfs < 1) throw std::invalid_argument("max_imfs must be >= 1");
    if (!(xi > 0.0)) throw std::invalid_argument("xi must be > 0");
    if (extension_factor < 0) throw std::invalid_argument("extension_factor must be >= 0");
    if (!(imf_energy_floor >= 0.0)) throw std::invalid_argument("imf_energy_floor must be >= 0");
}

Filter build_filter(int half_length) {
    if (half_length < 1) throw std::invalid_argument("half_length must be >= 1");
    const int L = half_length;
    const int h = (L + 1) / 2;
    std::vector<double> base(2 * h + 1);
    double s = 0.0;
    for (int k = -h; k <= h; ++k) {
        base[k + h] = 0.5 * (1.0 + std::cos(std::numbers::pi * k / h));
        s += base[k + h];
    }
    for (auto& v : base) v /= s;

    // base(+-h) = 0, so the self-convolution fits in [-L, L]
    Filter f;
    f.half_length = L;
    f.taps.assign(2 * L + 1, 0.0);
    const int reach = std::min(2 * h, L);
    for (int k = 0; k <= reach; ++k) {
        double acc = 0.0;
        for (int j = -h; j <= h; ++j) {
            const int i = k - j;
            if (i >= -h && i <= h) acc += base[j + h] * base[i + h];
        }
        f.taps[L + k] = acc;
        f.taps[L - k] = acc;
    }
    double total = 0.0;
    for (double v : f.taps) total += v;
    for (auto& v : f.taps) v /= total;
    return f;
}

int filter_length(std::span<const double> x, double xi) {
    const auto k = local_extrema(x).count();
    if (k < 2) throw DataError("signal is a trend");
    const double L = std::round(xi * static_cast<double>(x.size()) / static_cast<double>(k));
    return std::max(1, static_cast<int>(L));
}

int filter_length(const Signal& s, double xi) { return filter_length(s.samples(), xi); }

namespace {

std::size_t fold(long long i, long long a, long long b) {
    if (b <= a) return static_cast<std::size_t>(a);
    const long long p = 2 * (b - a);
    long long t = (i - a) % p;
    if (t < 0) t += p;
    return static_cast<std::size_t>(a + (t <= b - a ? t : p - t));
}

}  // namespace

Extension extend(std::span<const double> x, int half_length, int extension_factor) {
    const std::size_t n = x.size();
    const std::size_t e = static_cast<std::size_t>(half_length) * static_cast<std::size_t>(extension_factor);
    const std::size_t total = detail::fft_size(n + 2 * e);

    long long a = 0, b = static_cast<long long>(n) - 1;
    if (n >= 3) {
        const auto ex = local_extrema(x);
        std::vector<std::size_t> all(ex.maxima);
        all.insert(all.end(), ex.minima.begin(), ex.minima.end());
        std::sort(all.begin(), all.end());
        if (all.size() >= 2) {
            const double margin = static_cast<double>(n) / static_cast<double>(all.size()) / 2.0;
            std::vector<std::size_t> inner;
            for (auto i : all)
                if (static_cast<double>(i) >= margin && static_cast<double>(i) <= static_cast<double>(n - 1) - margin)
                    inner.push_back(i);
            if (inner.size() >= 2) all.swap(inner);
            a = static_cast<long long>(all.front());
            b = static_cast<long long>(all.back());
        }
    }

    Extension out;
    out.offset = e;
    out.samples.resize(total);
    for (std::size_t q = 0; q < total; ++q) {
        const long long i = static_cast<long long>(q) - static_cast<long long>(e);
        out.samples[q] = (i >= 0 && i < static_cast<long long>(n)) ? x[static_cast<std::size_t>(i)]
                                                                   : x[fold(i, a, b)];
    }
    return out;
}

SiftResult sift(std::span<const double> x, const Filter& filter, const Config& config) {
    config.validate();
    const auto ext = extend(x, filter.half_length, config.extension_factor);
    const std::size_t m = ext.samples.size();

    std::vector<double> kernel(m, 0.0);
    for (int k = -filter.half_length; k <= filter.half_length; ++k) {
        long long idx = k % static_cast<long long>(m);
        if (idx < 0) idx += static_cast<long long>(m);
        kernel[static_cast<std::size_t>(idx)] += filter.at(k);
    }
    const auto what = detail::rfft(kernel);
    auto spec = detail::rfft(ext.samples);
    const std::size_t nb = spec.size();

    // Parseval weights for the half spectrum
    std::vector<double> weight(nb, 2.0);
    weight[0] = 1.0;
    if (m % 2 == 0) weight[nb - 1] = 1.0;

    SiftResult res;
    for (int it = 1; it <= config.max_inner_iterations; ++it) {
        double dn = 0.0, sn = 0.0;
        for (std::size_t k = 0; k < nb; ++k) {
            const auto d = spec[k] * what[k].real();
            dn += weight[k] * std::norm(d);
            sn += weight[k] * std::norm(spec[k]);
            spec[k] -= d;
        }
        res.iterations = it;
        if (sn == 0.0 || std::sqrt(dn / sn) <= config.delta) break;
    }
    const auto y = detail::irfft(spec, m);
    res.imf.assign(y.begin() + static_cast<std::ptrdiff_t>(ext.offset),
                   y.begin() + static_cast<std::ptrdiff_t>(ext.offset + x.size()));
    return res;
}

Decomposition decompose(const Signal& s, const Config& config) {
    config.validate();
    if (s.size() < 16) throw std::invalid_argument("decomposition needs at least 16 samples");
    const double input_norm = l2_norm(s.samples());
    std::vector<double> r(s.values());
    Decomposition d{{}, s, config, {}, {}};
    while (static_cast<int>(d.imfs.size()) < config.max_imfs) {
        if (local_extrema(r).count() < 2) break;
        const int L = filter_length(r, config.xi);
        auto res = sift(r, build_filter(L), config);
        if (l2_norm(res.imf) < config.imf_energy_floor * input_norm) break;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= res.imf[i];
        d.imfs.push_back(s.with_samples(std::move(res.imf)));
        d.filter_lengths.push_back(L);
        d.iterations.push_back(res.iterations);
    }
    d.remainder = s.with_samples(std::move(r));
    return d;
}

}  // namespace jade::fif
