#include "jade/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "jade/dtw.hpp"

namespace jade {

namespace {

constexpr double pi = std::numbers::pi;

double energy(std::span<const double> x) {
    double e = 0.0;
    for (double v : x) e += v * v;
    return e;
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace

std::size_t smoothing_window(std::span<const double> x) {
    if (x.size() < 8) throw std::invalid_argument("smoothing window needs at least 8 samples");
    std::size_t cap = x.size() / 4;
    if (cap % 2 == 0) --cap;
    cap = std::max<std::size_t>(cap, 1);
    const double target = 0.75 * energy(x);
    for (std::size_t w = 1; w < cap; w += 2)
        if (energy(moving_average(x, w)) <= target) return w;
    return cap;
}

std::size_t smoothing_window(const Signal& s) { return smoothing_window(s.samples()); }

std::vector<std::size_t> zero_crossings(std::span<const double> x) {
    const auto xs = moving_average(x, smoothing_window(x));
    // smoothed values at round-off level count as exact zeros
    double peak = 0.0;
    for (double v : xs) peak = std::max(peak, std::abs(v));
    const double zero_tol = 1e-12 * peak;
    std::vector<std::size_t> z;
    int prev = 0;
    std::optional<std::size_t> zero_run;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const int s = std::abs(xs[i]) <= zero_tol ? 0 : sign_of(xs[i]);
        if (s == 0) {
            if (prev != 0 && !zero_run) zero_run = i;
            continue;
        }
        if (prev != 0 && s != prev) z.push_back(zero_run.value_or(i));
        prev = s;
        zero_run.reset();
    }
    if (z.empty()) throw DataError("no oscillation detected");
    return z;
}

std::vector<std::size_t> zero_crossings(const Signal& s) { return zero_crossings(s.samples()); }

std::vector<std::size_t> monotonic_boundaries(std::span<const double> x) {
    const auto xs = moving_average(x, smoothing_window(x));
    const auto ex = local_extrema(xs);
    std::vector<std::size_t> b(ex.maxima);
    b.insert(b.end(), ex.minima.begin(), ex.minima.end());
    std::sort(b.begin(), b.end());
    if (b.size() < 2) throw DataError("no oscillation detected");
    return b;
}

std::vector<std::size_t> merge_short_sections(std::vector<std::size_t> b, std::size_t min_length) {
    while (b.size() >= 2) {
        std::size_t k = 0, shortest = b[1] - b[0];
        for (std::size_t i = 1; i + 1 < b.size(); ++i)
            if (b[i + 1] - b[i] < shortest) {
                shortest = b[i + 1] - b[i];
                k = i;
            }
        if (shortest >= min_length) break;
        const auto at = b.begin() + static_cast<std::ptrdiff_t>(k);
        if (k == 0)
            b.erase(b.begin());
        else if (k + 2 == b.size())
            b.pop_back();
        else
            b.erase(at, at + 2);
    }
    return b;
}

SectionSplit split_sections(std::span<const double> x, std::span<const std::size_t> b, Segmentation mode) {
    if (b.size() < 2) throw DataError("need at least two section boundaries");
    const std::size_t n = x.size();
    SectionSplit out;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        const std::size_t a = b[i], e = b[i + 1];
        if (e <= a || e >= n) throw std::invalid_argument("section boundaries must increase and lie inside the signal");
        const std::size_t len = e - a;
        // offset of the oscillation: mean over one period centred on the half-wave
        const std::size_t lo = a >= len / 2 ? a - len / 2 : 0;
        const std::size_t hi = std::min(n, e + len / 2 + 1);
        double mu = 0.0;
        for (std::size_t k = lo; k < hi; ++k) mu += x[k];
        mu /= static_cast<double>(hi - lo);

        std::vector<double> block(x.begin() + static_cast<std::ptrdiff_t>(a),
                                  x.begin() + static_cast<std::ptrdiff_t>(e + 1));
        double sum = 0.0;
        for (auto& v : block) {
            v -= mu;
            sum += v;
        }
        SectionModel m;
        m.start_index = a;
        m.end_index = e;
        m.template_frequency = pi / static_cast<double>(len);
        m.removed_mean = mu;
        if (mode == Segmentation::zero_crossings)
            m.sign = sum >= 0.0 ? 1 : -1;
        else
            m.sign = block.front() >= block.back() ? 1 : -1;
        out.models.push_back(m);
        out.blocks.push_back(std::move(block));
    }
    return out;
}

std::vector<double> section_template(std::size_t length, double frequency, double amplitude, int sign,
                                     Segmentation mode) {
    std::vector<double> t(length);
    const double s = sign * amplitude;
    for (std::size_t k = 0; k < length; ++k) {
        const double arg = frequency * static_cast<double>(k);
        t[k] = s * (mode == Segmentation::zero_crossings ? std::sin(arg) : std::cos(arg));
    }
    return t;
}

double fit_template_amplitude(std::span<const double> section, double template_frequency, int sign,
                              Segmentation mode) {
    if (section.empty()) throw std::invalid_argument("empty section");
    double peak = 0.0;
    for (double v : section) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) throw DataError("all-zero section");

    const auto unit = section_template(section.size(), template_frequency, 1.0, sign, mode);
    std::vector<double> scaled(unit.size());
    auto cost = [&](double amp) {
        for (std::size_t k = 0; k < unit.size(); ++k) scaled[k] = amp * unit[k];
        return dtw::distance(section, scaled);
    };

    constexpr int grid_points = 21;
    const double lo0 = 0.25 * peak, hi0 = 1.5 * peak;
    const double step = (hi0 - lo0) / (grid_points - 1);
    double best = 0.0, best_cost = std::numeric_limits<double>::infinity();
    int best_idx = 0;
    for (int g = 0; g < grid_points; ++g) {
        const double amp = lo0 + step * g;
        const double c = cost(amp);
        if (c < best_cost) {
            best_cost = c;
            best = amp;
            best_idx = g;
        }
    }

    // golden-section pass over the neighbouring grid cells
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = lo0 + step * std::max(best_idx - 1, 0);
    double hi = lo0 + step * std::min(best_idx + 1, grid_points - 1);
    double c1 = hi - ratio * (hi - lo), c2 = lo + ratio * (hi - lo);
    double f1 = cost(c1), f2 = cost(c2);
    for (int it = 0; it < 20; ++it) {
        if (f1 <= f2) {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - ratio * (hi - lo);
            f1 = cost(c1);
        } else {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + ratio * (hi - lo);
            f2 = cost(c2);
        }
    }
    if (f1 < best_cost) {
        best_cost = f1;
        best = c1;
    }
    if (f2 < best_cost) {
        best_cost = f2;
        best = c2;
    }
    return best;
}

double fit_template_amplitude(std::span<const double> section, double template_frequency) {
    double sum = 0.0;
    for (double v : section) sum += v;
    return fit_template_amplitude(section, template_frequency, sum >= 0.0 ? 1 : -1,
                                  Segmentation::zero_crossings);
}

std::vector<double> section_phase(std::span<const double> section, const SectionModel& model, Segmentation mode) {
    if (section.size() < 2) throw std::invalid_argument("section needs at least 2 samples");
    const auto tmpl = section_template(section.size(), model.template_frequency, model.template_amplitude,
                                       model.sign, mode);
    const auto path = dtw::optimal_path(dtw::accumulate(section, tmpl));
    auto phase = dtw::invert_path(path, section.size());
    for (auto& v : phase) v *= model.template_frequency;
    phase.front() = 0.0;
    phase.back() = model.template_frequency * static_cast<double>(section.size() - 1);
    return phase;
}

JadeResult estimate(const Signal& s, const JadeOptions& opt) {
    const auto x = s.samples();
    const std::size_t n = x.size();
    const auto mode = opt.segmentation;

    std::vector<std::size_t> b;
    if (opt.crossings) {
        b = *opt.crossings;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i] >= n) throw std::invalid_argument("crossing index outside the signal");
            if (i > 0 && b[i] <= b[i - 1]) throw std::invalid_argument("crossings must be strictly increasing");
        }
    } else {
        b = mode == Segmentation::zero_crossings ? zero_crossings(x) : monotonic_boundaries(x);
    }
    b = merge_short_sections(std::move(b), std::max<std::size_t>(opt.min_section_length, 1));
    if (b.size() < 2) throw DataError("fewer than two usable crossings");

    auto split = split_sections(x, b, mode);

    JadeResult r;
    r.sample_period = s.sample_period();
    r.start_time = s.start_time();
    r.boundaries = b;
    r.phase.sample_period = s.sample_period();
    r.phase.first = b.front();
    r.phase.last = b.back();
    r.phase.raw.assign(n, 0.0);

    double offset;
    if (mode == Segmentation::zero_crossings)
        offset = split.models.front().sign < 0 ? pi / 2 : 3 * pi / 2;
    else
        offset = split.models.front().sign > 0 ? 0.0 : pi;

    for (std::size_t i = 0; i < split.models.size(); ++i) {
        auto& m = split.models[i];
        const auto& block = split.blocks[i];
        m.template_amplitude = fit_template_amplitude(block, m.template_frequency, m.sign, mode);
        const auto ph = section_phase(block, m, mode);
        const double base = offset + pi * static_cast<double>(i);
        for (std::size_t k = 0; k < ph.size(); ++k) r.phase.raw[m.start_index + k] = base + ph[k];
    }
    r.sections = std::move(split.models);

    // spline knots
    if (opt.partition) {
        r.partition = *opt.partition;
        if (r.partition.size() < 2) throw std::invalid_argument("partition needs at least 2 points");
        for (std::size_t i = 0; i < r.partition.size(); ++i) {
            if (r.partition[i] < b.front() || r.partition[i] > b.back())
                throw std::invalid_argument("partition point outside the analysed range");
            if (i > 0 && r.partition[i] <= r.partition[i - 1])
                throw std::invalid_argument("partition must be strictly increasing");
        }
    } else {
        r.partition = b;
    }
    std::vector<double> kx, ky;
    for (auto p : r.partition) {
        kx.push_back(static_cast<double>(p));
        ky.push_back(r.phase.raw[p]);
    }
    r.phase.spline = spline::fit(kx, ky);

    const auto& sp = r.phase.spline;
    const double lo = sp.lower(), hi = sp.upper();
    const double d_lo = sp.derivative(lo), d_hi = sp.derivative(hi);
    const double y_lo = sp(lo), y_hi = sp(hi);
    const double to_hz = 1.0 / (2.0 * pi * s.sample_period());
    r.phase.values.resize(n);
    r.frequency.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k);
        if (t < lo) {
            r.phase.values[k] = y_lo + d_lo * (t - lo);
            r.frequency.values[k] = d_lo * to_hz;
        } else if (t > hi) {
            r.phase.values[k] = y_hi + d_hi * (t - hi);
            r.frequency.values[k] = d_hi * to_hz;
        } else {
            r.phase.values[k] = sp(t);
            r.frequency.values[k] = sp.derivative(t) * to_hz;
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        if (k < r.phase.first || k > r.phase.last) r.phase.raw[k] = r.phase.values[k];

    r.amplitude_function.resize(n);
    r.mean_function.resize(n);
    std::size_t sec = 0;
    for (std::size_t k = 0; k < n; ++k) {
        while (sec + 1 < r.sections.size() && k >= r.sections[sec].end_index) ++sec;
        r.amplitude_function[k] = r.sections[sec].template_amplitude;
        r.mean_function[k] = r.sections[sec].removed_mean;
    }

    for (std::size_t k = r.phase.first; k < r.phase.last; ++k) {
        if (r.phase.values[k + 1] >= r.phase.values[k] - 1e-9) continue;
        bool near_knot = false;
        for (auto p : r.partition)
            if (p + 2 >= k && p <= k + 3) {
                near_knot = true;
                break;
            }
        if (!near_knot) r.monotonicity_violations.push_back(k);
    }
    return r;
}

Signal reconstruct(const JadeResult& r) {
    const std::size_t n = r.phase.values.size();
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k)
        y[k] = r.amplitude_function[k] * std::cos(r.phase.values[k]) + r.mean_function[k];
    return Signal(std::move(y), r.sample_period, r.start_time);
}

double relative_error(std::span<const double> estimate, std::span<const double> truth) {
    if (estimate.size() != truth.size()) throw std::invalid_argument("length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        num += (truth[i] - estimate[i]) * (truth[i] - estimate[i]);
        den += truth[i] * truth[i];
    }
    if (den == 0.0) throw std::invalid_argument("truth has zero norm");
    return std::sqrt(num / den);
}

double relative_error(const PhaseCurve& estimate, std::span<const double> truth) {
    return relative_error(estimate.raw, truth);
}

bool check_separability(std::span<const double> a, std::span<const double> phi, double eps) {
    if (a.size() != phi.size()) throw std::invalid_argument("length mismatch");
    if (a.size() < 3) throw std::invalid_argument("separability check needs at least 3 samples");
    for (std::size_t k = 1; k + 1 < a.size(); ++k) {
        const double da = 0.5 * (a[k + 1] - a[k - 1]);
        const double dphi = 0.5 * (phi[k + 1] - phi[k - 1]);
        const double ddphi = phi[k + 1] - 2.0 * phi[k] + phi[k - 1];
        const double bound = eps * std::abs(dphi);
        if (std::abs(da) > bound || std::abs(ddphi) > bound) return false;
    }
    return true;
}

}  // namespace jade
