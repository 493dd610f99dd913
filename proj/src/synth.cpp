#include "jade/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jade::synth {

namespace {

constexpr double pi = std::numbers::pi;

void check_length(std::size_t n) {
    if (n < 16) throw std::invalid_argument("generator needs at least 16 samples");
}

void check_step(double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("step must be positive");
}

}  // namespace

std::vector<double> GroundTruth::cosine_phase() const {
    std::vector<double> out(phase);
    for (auto& v : out) v -= quadrature_offset;
    return out;
}

Generated quadratic_chirp(std::size_t n_samples, double alpha, double beta, const NoiseSpec& noise, double step) {
    check_length(n_samples);
    check_step(step);
    GroundTruth t;
    t.phase.resize(n_samples);
    t.frequency.resize(n_samples);
    t.amplitude.assign(n_samples, 1.0);
    std::vector<double> x(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double n = static_cast<double>(k) * step;
        t.phase[k] = alpha * n * n + beta * n;
        t.frequency[k] = (2 * alpha * n + beta) / (2 * pi);
        x[k] = std::cos(t.phase[k]);
    }
    return {add_noise(Signal(std::move(x), step), noise), std::move(t)};
}

Generated am_fm_signal(std::size_t n_samples, double a1, double w1, double a2, double w2, const NoiseSpec& noise,
                       double step) {
    check_length(n_samples);
    check_step(step);
    GroundTruth t;
    t.phase.resize(n_samples);
    t.frequency.resize(n_samples);
    t.amplitude.resize(n_samples);
    std::vector<double> x(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double n = static_cast<double>(k) * step;
        t.amplitude[k] = a1 * std::cos(w1 * n);
        t.phase[k] = n + a2 * std::cos(w2 * n);
        t.frequency[k] = (1.0 - a2 * w2 * std::sin(w2 * n)) / (2 * pi);
        x[k] = t.amplitude[k] * std::cos(t.phase[k]);
    }
    return {add_noise(Signal(std::move(x), step), noise), std::move(t)};
}

TwoComponent two_component(std::size_t n_samples) {
    check_length(n_samples);
    const double ts = 1.0 / static_cast<double>(n_samples);
    GroundTruth t1, t2;
    t1.quadrature_offset = t2.quadrature_offset = pi / 2;
    std::vector<double> x(n_samples), y(n_samples), s(n_samples);
    for (auto* t : {&t1, &t2}) {
        t->phase.resize(n_samples);
        t->frequency.resize(n_samples);
    }
    t1.amplitude.assign(n_samples, 0.2);
    t2.amplitude.assign(n_samples, 2.0);
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double n = static_cast<double>(k) * ts;
        t1.phase[k] = 2 * pi * (40 * n * n * n - 60 * n * n + 47 * n);
        t1.frequency[k] = 120 * n * n - 120 * n + 47;
        t2.phase[k] = 2 * pi * (0.1 * n * n + n);
        t2.frequency[k] = 0.2 * n + 1;
        x[k] = 0.2 * std::sin(t1.phase[k]);
        y[k] = 2.0 * std::sin(t2.phase[k]);
        s[k] = x[k] + y[k];
    }
    return {Signal(std::move(s), ts), Signal(std::move(x), ts), Signal(std::move(y), ts), std::move(t1),
            std::move(t2)};
}

DuffingSolution duffing_integrate(const DuffingParams& p) {
    if (!(p.dt > 0.0) || !(p.t_end > 0.0)) throw std::invalid_argument("dt and t_end must be positive");
    const auto steps = static_cast<std::size_t>(std::llround(p.t_end / p.dt));
    if (steps < 1) throw std::invalid_argument("t_end shorter than one step");
    auto accel = [&](double t, double x) {
        return p.gamma * std::cos(p.omega * t) - p.alpha * x - p.beta * x * x * x;
    };
    std::vector<double> xs(steps + 1), vs(steps + 1);
    double x = p.x0, v = p.v0;
    xs[0] = x;
    vs[0] = v;
    const double h = p.dt;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * h;
        const double k1x = v, k1v = accel(t, x);
        const double k2x = v + 0.5 * h * k1v, k2v = accel(t + 0.5 * h, x + 0.5 * h * k1x);
        const double k3x = v + 0.5 * h * k2v, k3v = accel(t + 0.5 * h, x + 0.5 * h * k2x);
        const double k4x = v + h * k3v, k4v = accel(t + h, x + h * k3x);
        x += h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
        v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        xs[i + 1] = x;
        vs[i + 1] = v;
    }
    return {Signal(std::move(xs), h), Signal(std::move(vs), h)};
}

DuffingSolution duffing_solve(const DuffingParams& p) {
    auto coarse = duffing_integrate(p);
    DuffingParams half = p;
    half.dt = p.dt / 2;
    const auto fine = duffing_integrate(half);
    const double xc = coarse.x.values().back(), vc = coarse.xdot.values().back();
    const double xf = fine.x.values().back(), vf = fine.xdot.values().back();
    const double diff = std::hypot(xc - xf, vc - vf);
    const double scale = std::max(std::hypot(xf, vf), 1e-12);
    if (diff / scale >= 1e-4) throw DataError("dt too coarse");
    return coarse;
}

}  // namespace jade::synth
