#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace jade::detail {

namespace {

// fftw's planner is not reentrant; execution is.
std::mutex planner_mutex;

struct Buffer {
    explicit Buffer(std::size_t bytes) : p(fftw_malloc(std::max<std::size_t>(bytes, 16))) {
        if (!p) throw std::bad_alloc();
    }
    ~Buffer() { fftw_free(p); }
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;
    void* p;
};

class Plan {
public:
    template <class F>
    explicit Plan(F make) {
        std::lock_guard lock(planner_mutex);
        plan_ = make();
        if (!plan_) throw std::runtime_error("fftw planning failed");
    }
    ~Plan() {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(plan_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    void run() const { fftw_execute(plan_); }

private:
    fftw_plan plan_ = nullptr;
};

}  // namespace

std::vector<cplx> rfft(std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    const std::size_t nh = x.size() / 2 + 1;
    Buffer in(sizeof(double) * x.size());
    Buffer out(sizeof(fftw_complex) * nh);
    auto* pin = static_cast<double*>(in.p);
    auto* pout = static_cast<fftw_complex*>(out.p);
    Plan plan([&] { return fftw_plan_dft_r2c_1d(n, pin, pout, FFTW_ESTIMATE); });
    std::copy(x.begin(), x.end(), pin);
    plan.run();
    std::vector<cplx> res(nh);
    const auto* c = reinterpret_cast<const cplx*>(pout);
    std::copy(c, c + nh, res.begin());
    return res;
}

std::vector<double> irfft(std::span<const cplx> half, std::size_t n) {
    if (half.size() != n / 2 + 1) throw std::invalid_argument("irfft: bin count mismatch");
    Buffer in(sizeof(fftw_complex) * half.size());
    Buffer out(sizeof(double) * n);
    auto* pin = static_cast<fftw_complex*>(in.p);
    auto* pout = static_cast<double*>(out.p);
    // c2r destroys its input, so plan first, fill afterwards
    Plan plan([&] { return fftw_plan_dft_c2r_1d(static_cast<int>(n), pin, pout, FFTW_ESTIMATE); });
    std::memcpy(pin, half.data(), sizeof(fftw_complex) * half.size());
    plan.run();
    std::vector<double> res(pout, pout + n);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : res) v *= scale;
    return res;
}

static std::vector<cplx> c2c(std::span<const cplx> x, int sign) {
    const std::size_t n = x.size();
    Buffer in(sizeof(fftw_complex) * n);
    Buffer out(sizeof(fftw_complex) * n);
    auto* pin = static_cast<fftw_complex*>(in.p);
    auto* pout = static_cast<fftw_complex*>(out.p);
    Plan plan([&] { return fftw_plan_dft_1d(static_cast<int>(n), pin, pout, sign, FFTW_ESTIMATE); });
    std::memcpy(pin, x.data(), sizeof(fftw_complex) * n);
    plan.run();
    std::vector<cplx> res(n);
    const auto* c = reinterpret_cast<const cplx*>(pout);
    std::copy(c, c + n, res.begin());
    return res;
}

std::vector<cplx> fft(std::span<const cplx> x) { return c2c(x, FFTW_FORWARD); }

std::vector<cplx> ifft(std::span<const cplx> x) {
    auto res = c2c(x, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(x.size());
    for (auto& v : res) v *= scale;
    return res;
}

std::size_t fft_size(std::size_t n) {
    for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2, 3, 5, 7})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

}  // namespace jade::detail
