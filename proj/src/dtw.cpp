#include "jade/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jade::dtw {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();

// Accumulated costs that differ only by round-off count as tied, so the
// step priority decides and the path does not depend on summation order.
bool no_worse(double a, double b) { return a <= b + 1e-12 * std::abs(b); }
}

CostMatrix::CostMatrix(std::size_t n, std::size_t m) : n_(n), m_(m), v_((n + 1) * (m + 1), inf) {
    v_[0] = 0.0;
}

CostMatrix accumulate(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("dtw: empty input");
    const std::size_t n = x.size(), m = y.size();
    CostMatrix d(n, m);
    for (std::size_t i = 1; i <= n; ++i) {
        const double xi = x[i - 1];
        for (std::size_t j = 1; j <= m; ++j) {
            const double best = std::min({d(i - 1, j - 1), d(i - 1, j), d(i, j - 1)});
            d(i, j) = std::abs(xi - y[j - 1]) + best;
        }
    }
    return d;
}

double distance(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("dtw: empty input");
    const std::size_t m = y.size();
    std::vector<double> prev(m + 1, inf), cur(m + 1, inf);
    prev[0] = 0.0;
    for (double xi : x) {
        cur[0] = inf;
        for (std::size_t j = 1; j <= m; ++j) {
            const double best = std::min({prev[j - 1], prev[j], cur[j - 1]});
            cur[j] = std::abs(xi - y[j - 1]) + best;
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

WarpingPath optimal_path(const CostMatrix& d) {
    WarpingPath p;
    p.cost = d.total();
    std::size_t i = d.n(), j = d.m();
    p.pairs.reserve(i + j);
    while (true) {
        p.pairs.emplace_back(i - 1, j - 1);
        if (i == 1 && j == 1) break;
        const double diag = d(i - 1, j - 1), vert = d(i - 1, j), horiz = d(i, j - 1);
        if (no_worse(diag, vert) && no_worse(diag, horiz)) {
            --i;
            --j;
        } else if (no_worse(vert, horiz)) {
            --i;
        } else {
            --j;
        }
    }
    std::reverse(p.pairs.begin(), p.pairs.end());
    return p;
}

std::vector<double> invert_path(const WarpingPath& path, std::size_t target_length) {
    std::vector<double> sum(target_length, 0.0), cnt(target_length, 0.0);
    for (auto [i, j] : path.pairs) {
        if (i >= target_length) throw std::invalid_argument("path index beyond target length");
        sum[i] += static_cast<double>(j);
        cnt[i] += 1.0;
    }
    for (std::size_t i = 0; i < target_length; ++i) {
        if (cnt[i] == 0.0) throw std::invalid_argument("path does not cover every query index");
        sum[i] /= cnt[i];
    }
    return sum;
}

}  // namespace jade::dtw
