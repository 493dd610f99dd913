#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <limits>

#include "jade/dtw.hpp"
#include "support.hpp"

using namespace jade::dtw;
using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

namespace {

// Step codes read backwards from the end: diagonal 0, drop in i 1, drop in j 2.
std::vector<int> backward_steps(const Pairs& p) {
    std::vector<int> s;
    for (std::size_t k = p.size() - 1; k > 0; --k) {
        const bool di = p[k].first != p[k - 1].first, dj = p[k].second != p[k - 1].second;
        s.push_back(di && dj ? 0 : di ? 1 : 2);
    }
    return s;
}

// Enumerates every admissible warping path. Among paths whose cost equals the
// minimum up to round-off, prefers the lexicographically smallest backward step
// sequence (diagonal before vertical before horizontal).
std::pair<double, Pairs> brute_force(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<std::pair<double, Pairs>> all;
    Pairs cur;
    std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double acc) {
        cur.emplace_back(i, j);
        acc = acc + std::abs(x[i] - y[j]);
        if (i == x.size() - 1 && j == y.size() - 1) {
            all.emplace_back(acc, cur);
        } else {
            if (i + 1 < x.size() && j + 1 < y.size()) walk(i + 1, j + 1, acc);
            if (i + 1 < x.size()) walk(i + 1, j, acc);
            if (j + 1 < y.size()) walk(i, j + 1, acc);
        }
        cur.pop_back();
    };
    walk(0, 0, 0.0);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : all) best = std::min(best, a.first);
    const Pairs* pick = nullptr;
    for (const auto& a : all)
        if (a.first <= best + 1e-12 * best && (!pick || backward_steps(a.second) < backward_steps(*pick)))
            pick = &a.second;
    return {best, *pick};
}

}  // namespace

TEST_CASE("identical sequences have zero distance and diagonal path") {
    const std::vector<double> x{0, 1, 2};
    CHECK(distance(x, x) == 0.0);
    const auto p = optimal_path(accumulate(x, x));
    CHECK(p.pairs == Pairs{{0, 0}, {1, 1}, {2, 2}});
    CHECK(p.cost == 0.0);
}

TEST_CASE("hand worked example") {
    const std::vector<double> x{1, 2, 3}, y{1, 3};
    const auto d = accumulate(x, y);
    CHECK(d.total() == doctest::Approx(1.0));
    const auto p = optimal_path(d);
    CHECK(p.pairs.front() == std::pair<std::size_t, std::size_t>{0, 0});
    CHECK(p.pairs.back() == std::pair<std::size_t, std::size_t>{2, 1});
    const auto inv = invert_path(p, 3);
    CHECK(inv.front() == 0.0);
    CHECK(inv.back() == 1.0);
}

TEST_CASE("cost matrix border") {
    const std::vector<double> x{1, 2}, y{3, 4, 5};
    const auto d = accumulate(x, y);
    CHECK(d(0, 0) == 0.0);
    for (std::size_t j = 1; j <= 3; ++j) CHECK(std::isinf(d(0, j)));
    for (std::size_t i = 1; i <= 2; ++i) CHECK(std::isinf(d(i, 0)));
    CHECK(d(1, 1) == 2.0);
}

TEST_CASE("empty input throws") {
    const std::vector<double> x{1}, e;
    CHECK_THROWS_AS(accumulate(e, x), std::invalid_argument);
    CHECK_THROWS_AS(distance(x, e), std::invalid_argument);
}

TEST_CASE("dynamic programme equals exhaustive search") {
    std::mt19937_64 g(3);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 1 + g() % 6, m = 1 + g() % 6;
        const auto x = testing::uniform(n, g()), y = testing::uniform(m, g());
        const auto d = accumulate(x, y);
        const auto [cost, path] = brute_force(x, y);
        CHECK(d.total() == cost);
        CHECK(distance(x, y) == d.total());
        CHECK(optimal_path(d).pairs == path);
    }
}

TEST_CASE("backtracking resolves ties diagonal first, then vertical") {
    // small integers make tied paths common and their costs exact
    std::mt19937_64 g(4);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 1 + g() % 6, m = 1 + g() % 6;
        std::vector<double> x(n), y(m);
        for (auto& v : x) v = static_cast<double>(g() % 4);
        for (auto& v : y) v = static_cast<double>(g() % 4);
        const auto [cost, path] = brute_force(x, y);
        const auto p = optimal_path(accumulate(x, y));
        CHECK(p.cost == cost);
        CHECK(p.pairs == path);
    }
}

TEST_CASE("distance properties") {
    std::mt19937_64 g(8);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + g() % 40, m = 2 + g() % 40;
        const auto x = testing::uniform(n, g()), y = testing::uniform(m, g());
        const double dxy = distance(x, y);
        CHECK(dxy >= 0.0);
        CHECK(distance(x, x) == 0.0);
        CHECK(dxy == doctest::Approx(distance(y, x)).epsilon(1e-12));

        // the path that walks x first then y is admissible, so it bounds the optimum
        double walk = 0;
        for (std::size_t i = 0; i < n; ++i) walk += std::abs(x[i] - y[0]);
        for (std::size_t j = 1; j < m; ++j) walk += std::abs(x[n - 1] - y[j]);
        CHECK(dxy <= walk + 1e-12);
    }
}

TEST_CASE("path structure and inversion") {
    std::mt19937_64 g(21);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + g() % 60, m = 2 + g() % 60;
        const auto x = testing::uniform(n, g()), y = testing::uniform(m, g());
        const auto p = optimal_path(accumulate(x, y));
        REQUIRE(p.pairs.front() == std::pair<std::size_t, std::size_t>{0, 0});
        REQUIRE(p.pairs.back() == std::pair<std::size_t, std::size_t>{n - 1, m - 1});
        for (std::size_t k = 1; k < p.pairs.size(); ++k) {
            const auto di = p.pairs[k].first - p.pairs[k - 1].first;
            const auto dj = p.pairs[k].second - p.pairs[k - 1].second;
            CHECK(di <= 1);
            CHECK(dj <= 1);
            CHECK(di + dj >= 1);
        }
        const auto inv = invert_path(p, n);
        REQUIRE(inv.size() == n);
        CHECK(inv.front() >= 0.0);
        CHECK(inv.front() <= inv.back());
        for (std::size_t i = 1; i < n; ++i) CHECK(inv[i] >= inv[i - 1]);
        for (double v : inv) CHECK(v <= static_cast<double>(m - 1));
    }
}

TEST_CASE("inversion averages repeated matches") {
    WarpingPath p;
    p.pairs = {{0, 0}, {0, 1}, {0, 2}, {1, 3}, {2, 3}};
    const auto inv = invert_path(p, 3);
    CHECK(inv == std::vector<double>{1.0, 3.0, 3.0});
}
