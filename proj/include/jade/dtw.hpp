#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace jade::dtw {

// (n+1) x (m+1) accumulated cost with an infinite border.
class CostMatrix {
public:
    CostMatrix(std::size_t n, std::size_t m);

    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    double operator()(std::size_t i, std::size_t j) const { return v_[i * (m_ + 1) + j]; }
    double& operator()(std::size_t i, std::size_t j) { return v_[i * (m_ + 1) + j]; }
    double total() const { return (*this)(n_, m_); }

private:
    std::size_t n_, m_;
    std::vector<double> v_;
};

struct WarpingPath {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    double cost = 0.0;
};

CostMatrix accumulate(std::span<const double> x, std::span<const double> y);

// D[n][m] only, two rows of memory.
double distance(std::span<const double> x, std::span<const double> y);

WarpingPath optimal_path(const CostMatrix& d);

// Mean aligned y-index per x-index.
std::vector<double> invert_path(const WarpingPath& path, std::size_t target_length);

}  // namespace jade::dtw
