#include "jade/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jade::spline {

CubicSpline::CubicSpline(std::vector<double> knots, std::vector<Piece> pieces)
    : knots_(std::move(knots)), pieces_(std::move(pieces)) {
    if (knots_.size() < 2 || pieces_.size() + 1 != knots_.size())
        throw std::invalid_argument("spline: inconsistent knots and pieces");
}

void CubicSpline::check(double x) const {
    if (knots_.empty()) throw std::logic_error("spline: empty");
    if (!(x >= knots_.front() && x <= knots_.back()))
        throw std::out_of_range("spline: x = " + std::to_string(x) + " outside [" +
                                std::to_string(knots_.front()) + ", " + std::to_string(knots_.back()) + "]");
}

std::size_t CubicSpline::locate(double x) const {
    check(x);
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    auto k = static_cast<std::size_t>(it - knots_.begin());
    if (k == 0) return 0;
    return std::min(k - 1, pieces_.size() - 1);
}

double CubicSpline::operator()(double x) const {
    const auto k = locate(x);
    const auto& p = pieces_[k];
    const double t = x - knots_[k];
    return p.a + t * (p.b + t * (p.c + t * p.d));
}

double CubicSpline::derivative(double x) const {
    const auto k = locate(x);
    const auto& p = pieces_[k];
    const double t = x - knots_[k];
    return p.b + t * (2.0 * p.c + 3.0 * t * p.d);
}

double CubicSpline::second_derivative(double x) const {
    const auto k = locate(x);
    const auto& p = pieces_[k];
    return 2.0 * p.c + 6.0 * p.d * (x - knots_[k]);
}

CubicSpline fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size()) throw std::invalid_argument("spline: x and y lengths differ");
    if (n < 2) throw std::invalid_argument("spline: need at least 2 knots");
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw std::invalid_argument("spline: non-finite knot");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x[i] > x[i - 1])) throw std::invalid_argument("spline: knots must be strictly increasing");

    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x[i + 1] - x[i];

    // second derivatives M, natural ends M_0 = M_{n-1} = 0; Thomas elimination
    std::vector<double> m(n, 0.0);
    if (n > 2) {
        const std::size_t k = n - 2;
        std::vector<double> diag(k), upper(k), rhs(k);
        for (std::size_t i = 0; i < k; ++i) {
            diag[i] = 2.0 * (h[i] + h[i + 1]);
            upper[i] = h[i + 1];
            rhs[i] = 6.0 * ((y[i + 2] - y[i + 1]) / h[i + 1] - (y[i + 1] - y[i]) / h[i]);
        }
        for (std::size_t i = 1; i < k; ++i) {
            const double w = h[i] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        m[k] = rhs[k - 1] / diag[k - 1];
        for (std::size_t i = k - 1; i-- > 0;) m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
    }

    std::vector<Piece> pieces(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        pieces[i].a = y[i];
        pieces[i].b = (y[i + 1] - y[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
        pieces[i].c = m[i] / 2.0;
        pieces[i].d = (m[i + 1] - m[i]) / (6.0 * h[i]);
    }
    return CubicSpline(std::vector<double>(x.begin(), x.end()), std::move(pieces));
}

double evaluate(const CubicSpline& s, double x) { return s(x); }
double derivative(const CubicSpline& s, double x) { return s.derivative(x); }

}  // namespace jade::spline
