#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jade::spline {

// y = a + b t + c t^2 + d t^3 with t = x - knot
struct Piece {
    double a, b, c, d;
};

class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> knots, std::vector<Piece> pieces);

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    double lower() const { return knots_.front(); }
    double upper() const { return knots_.back(); }
    bool empty() const { return knots_.empty(); }

    // Index of the piece containing x (the right piece at interior knots).
    std::size_t locate(double x) const;

    double operator()(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

private:
    void check(double x) const;
    std::vector<double> knots_;
    std::vector<Piece> pieces_;
};

// Natural cubic spline (zero second derivative at both ends).
CubicSpline fit(std::span<const double> x, std::span<const double> y);

double evaluate(const CubicSpline& s, double x);
double derivative(const CubicSpline& s, double x);

}  // namespace jade::spline
