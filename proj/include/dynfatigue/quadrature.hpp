#pragma once

#include <cstddef>
#include <span>

namespace dynfatigue::quadrature {

/// Areas of the positive and negative parts of an integrand. Both are
/// nonnegative; the signed integral is positive - negative.
struct SignedArea {
    double positive = 0.0;
    double negative = 0.0;

    double net() const { return positive - negative; }

    SignedArea& operator+=(const SignedArea& other) {
        positive += other.positive;
        negative += other.negative;
        return *this;
    }
};

/// Trapezoid over one interval of width h, split at the linearly interpolated
/// zero crossing when the endpoint values change sign.
inline SignedArea split_interval(double y0, double y1, double h) {
    SignedArea area;
    if (y0 >= 0.0 && y1 >= 0.0) {
        area.positive = 0.5 * h * (y0 + y1);
    } else if (y0 <= 0.0 && y1 <= 0.0) {
        area.negative = -0.5 * h * (y0 + y1);
    } else {
        const double crossing = h * y0 / (y0 - y1);
        if (y0 > 0.0) {
            area.positive = 0.5 * crossing * y0;
            area.negative = -0.5 * (h - crossing) * y1;
        } else {
            area.negative = -0.5 * crossing * y0;
            area.positive = 0.5 * (h - crossing) * y1;
        }
    }
    return area;
}

/// Composite trapezoid over uniformly spaced samples.
template <typename T>
T trapezoid(std::span<const T> y, T h) {
    if (y.size() < 2) {
        return T{0};
    }
    T sum = T{0};
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        sum += y[i];
    }
    return h * (sum + T{0.5} * (y.front() + y.back()));
}

/// Composite trapezoid of the positive and negative parts separately.
inline SignedArea split_trapezoid(std::span<const double> y, double h) {
    SignedArea total;
    for (std::size_t i = 1; i < y.size(); ++i) {
        total += split_interval(y[i - 1], y[i], h);
    }
    return total;
}

}  // namespace dynfatigue::quadrature
