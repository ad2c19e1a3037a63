#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "dynfatigue/error.hpp"

namespace dynfatigue::ode {

template <typename T>
struct Point {
    T time;
    T value;
};

/// Classical fixed-step fourth-order Runge-Kutta for a scalar ODE y' = f(t, y)
/// from t0 to t_end. Returns every step, starting with (t0, y0).
///
/// The right-hand side is sampled strictly inside each step (endpoint
/// evaluations are moved one ulp inward), so a discontinuity in f that falls
/// on a step boundary is seen through its one-sided limits. Listed breakpoints
/// inside (t0, t_end) are inserted as extra step boundaries for that purpose.
/// The last step is shortened to land on t_end exactly.
template <typename T, typename Rhs>
std::vector<Point<T>> rk4(Rhs&& rhs, T t0, T y0, T t_end, T step,
                          std::span<const T> breakpoints = {}) {
    if (!(step > T{0})) {
        throw DomainError("integration step must be positive");
    }
    if (!(t_end >= t0)) {
        throw DomainError("integration end precedes start");
    }

    std::vector<T> grid;
    const auto full_steps = static_cast<long long>(std::floor((t_end - t0) / step));
    grid.reserve(static_cast<std::size_t>(full_steps) + 2 + breakpoints.size());
    for (long long i = 0; i <= full_steps; ++i) {
        grid.push_back(t0 + static_cast<T>(i) * step);
    }
    // Skip remainders that are rounding noise of an exact multiple.
    if (t_end - grid.back() > step * T{1e-9}) {
        grid.push_back(t_end);
    } else {
        grid.back() = t_end;
    }
    for (T b : breakpoints) {
        if (b > t0 && b < t_end) {
            grid.push_back(b);
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [&](T a, T b) { return b - a <= step * T{1e-12}; }),
               grid.end());
    grid.back() = t_end;

    std::vector<Point<T>> out;
    out.reserve(grid.size());
    out.push_back({grid.front(), y0});
    T y = y0;
    constexpr T inf = std::numeric_limits<T>::infinity();
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const T a = grid[i - 1];
        const T b = grid[i];
        const T h = b - a;
        const T mid = a + h / 2;
        const T k1 = rhs(std::nextafter(a, inf), y);
        const T k2 = rhs(mid, y + h / 2 * k1);
        const T k3 = rhs(mid, y + h / 2 * k2);
        const T k4 = rhs(std::nextafter(b, -inf), y + h * k3);
        y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        out.push_back({b, y});
    }
    return out;
}

}  // namespace dynfatigue::ode
