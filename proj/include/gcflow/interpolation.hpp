#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "gcflow/errors.hpp"
#include "gcflow/sphere_grid.hpp"

namespace gcflow {

namespace detail {

inline double hermite(double x0, double x1, double y0, double y1, double s0, double s1, double x) {
    const double dx = x1 - x0;
    const double t = (x - x0) / dx;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * dx * s0 + (-2 * t3 + 3 * t2) * y1
           + (t3 - t2) * dx * s1;
}

}  // namespace detail

/// Cubic Hermite resampling of scattered samples (x_i, y_i, y'_i) with strictly
/// increasing x onto ascending targets. With `period > 0` the data are treated as
/// one period of a periodic function; otherwise targets must lie in [x_0, x_last].
inline Values hermite_resample(std::span<const double> x, std::span<const double> y,
                               std::span<const double> slope, std::span<const double> targets,
                               double period) {
    const std::size_t N = x.size();
    require(y.size() == N && slope.size() == N && N >= 2, "hermite_resample: size mismatch");
    // Periodic data are viewed as extended over three periods via index k in [-N, 2N).
    const bool periodic = period > 0.0;
    const long lo = periodic ? -static_cast<long>(N) : 0;
    const long hi = periodic ? 2 * static_cast<long>(N) : static_cast<long>(N);
    auto at = [&](long k, std::span<const double> v, bool shift) {
        long i = k, wrap = 0;
        if (i < 0) {
            i += static_cast<long>(N);
            wrap = -1;
        } else if (i >= static_cast<long>(N)) {
            i -= static_cast<long>(N);
            wrap = 1;
        }
        return v[static_cast<std::size_t>(i)] + (shift ? static_cast<double>(wrap) * period : 0.0);
    };
    const double first = at(lo, x, true), last = at(hi - 1, x, true);
    Values out(targets.size());
    long j = lo;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const double q = targets[t];
        require(q >= first && q <= last, "hermite_resample: target outside data range");
        while (j + 2 < hi && at(j + 1, x, true) <= q) ++j;
        out[t] = detail::hermite(at(j, x, true), at(j + 1, x, true), at(j, y, false), at(j + 1, y, false),
                                 at(j, slope, false), at(j + 1, slope, false), q);
    }
    return out;
}

/// Value of the 4-point Lagrange cubic through uniform grid data at an arbitrary angle.
/// Periodic wrap for n=1, even reflection across the poles for n=2.
inline double interpolate_cubic(std::span<const double> g, const SphericalGrid& grid, double angle) {
    const double h = grid.spacing();
    const auto N = static_cast<long>(grid.size());
    auto at = [&](long k) {
        if (grid.periodic()) {
            k %= N;
            if (k < 0) k += N;
            return g[static_cast<std::size_t>(k)];
        }
        const long M = N - 1;  // reflection period is 2M
        k %= 2 * M;
        if (k < 0) k += 2 * M;
        if (k > M) k = 2 * M - k;
        return g[static_cast<std::size_t>(k)];
    };
    const double s = angle / h;
    const long k = static_cast<long>(std::floor(s));
    const double t = s - static_cast<double>(k);
    const double y0 = at(k - 1), y1 = at(k), y2 = at(k + 1), y3 = at(k + 2);
    return y0 * (-t * (t - 1) * (t - 2) / 6.0) + y1 * ((t + 1) * (t - 1) * (t - 2) / 2.0)
           + y2 * (-(t + 1) * t * (t - 2) / 2.0) + y3 * ((t + 1) * t * (t - 1) / 6.0);
}

/// Integral of the cubic interpolant of `g` over the angle interval [a, b], using
/// the surface measure of the grid (dtheta for n=1, 2 pi sin(theta) dtheta for n=2).
inline double integrate_interval(std::span<const double> g, const SphericalGrid& grid, double a, double b) {
    check_size(g, grid);
    require(b >= a, "integrate_interval: reversed interval");
    if (!grid.periodic()) {
        a = std::max(a, 0.0);
        b = std::min(b, std::numbers::pi);
        if (b <= a) return 0.0;
    }
    static constexpr std::array<double, 3> gx{-0.7745966692414834, 0.0, 0.7745966692414834};
    static constexpr std::array<double, 3> gw{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const double h = grid.spacing();
    double total = 0.0;
    double lo = a;
    while (lo < b) {
        const double cell_end = (std::floor(lo / h + 1e-12) + 1.0) * h;
        const double hi = std::min(b, cell_end);
        if (hi > lo) {
            const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (std::size_t q = 0; q < 3; ++q) {
                const double th = mid + half * gx[q];
                double v = interpolate_cubic(g, grid, th);
                if (!grid.periodic()) v *= 2.0 * std::numbers::pi * std::sin(th);
                total += gw[q] * half * v;
            }
        }
        lo = hi;
    }
    return total;
}

}  // namespace gcflow
