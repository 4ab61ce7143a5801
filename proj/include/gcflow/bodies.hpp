#pragma once

// Support functions of the standard initial bodies.

#include <cmath>
#include <vector>

#include "gcflow/convex_geometry.hpp"

namespace gcflow::bodies {

inline SupportFn sphere(const GridPtr& grid, double radius) {
    return SupportFn(grid, Values(grid->size(), radius));
}

/// n=1: ellipse with semi-axes a (along x) and b. n=2: spheroid with equatorial
/// semi-axis a and polar semi-axis b.
inline SupportFn ellipse(const GridPtr& grid, double a, double b) {
    const bool curve = grid->dimension() == 1;
    return SupportFn(grid, sample(*grid, [&](double th) {
                         const double c = std::cos(th), s = std::sin(th);
                         return curve ? std::sqrt(a * a * c * c + b * b * s * s) : std::sqrt(a * a * s * s + b * b * c * c);
                     }));
}

/// Unit disk (ball) translated by c along the axis theta = 0.
inline SupportFn shifted_disk(const GridPtr& grid, double c) {
    return SupportFn(grid, sample(*grid, [&](double th) { return 1.0 + c * std::cos(th); }));
}

/// u = c0 + sum_k a_k cos k th + b_k sin k th. Sine terms are rejected for n=2.
inline SupportFn fourier(const GridPtr& grid, double c0, const std::vector<double>& cos_coeffs,
                         const std::vector<double>& sin_coeffs = {}) {
    if (grid->dimension() == 2) {
        for (double s : sin_coeffs)
            require(s == 0.0, "fourier body: sine terms are not axisymmetric-admissible for n=2");
    }
    return SupportFn(grid, sample(*grid, [&](double th) {
                         double v = c0;
                         for (std::size_t k = 0; k < cos_coeffs.size(); ++k)
                             v += cos_coeffs[k] * std::cos(static_cast<double>(k + 1) * th);
                         for (std::size_t k = 0; k < sin_coeffs.size(); ++k)
                             v += sin_coeffs[k] * std::sin(static_cast<double>(k + 1) * th);
                         return v;
                     }));
}

inline SupportFn scaled(const SupportFn& u, double factor) {
    Values v(u.values());
    for (auto& x : v) x *= factor;
    return SupportFn(u.grid_ptr(), std::move(v));
}

}  // namespace gcflow::bodies
