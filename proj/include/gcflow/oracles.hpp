#pragma once

// Brute-force reference computations. Nothing here touches the support-function
// machinery, so these can be used to check it.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "gcflow/errors.hpp"

namespace gcflow::oracles {

using Point = std::array<double, 2>;

/// Closed polygonal curve, vertices listed counterclockwise.
struct ParametricCurve {
    std::vector<Point> points;
    bool closed = true;

    /// Samples gamma(s) at `count` equally spaced parameters s in [0, 2pi).
    static ParametricCurve sample(const std::function<Point(double)>& gamma, std::size_t count) {
        ParametricCurve c;
        c.points.reserve(count);
        for (std::size_t k = 0; k < count; ++k)
            c.points.push_back(gamma(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count)));
        return c;
    }

    std::size_t size() const { return points.size(); }
};

namespace detail {

inline double cross(const Point& a, const Point& b) { return a[0] * b[1] - a[1] * b[0]; }
inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1]; }
inline Point edge(const Point& from, const Point& to) { return {to[0] - from[0], to[1] - from[1]}; }

inline void require_convex(const ParametricCurve& c) {
    const std::size_t M = c.size();
    require(M >= 3, "curve needs at least three points");
    const std::size_t last = c.closed ? M : M - 2;
    double total = 0.0;
    for (std::size_t i = 0; i < last; ++i) {
        const auto e1 = edge(c.points[i], c.points[(i + 1) % M]);
        const auto e2 = edge(c.points[(i + 1) % M], c.points[(i + 2) % M]);
        if (!(cross(e1, e2) > 0.0)) throw ContractViolation("curve is not strictly convex and counterclockwise");
        total += std::atan2(cross(e1, e2), dot(e1, e2));
    }
    // a convex closed curve turns exactly once
    if (c.closed && std::abs(total - 2.0 * std::numbers::pi) > 1e-9)
        throw ContractViolation("curve winds more than once");
}

/// Exterior angle at vertex i (closed curve).
inline double turning(const ParametricCurve& c, std::size_t i) {
    const std::size_t M = c.size();
    const auto e1 = edge(c.points[(i + M - 1) % M], c.points[i]);
    const auto e2 = edge(c.points[i], c.points[(i + 1) % M]);
    return std::atan2(cross(e1, e2), dot(e1, e2));
}

}  // namespace detail

/// Curvature at each vertex: exterior angle over half the two adjacent edge
/// lengths. Open curves get NaN at their two end points.
inline std::vector<double> parametric_curvature_oracle(const ParametricCurve& curve) {
    detail::require_convex(curve);
    const std::size_t M = curve.size();
    std::vector<double> kappa(M, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < M; ++i) {
        if (!curve.closed && (i == 0 || i + 1 == M)) continue;
        const auto& prev = curve.points[(i + M - 1) % M];
        const auto& next = curve.points[(i + 1) % M];
        const auto e1 = detail::edge(prev, curve.points[i]);
        const auto e2 = detail::edge(curve.points[i], next);
        const double len = 0.5 * (std::hypot(e1[0], e1[1]) + std::hypot(e2[0], e2[1]));
        kappa[i] = detail::turning(curve, i) / len;
    }
    return kappa;
}

/// Sum of exterior angles of the vertices whose radial direction atan2(y, x)
/// lies in [a, b] (taken mod 2pi; b - a >= 2pi means all directions).
inline double polygon_integral_gauss_curvature(const ParametricCurve& curve, double a, double b) {
    require(curve.closed, "polygon must be closed");
    const double two_pi = 2.0 * std::numbers::pi;
    const bool everything = b - a >= two_pi;
    double sum = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        bool inside = everything;
        if (!inside) {
            const double dir = std::atan2(curve.points[i][1], curve.points[i][0]);
            const double offset = std::fmod(std::fmod(dir - a, two_pi) + two_pi, two_pi);
            inside = offset <= b - a;
        }
        if (inside) sum += detail::turning(curve, i);
    }
    return sum;
}

/// Composite quadrature with a million nodes. n = 1: periodic rule over
/// [0, 2pi). n = 2: composite Simpson over [0, pi] (the caller supplies any
/// sin(theta) weight).
inline double reference_quadrature(const std::function<double(double)>& fn, int n, std::size_t nodes = 1'000'000) {
    require(n == 1 || n == 2, "reference_quadrature: n must be 1 or 2");
    if (n == 1) {
        const double h = 2.0 * std::numbers::pi / static_cast<double>(nodes);
        double sum = 0.0;
        for (std::size_t k = 0; k < nodes; ++k) sum += fn(h * static_cast<double>(k));
        return sum * h;
    }
    const std::size_t m = nodes % 2 == 0 ? nodes : nodes + 1;
    const double h = std::numbers::pi / static_cast<double>(m);
    double sum = fn(0.0) + fn(std::numbers::pi);
    for (std::size_t k = 1; k < m; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * fn(h * static_cast<double>(k));
    return sum * h / 3.0;
}

}  // namespace gcflow::oracles
