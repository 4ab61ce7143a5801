#pragma once

// Uniform grids on S^1 (periodic) and on the axisymmetric S^2 (polar angle
// on [0, pi], poles included), with second-order difference operators and
// quadrature.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "gcflow/errors.hpp"

namespace gcflow {

using Values = std::vector<double>;

class SphericalGrid {
public:
    static SphericalGrid circle(std::size_t node_count) { return SphericalGrid(1, node_count); }
    static SphericalGrid axisymmetric(std::size_t node_count) { return SphericalGrid(2, node_count); }

    SphericalGrid(int dimension, std::size_t node_count) : n_(dimension), N_(node_count) {
        require(dimension == 1 || dimension == 2, "SphericalGrid: dimension must be 1 or 2");
        require(node_count >= 16, "SphericalGrid: node_count must be >= 16");
        constexpr double pi = std::numbers::pi;
        nodes_.resize(N_);
        weights_.resize(N_);
        if (n_ == 1) {
            h_ = 2.0 * pi / static_cast<double>(N_);
            for (std::size_t i = 0; i < N_; ++i) {
                nodes_[i] = h_ * static_cast<double>(i);
                weights_[i] = h_;
            }
        } else {
            h_ = pi / static_cast<double>(N_ - 1);
            for (std::size_t i = 0; i < N_; ++i) {
                nodes_[i] = h_ * static_cast<double>(i);
                weights_[i] = 2.0 * pi * std::sin(nodes_[i]) * h_;
            }
            nodes_[N_ - 1] = pi;
            weights_[0] = 0.0;
            weights_[N_ - 1] = 0.0;
        }
    }

    int dimension() const noexcept { return n_; }
    std::size_t size() const noexcept { return N_; }
    double spacing() const noexcept { return h_; }
    bool periodic() const noexcept { return n_ == 1; }
    const Values& nodes() const noexcept { return nodes_; }
    const Values& weights() const noexcept { return weights_; }
    double node(std::size_t i) const { return nodes_[i]; }

    /// |S^n|: 2 pi or 4 pi.
    double sphere_measure() const noexcept {
        return n_ == 1 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
    }

    /// Index of the node at the antipodal direction. Requires even N for n = 1.
    std::size_t antipode(std::size_t i) const {
        if (n_ == 1) {
            require(N_ % 2 == 0, "antipode: circle grid needs an even node count");
            return (i + N_ / 2) % N_;
        }
        return N_ - 1 - i;
    }

    /// Neighbour values with periodic wrap (n=1) or even reflection across the poles (n=2).
    double left(std::span<const double> g, std::size_t i) const {
        if (i > 0) return g[i - 1];
        return n_ == 1 ? g[N_ - 1] : g[1];
    }
    double right(std::span<const double> g, std::size_t i) const {
        if (i + 1 < N_) return g[i + 1];
        return n_ == 1 ? g[0] : g[N_ - 2];
    }

    /// g at index i + offset under the same wrap or reflection; |offset| < N.
    double shifted(std::span<const double> g, std::size_t i, long offset) const {
        const long last = static_cast<long>(N_) - 1;
        long j = static_cast<long>(i) + offset;
        if (n_ == 1) {
            j %= static_cast<long>(N_);
            if (j < 0) j += static_cast<long>(N_);
        } else {
            if (j < 0) j = -j;
            if (j > last) j = 2 * last - j;
        }
        return g[static_cast<std::size_t>(j)];
    }

    bool same_shape(const SphericalGrid& other) const noexcept {
        return n_ == other.n_ && N_ == other.N_;
    }

private:
    int n_;
    std::size_t N_;
    double h_ = 0.0;
    Values nodes_;
    Values weights_;
};

inline void check_size(std::span<const double> g, const SphericalGrid& grid) {
    if (g.size() != grid.size()) throw ContractViolation("node value count does not match grid size");
}

/// Centered first difference.
inline Values deriv1(std::span<const double> g, const SphericalGrid& grid) {
    check_size(g, grid);
    const double inv = 1.0 / (2.0 * grid.spacing());
    Values out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = (grid.right(g, i) - grid.left(g, i)) * inv;
    return out;
}

/// Five-point centered first difference, fourth order. Used where a derivative
/// error would otherwise be amplified by a later differencing step.
inline Values deriv1_fourth(std::span<const double> g, const SphericalGrid& grid) {
    check_size(g, grid);
    const double inv = 1.0 / (12.0 * grid.spacing());
    Values out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = (8.0 * (grid.shifted(g, i, 1) - grid.shifted(g, i, -1)) - (grid.shifted(g, i, 2) - grid.shifted(g, i, -2)))
                 * inv;
    return out;
}

/// Centered second difference.
inline Values deriv2(std::span<const double> g, const SphericalGrid& grid) {
    check_size(g, grid);
    const double inv = 1.0 / (grid.spacing() * grid.spacing());
    Values out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = (grid.right(g, i) - 2.0 * g[i] + grid.left(g, i)) * inv;
    return out;
}

inline double integrate(std::span<const double> g, const SphericalGrid& grid) {
    check_size(g, grid);
    if (grid.periodic()) {
        // equal weights: 2 pi times the mean, so that g = 1 integrates to 2 pi exactly
        double sum = 0.0;
        for (double v : g) sum += v;
        return 2.0 * std::numbers::pi * (sum / static_cast<double>(g.size()));
    }
    const auto& w = grid.weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) sum += w[i] * g[i];
    return sum;
}

template <class Fn>
Values sample(const SphericalGrid& grid, Fn&& fn) {
    Values out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = fn(grid.node(i));
    return out;
}

}  // namespace gcflow
