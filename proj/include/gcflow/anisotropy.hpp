#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gcflow/errors.hpp"
#include "gcflow/sphere_grid.hpp"

namespace gcflow {

/// Positive weight f on S^n, as a function of the normal angle.
///
/// constant: f = c0. cosine-polynomial: f = c0 + sum_k (a_k cos k th + b_k sin k th).
/// tabulated: values on a uniform table over one period ([0, 2pi) for n=1,
/// [0, pi] for n=2), linearly interpolated between table nodes.
class AnisotropyF {
public:
    enum class Kind { constant, cosine_polynomial, tabulated };

    static AnisotropyF constant(double c0) {
        AnisotropyF f;
        f.kind_ = Kind::constant;
        f.c0_ = c0;
        require(c0 > 0.0, "AnisotropyF: constant must be positive");
        return f;
    }

    /// `cos_coeffs[k-1]` multiplies cos k th, `sin_coeffs[k-1]` multiplies sin k th.
    static AnisotropyF cosine_polynomial(double c0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs = {}) {
        AnisotropyF f;
        f.kind_ = Kind::cosine_polynomial;
        f.c0_ = c0;
        f.a_ = std::move(cos_coeffs);
        f.b_ = std::move(sin_coeffs);
        return f;
    }

    static AnisotropyF tabulated(std::vector<double> values, int dimension) {
        require(values.size() >= 2, "AnisotropyF: table too small");
        require(dimension == 1 || dimension == 2, "AnisotropyF: dimension must be 1 or 2");
        AnisotropyF f;
        f.kind_ = Kind::tabulated;
        f.table_ = std::move(values);
        f.table_dim_ = dimension;
        return f;
    }

    Kind kind() const noexcept { return kind_; }

    double operator()(double theta) const {
        switch (kind_) {
            case Kind::constant:
                return c0_;
            case Kind::cosine_polynomial: {
                double v = c0_;
                for (std::size_t k = 0; k < a_.size(); ++k) v += a_[k] * std::cos(static_cast<double>(k + 1) * theta);
                for (std::size_t k = 0; k < b_.size(); ++k) v += b_[k] * std::sin(static_cast<double>(k + 1) * theta);
                return v;
            }
            case Kind::tabulated:
                return table_value(theta);
        }
        return c0_;
    }

    Values on(const SphericalGrid& grid) const {
        Values v = sample(grid, *this);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!(v[i] > 0.0)) throw ContractViolation("AnisotropyF: f must be positive at node " + std::to_string(i));
        }
        return v;
    }

    /// f(x) = f(-x) at paired nodes to 1e-12.
    bool is_even_on(const SphericalGrid& grid) const {
        const auto v = sample(grid, *this);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (std::abs(v[i] - v[grid.antipode(i)]) > 1e-12) return false;
        return true;
    }

    bool is_constant() const noexcept { return kind_ == Kind::constant; }
    double constant_value() const noexcept { return c0_; }

    std::string describe() const {
        switch (kind_) {
            case Kind::constant: return "const " + std::to_string(c0_);
            case Kind::cosine_polynomial: return "cosine-polynomial";
            case Kind::tabulated: return "tabulated";
        }
        return "";
    }

private:
    double table_value(double theta) const {
        const std::size_t M = table_.size();
        if (table_dim_ == 1) {
            const double h = 2.0 * std::numbers::pi / static_cast<double>(M);
            double s = std::fmod(theta, 2.0 * std::numbers::pi);
            if (s < 0) s += 2.0 * std::numbers::pi;
            const double pos = s / h;
            auto k = static_cast<std::size_t>(std::floor(pos));
            const double t = pos - static_cast<double>(k);
            k %= M;
            return (1.0 - t) * table_[k] + t * table_[(k + 1) % M];
        }
        const double h = std::numbers::pi / static_cast<double>(M - 1);
        const double s = std::clamp(theta, 0.0, std::numbers::pi);
        auto k = std::min(static_cast<std::size_t>(std::floor(s / h)), M - 2);
        const double t = s / h - static_cast<double>(k);
        return (1.0 - t) * table_[k] + t * table_[k + 1];
    }

    Kind kind_ = Kind::constant;
    double c0_ = 1.0;
    std::vector<double> a_, b_;
    std::vector<double> table_;
    int table_dim_ = 1;
};

}  // namespace gcflow
