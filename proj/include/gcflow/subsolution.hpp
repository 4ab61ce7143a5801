#pragma once

// Two-branch graph phi(rho, t), t in (-1, 0), used as a comparison barrier near
// the origin: a paraboloid for rho < |t|^theta glued C^1 to a rho^(1+sigma) cone.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "gcflow/errors.hpp"

namespace gcflow {

struct SubsolutionParams {
    double theta;
    double q;
    int n;

    double sigma() const { return (q * theta - 1.0) / (n * theta); }
    double alpha() const { return n + 1.0 - q; }

    void validate() const {
        require(n == 1 || n == 2, "subsolution: n must be 1 or 2");
        require(q > 0.0, "subsolution: need q = n+1-alpha > 0");
        require(theta * q > 1.0, "subsolution: need theta > 1/q");
    }
};

namespace detail {

inline void check_point(double t, double rho) {
    require(t > -1.0 && t < 0.0, "subsolution: t must lie in (-1, 0)");
    require(rho >= 0.0 && rho <= 1.0, "subsolution: rho must lie in [0, 1]");
}

/// phi, phi_rho and phi_rhorho at (rho, t).
struct Jet {
    double value, d1, d2;
};

inline Jet subsolution_jet(const SubsolutionParams& p, double t, double rho) {
    const double s = std::abs(t);
    const double sigma = p.sigma();
    const double T = std::pow(s, p.theta);
    if (rho < T) {
        const double a = std::pow(s, p.theta * sigma - p.theta);
        return {-T + a * rho * rho, 2.0 * a * rho, 2.0 * a};
    }
    const double value = -T - (1.0 - sigma) / (1.0 + sigma) * std::pow(T, 1.0 + sigma)
                         + 2.0 / (1.0 + sigma) * std::pow(rho, 1.0 + sigma);
    return {value, 2.0 * std::pow(rho, sigma), 2.0 * sigma * std::pow(rho, sigma - 1.0)};
}

}  // namespace detail

inline double subsolution_profile(double theta_param, double q, int n, double t, double rho) {
    const SubsolutionParams p{theta_param, q, n};
    p.validate();
    detail::check_point(t, rho);
    return detail::subsolution_jet(p, t, rho).value;
}

/// Gauss curvature of the rotation graph x_{n+1} = phi(|x|) at radius rho:
/// phi'' (phi'/rho)^(n-1) / (1 + phi'^2)^((n+2)/2).
inline double graph_curvature(const SubsolutionParams& p, double t, double rho) {
    const auto j = detail::subsolution_jet(p, t, rho);
    double lateral = 1.0;
    if (p.n == 2) lateral = rho > 0.0 ? j.d1 / rho : j.d2;
    return j.d2 * lateral / std::pow(1.0 + j.d1 * j.d1, 0.5 * (p.n + 2));
}

struct SubsolutionReport {
    double inner_margin = std::numeric_limits<double>::infinity();  ///< min r^a K / |t|^(theta-1), rho < |t|^theta
    double outer_margin = std::numeric_limits<double>::infinity();  ///< same ratio on the cone branch: the constant C
    double c1_defect = 0.0;        ///< value and slope jump at rho = |t|^theta, relative
    double speed_ratio = 0.0;      ///< max |d phi / dt| / (theta |t|^(theta-1))
    std::size_t inner_samples = 0, outer_samples = 0;
};

inline SubsolutionReport verify_subsolution(double theta_param, double q, int n,
                                            const std::vector<std::pair<double, double>>& samples) {
    const SubsolutionParams p{theta_param, q, n};
    p.validate();
    const double alpha = p.alpha();
    SubsolutionReport rep;
    for (const auto& [rho, t] : samples) {
        detail::check_point(t, rho);
        const double s = std::abs(t);
        const double T = std::pow(s, p.theta);
        const double scale = std::pow(s, p.theta - 1.0);
        const double phi = detail::subsolution_jet(p, t, rho).value;
        const double r = std::hypot(rho, phi);
        const double ratio = std::pow(r, alpha) * graph_curvature(p, t, rho) / scale;
        if (rho < T) {
            rep.inner_margin = std::min(rep.inner_margin, ratio);
            ++rep.inner_samples;
        } else {
            rep.outer_margin = std::min(rep.outer_margin, ratio);
            ++rep.outer_samples;
        }

        const double dt = 1e-6 * s;
        const double hi = t + dt, lo = t - dt;
        const double speed = std::abs(detail::subsolution_jet(p, hi, rho).value - detail::subsolution_jet(p, lo, rho).value)
                             / (hi - lo);
        rep.speed_ratio = std::max(rep.speed_ratio, speed / (p.theta * scale));

        // both branches evaluated at the switch radius
        const double sigma = p.sigma();
        const double a = std::pow(s, p.theta * sigma - p.theta);
        const double inner_v = -T + a * T * T, inner_d = 2.0 * a * T;
        const double outer_v = -T - (1.0 - sigma) / (1.0 + sigma) * std::pow(T, 1.0 + sigma)
                               + 2.0 / (1.0 + sigma) * std::pow(T, 1.0 + sigma);
        const double outer_d = 2.0 * std::pow(T, sigma);
        const double defect = std::max(std::abs(inner_v - outer_v) / std::max(std::abs(inner_v), 1e-300),
                                       std::abs(inner_d - outer_d) / std::max(std::abs(inner_d), 1e-300));
        rep.c1_defect = std::max(rep.c1_defect, defect);
    }
    return rep;
}

/// count_t times count_rho samples: t log-spaced in [t_lo, t_hi] (both negative),
/// rho = 0 plus log-spaced values in [rho_min, 1].
inline std::vector<std::pair<double, double>> subsolution_sample_grid(double t_lo, double t_hi, std::size_t count_t,
                                                                     std::size_t count_rho, double rho_min = 1e-4) {
    require(t_lo < t_hi && t_hi < 0.0 && t_lo > -1.0, "sample grid: need -1 < t_lo < t_hi < 0");
    require(count_t >= 2 && count_rho >= 3 && rho_min > 0.0 && rho_min < 1.0, "sample grid: bad counts");
    std::vector<std::pair<double, double>> out;
    const double a = std::log(-t_hi), b = std::log(-t_lo);
    for (std::size_t i = 0; i < count_t; ++i) {
        const double t = -std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count_t - 1));
        out.emplace_back(0.0, t);
        for (std::size_t k = 1; k < count_rho; ++k) {
            const double e = std::log(rho_min) * (1.0 - static_cast<double>(k - 1) / static_cast<double>(count_rho - 2));
            out.emplace_back(std::exp(e), t);
        }
    }
    return out;
}

}  // namespace gcflow
