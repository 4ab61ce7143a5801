#pragma once

// Functionals, conserved integrals, curvature measures, soliton residuals and
// the admissibility check for Aleksandrov data.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "gcflow/anisotropy.hpp"
#include "gcflow/convex_geometry.hpp"

namespace gcflow {

/// q = n + 1 - alpha.
inline double dual_exponent(int n, double alpha) { return static_cast<double>(n + 1) - alpha; }

inline bool is_log_case(int n, double alpha) { return std::abs(dual_exponent(n, alpha)) < 1e-14; }

/// int log r dxi.
inline double log_r_integral(const BodySnapshot& body) {
    Values g(body.r.values());
    for (auto& v : g) v = std::log(v);
    return integrate(g, body.grid());
}

/// I_q = int r^q dxi.
inline double integral_I_q(const BodySnapshot& body, double q) {
    Values g(body.r.values());
    for (auto& v : g) v = std::pow(v, q);
    return integrate(g, body.grid());
}

inline double functional_J(const BodySnapshot& body, std::span<const double> f_values, double alpha) {
    const auto& grid = body.grid();
    check_size(f_values, grid);
    Values g(grid.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = f_values[i] * std::log(body.u[i]);
    const double first = integrate(g, grid);
    const int n = grid.dimension();
    if (is_log_case(n, alpha)) return first - log_r_integral(body);
    const double q = dual_exponent(n, alpha);
    return first - integral_I_q(body, q) / q;
}

inline double functional_J(const BodySnapshot& body, const AnisotropyF& f, double alpha) {
    return functional_J(body, f.on(body.grid()), alpha);
}

struct ResidualField {
    Values values;  ///< f r^alpha K - u
    double max_abs = 0.0;
    double l2 = 0.0;
};

inline ResidualField soliton_residual(const BodySnapshot& body, std::span<const double> f_values, double alpha) {
    const auto& grid = body.grid();
    check_size(f_values, grid);
    ResidualField out;
    out.values.resize(grid.size());
    Values sq(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = f_values[i] * std::pow(body.r_at_x[i], alpha) * body.K_of_x[i] - body.u[i];
        out.values[i] = v;
        out.max_abs = std::max(out.max_abs, std::abs(v));
        sq[i] = v * v;
    }
    out.l2 = std::sqrt(integrate(sq, grid));
    return out;
}

inline ResidualField soliton_residual(const BodySnapshot& body, const AnisotropyF& f, double alpha) {
    return soliton_residual(body, f.on(body.grid()), alpha);
}

/// A set of normal angles given as a union of closed intervals [lo, hi].
/// For n=1 intervals may wrap (hi beyond 2 pi); for n=2 they are polar zones.
using AngleSet = std::vector<std::pair<double, double>>;

/// q-th dual curvature measure of omega, pulled back to normal coordinates:
/// int_omega r^{q-n-1} u / K dx.
inline double dual_curvature_measure(const BodySnapshot& body, double q, const AngleSet& omega) {
    const auto& grid = body.grid();
    const int n = grid.dimension();
    Values g(grid.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = std::pow(body.r_at_x[i], q - n - 1) * body.u[i] / body.K_of_x[i];
    double total = 0.0;
    for (const auto& [lo, hi] : omega) total += integrate_interval(g, grid, lo, hi);
    return total;
}

struct FunctionalReport {
    double J_alpha = 0.0;
    double I_q = 0.0;
    double log_r_integral = 0.0;
    double residual_max = 0.0;
    double residual_l2 = 0.0;
};

inline FunctionalReport evaluate_functionals(const BodySnapshot& body, const AnisotropyF& f, double alpha) {
    const auto fv = f.on(body.grid());
    const auto res = soliton_residual(body, fv, alpha);
    return FunctionalReport{functional_J(body, fv, alpha), integral_I_q(body, dual_exponent(body.dimension(), alpha)),
                            log_r_integral(body), res.max_abs, res.l2};
}

inline void write_report_csv_header(std::ostream& os) { os << "t,J_alpha,I_q,log_r_integral,residual_max,residual_l2\n"; }

inline void write_report_csv_row(std::ostream& os, double t, const FunctionalReport& r) {
    os << std::setprecision(17) << t << ',' << r.J_alpha << ',' << r.I_q << ',' << r.log_r_integral << ','
       << r.residual_max << ',' << r.residual_l2 << '\n';
}

struct AleksandrovReport {
    double cdt1_error = 0.0;          ///< | int f - |S^n| |
    bool cdt2_ok = true;
    std::pair<double, double> worst_window{0.0, 0.0};
    double worst_margin = 0.0;        ///< (|S^n| - |omega*|) - int_omega f on the worst window
    bool partial = false;             ///< n=2: only polar caps are tested
};

/// Never throws on inadmissible data; reports instead.
inline AleksandrovReport aleksandrov_check(const AnisotropyF& f, const SphericalGrid& grid) {
    constexpr double pi = std::numbers::pi;
    const auto fv = sample(grid, f);
    AleksandrovReport rep;
    rep.cdt1_error = std::abs(integrate(fv, grid) - grid.sphere_measure());
    rep.worst_margin = std::numeric_limits<double>::infinity();
    const double h = grid.spacing();
    if (grid.dimension() == 1) {
        rep.partial = false;
        const std::size_t N = grid.size();
        // prefix[k] = sum_{j<k} f_{j mod N}, over two periods
        std::vector<double> prefix(2 * N + 1, 0.0);
        for (std::size_t k = 0; k < 2 * N; ++k) prefix[k + 1] = prefix[k] + fv[k % N];
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t m = 0; static_cast<double>(m) * h < pi - 1e-12 && m < N; ++m) {
                const double len = static_cast<double>(m) * h;
                double mass = 0.0;
                if (m > 0) mass = h * (prefix[i + m + 1] - prefix[i] - 0.5 * (fv[i] + fv[(i + m) % N]));
                const double margin = pi + len - mass;
                if (margin < rep.worst_margin) {
                    rep.worst_margin = margin;
                    rep.worst_window = {grid.node(i), grid.node(i) + len};
                }
            }
        }
    } else {
        rep.partial = true;
        for (std::size_t m = 0; static_cast<double>(m) * h < pi / 2 - 1e-12; ++m) {
            const double beta = static_cast<double>(m) * h;
            const double bound = 2.0 * pi * (1.0 + std::sin(beta));  // 4 pi - |dual cap|
            const double north = integrate_interval(fv, grid, 0.0, beta);
            const double south = integrate_interval(fv, grid, pi - beta, pi);
            if (bound - north < rep.worst_margin) {
                rep.worst_margin = bound - north;
                rep.worst_window = {0.0, beta};
            }
            if (bound - south < rep.worst_margin) {
                rep.worst_margin = bound - south;
                rep.worst_window = {pi - beta, pi};
            }
        }
    }
    rep.cdt2_ok = rep.worst_margin > 0.0;
    return rep;
}

}  // namespace gcflow
