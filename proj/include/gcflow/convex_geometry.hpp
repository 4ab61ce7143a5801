#pragma once

// Support-function and radial-function representations of convex bodies that
// enclose the origin. Curves (n=1) are sampled over the normal angle on a
// periodic grid; axisymmetric surfaces (n=2) over the polar angle of the normal.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "gcflow/errors.hpp"
#include "gcflow/interpolation.hpp"
#include "gcflow/sphere_grid.hpp"

namespace gcflow {

using GridPtr = std::shared_ptr<const SphericalGrid>;

inline GridPtr make_grid(int dimension, std::size_t node_count) {
    return std::make_shared<const SphericalGrid>(dimension, node_count);
}

namespace detail {
inline void require_positive(const Values& v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0) || !std::isfinite(v[i]))
            throw ContractViolation(std::string(what) + " must be positive and finite at node "
                                    + std::to_string(i));
    }
}
}  // namespace detail

/// Support function samples u(x) > 0 on a grid.
class SupportFn {
public:
    SupportFn(GridPtr grid, Values u) : grid_(std::move(grid)), u_(std::move(u)) {
        require(grid_ != nullptr, "SupportFn: null grid");
        check_size(u_, *grid_);
        detail::require_positive(u_, "support function");
    }
    const SphericalGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const Values& values() const { return u_; }
    double operator[](std::size_t i) const { return u_[i]; }
    std::size_t size() const { return u_.size(); }

private:
    GridPtr grid_;
    Values u_;
};

/// Radial function samples r(xi) > 0 on the same grid, indexed by direction angle.
class RadialFn {
public:
    RadialFn(GridPtr grid, Values r) : grid_(std::move(grid)), r_(std::move(r)) {
        require(grid_ != nullptr, "RadialFn: null grid");
        check_size(r_, *grid_);
        detail::require_positive(r_, "radial function");
    }
    const SphericalGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const Values& values() const { return r_; }
    double operator[](std::size_t i) const { return r_[i]; }
    std::size_t size() const { return r_.size(); }

private:
    GridPtr grid_;
    Values r_;
};

/// Principal radii per node. `second` is empty for curves.
struct PrincipalRadii {
    Values first;
    Values second;

    double min() const {
        double m = *std::min_element(first.begin(), first.end());
        if (!second.empty()) m = std::min(m, *std::min_element(second.begin(), second.end()));
        return m;
    }
    double max() const {
        double m = *std::max_element(first.begin(), first.end());
        if (!second.empty()) m = std::max(m, *std::max_element(second.begin(), second.end()));
        return m;
    }
    double smallest_at(std::size_t i) const { return second.empty() ? first[i] : std::min(first[i], second[i]); }
};

/// Unchecked radii b11 = u'' + u and (n=2) b22 = u' cot(theta) + u, with the
/// pole limit b22 = b11. Used by the step controller to test trial states.
inline PrincipalRadii raw_principal_radii(std::span<const double> u, std::span<const double> du,
                                          const SphericalGrid& grid) {
    PrincipalRadii b;
    b.first = deriv2(u, grid);
    for (std::size_t i = 0; i < u.size(); ++i) b.first[i] += u[i];
    if (grid.dimension() == 2) {
        const std::size_t N = grid.size();
        b.second.resize(N);
        for (std::size_t i = 0; i < N; ++i) {
            if (i == 0 || i + 1 == N) {
                b.second[i] = b.first[i];
            } else {
                const double th = grid.node(i);
                b.second[i] = du[i] * std::cos(th) / std::sin(th) + u[i];
            }
        }
    }
    return b;
}

inline void check_radii(const PrincipalRadii& b) {
    std::size_t worst = 0;
    double worst_v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < b.first.size(); ++i) {
        const double v = b.smallest_at(i);
        if (!(v < worst_v)) continue;
        worst_v = v;
        worst = i;
    }
    if (!(worst_v > 0.0) || !std::isfinite(worst_v))
        throw ConvexityLost("principal radius not positive", worst, worst_v);
}

inline PrincipalRadii principal_radii(const SupportFn& u) {
    const auto du = deriv1(u.values(), u.grid());
    auto b = raw_principal_radii(u.values(), du, u.grid());
    check_radii(b);
    return b;
}

inline Values curvature_from_radii(const PrincipalRadii& b) {
    Values K(b.first.size());
    for (std::size_t i = 0; i < K.size(); ++i)
        K[i] = b.second.empty() ? 1.0 / b.first[i] : 1.0 / (b.first[i] * b.second[i]);
    return K;
}

inline Values gauss_curvature(const SupportFn& u) { return curvature_from_radii(principal_radii(u)); }

/// Pointwise distance |u x + grad u| = sqrt(u^2 + |grad u|^2) at each normal node.
inline Values radial_at_normals(std::span<const double> u, std::span<const double> du) {
    Values r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = std::sqrt(u[i] * u[i] + du[i] * du[i]);
    return r;
}

/// Direction angle of the boundary point with normal x_i (unwrapped, so that it
/// lies within pi/2 of x_i).
inline Values direction_angles(std::span<const double> u, std::span<const double> du, const SphericalGrid& grid) {
    Values xi(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) xi[i] = grid.node(i) + std::atan2(du[i], u[i]);
    if (!grid.periodic()) {
        xi.front() = 0.0;
        xi.back() = std::numbers::pi;
    }
    return xi;
}

namespace detail {
inline void check_monotone(const Values& xi, const SphericalGrid& grid) {
    for (std::size_t i = 0; i + 1 < xi.size(); ++i) {
        if (!(xi[i + 1] > xi[i])) throw ConvexityLost("direction map x -> xi not increasing", i, xi[i + 1] - xi[i]);
    }
    if (grid.periodic() && !(xi.front() + 2.0 * std::numbers::pi > xi.back()))
        throw ConvexityLost("direction map x -> xi not increasing across the seam", xi.size() - 1,
                            xi.front() + 2.0 * std::numbers::pi - xi.back());
}

inline RadialFn resample_radial(const SupportFn& u, const Values& du, const Values& r_x, const Values& xi) {
    const auto& grid = u.grid();
    check_monotone(xi, grid);
    Values slope(r_x.size());
    // dr/dxi = r u' / u along the boundary
    for (std::size_t i = 0; i < slope.size(); ++i) slope[i] = r_x[i] * du[i] / u[i];
    const double period = grid.periodic() ? 2.0 * std::numbers::pi : 0.0;
    auto r = hermite_resample(xi, r_x, slope, grid.nodes(), period);
    for (std::size_t i = 0; i < r.size(); ++i)
        if (!(r[i] > 0.0) || !std::isfinite(r[i])) throw ConvexityLost("resampled radial function not positive", i, r[i]);
    return RadialFn(u.grid_ptr(), std::move(r));
}
}  // namespace detail

inline RadialFn radial_from_support(const SupportFn& u) {
    principal_radii(u);
    const auto du = deriv1_fourth(u.values(), u.grid());
    const auto r_x = radial_at_normals(u.values(), du);
    const auto xi = direction_angles(u.values(), du, u.grid());
    return detail::resample_radial(u, du, r_x, xi);
}

/// Discrete Legendre transform: u(x) = max_j r(xi_j) <x, xi_j>, refined by a
/// three-point parabola around the discrete maximiser.
inline SupportFn support_from_radial(const RadialFn& radial) {
    const auto& grid = radial.grid();
    const auto& r = radial.values();
    // Unfold to one full periodic circle of directions (n=2: the meridian plane).
    Values ring;
    double h = grid.spacing();
    if (grid.periodic()) {
        ring = r;
    } else {
        const std::size_t M = 2 * (grid.size() - 1);
        ring.resize(M);
        for (std::size_t k = 0; k < M; ++k) ring[k] = k < grid.size() ? r[k] : r[M - k];
    }
    const std::size_t M = ring.size();
    Values u(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.node(i);
        auto g = [&](std::size_t k) { return ring[k] * std::cos(x - h * static_cast<double>(k)); };
        std::size_t best = 0;
        double best_v = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < M; ++k) {
            const double v = g(k);
            if (v > best_v) {
                best_v = v;
                best = k;
            }
        }
        const double gm = g((best + M - 1) % M), gp = g((best + 1) % M);
        const double curv = gp + gm - 2.0 * best_v;
        double value = best_v;
        if (curv < 0.0) {
            const double slope = 0.5 * (gp - gm);
            value = best_v - slope * slope / (2.0 * curv);
        }
        u[i] = value;
    }
    return SupportFn(radial.grid_ptr(), std::move(u));
}

/// Everything derived from a support function that the measures and the flow need.
struct BodySnapshot {
    SupportFn u;
    RadialFn r;              ///< resampled onto the grid's direction nodes
    Values r_at_x;           ///< |X(x)| at each normal node
    Values du;               ///< u' (fourth-order differences)
    PrincipalRadii radii;
    Values K_of_x;
    Values xi_of_x;          ///< unwrapped direction angle of X(x)
    double kappa_min = 0.0;
    double kappa_max = 0.0;

    const SphericalGrid& grid() const { return u.grid(); }
    int dimension() const { return u.grid().dimension(); }
};

inline BodySnapshot make_snapshot(const SupportFn& u) {
    const auto& grid = u.grid();
    auto radii = raw_principal_radii(u.values(), deriv1(u.values(), grid), grid);
    check_radii(radii);
    // the boundary points use a more accurate gradient: an O(h^2) slope error would
    // leave a non-smooth O(h^3) error in the resampled r, and the dual curvature
    // (a second difference of 1/r) would only converge at first order
    auto du = deriv1_fourth(u.values(), grid);
    auto r_x = radial_at_normals(u.values(), du);
    auto xi = direction_angles(u.values(), du, grid);
    auto radial = detail::resample_radial(u, du, r_x, xi);
    auto K = curvature_from_radii(radii);
    const double kmin = 1.0 / radii.max();
    const double kmax = 1.0 / radii.min();
    return BodySnapshot{u, std::move(radial), std::move(r_x), std::move(du), std::move(radii), std::move(K),
                        std::move(xi), kmin, kmax};
}

/// Polar body: its support function is 1/r on the same grid.
inline BodySnapshot polar_dual(const BodySnapshot& body) {
    Values ustar(body.r.values());
    for (auto& v : ustar) v = 1.0 / v;
    return make_snapshot(SupportFn(body.u.grid_ptr(), std::move(ustar)));
}

/// max |u^{n+2} (u*)^{n+2} / (K K*) - 1| over paired points p . p* = 1.
inline double duality_product_check(const BodySnapshot& body, const BodySnapshot& dual) {
    const auto& grid = body.grid();
    const int n = grid.dimension();
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double ustar = 1.0 / body.r_at_x[i];
        double xi = body.xi_of_x[i];
        const double Kstar = interpolate_cubic(dual.K_of_x, grid, xi);
        const double prod = std::pow(body.u[i] * ustar, n + 2) / (body.K_of_x[i] * Kstar);
        worst = std::max(worst, std::abs(prod - 1.0));
    }
    return worst;
}

inline double duality_product_check(const BodySnapshot& body) { return duality_product_check(body, polar_dual(body)); }

/// (1/(n+1)) int u/K dx.
inline double volume(const BodySnapshot& body) {
    const auto& grid = body.grid();
    Values g(grid.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = body.u[i] / body.K_of_x[i];
    return integrate(g, grid) / (grid.dimension() + 1);
}

/// (1/(n+1)) int r^{n+1} dxi, the radial form of the same volume.
inline double volume_radial(const BodySnapshot& body) {
    const auto& grid = body.grid();
    const int n = grid.dimension();
    Values g(body.r.values());
    for (auto& v : g) v = std::pow(v, n + 1);
    return integrate(g, grid) / (n + 1);
}

/// int u / (r^{n+1} K) dx, the total measure of the pulled-back direction map.
inline double gauss_map_mass(const BodySnapshot& body) {
    const auto& grid = body.grid();
    const int n = grid.dimension();
    Values g(grid.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = body.u[i] / (std::pow(body.r_at_x[i], n + 1) * body.K_of_x[i]);
    return integrate(g, grid);
}

/// max |u(x) - u(-x)|.
inline double symmetry_defect(const SupportFn& u) {
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) worst = std::max(worst, std::abs(u[i] - u[u.grid().antipode(i)]));
    return worst;
}

/// Plain-text table: a header line `# n N t`, then `theta u r K b11 [b22]` per node.
inline void write_snapshot(std::ostream& os, const BodySnapshot& body, double t) {
    const auto& grid = body.grid();
    os << std::setprecision(17);
    os << "# n=" << grid.dimension() << " N=" << grid.size() << " t=" << t << '\n';
    os << (grid.dimension() == 1 ? "# theta u r K b11\n" : "# theta u r K b11 b22\n");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << grid.node(i) << ' ' << body.u[i] << ' ' << body.r[i] << ' ' << body.K_of_x[i] << ' '
           << body.radii.first[i];
        if (grid.dimension() == 2) os << ' ' << body.radii.second[i];
        os << '\n';
    }
}

struct SnapshotHeader {
    int n = 0;
    std::size_t N = 0;
    double t = 0.0;
};

/// Reads the u column (and header) of a table written by write_snapshot.
inline std::pair<SnapshotHeader, Values> read_snapshot(std::istream& is) {
    SnapshotHeader hdr;
    Values u;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!have_header && line.find("n=") != std::string::npos) {
                std::istringstream ls(line.substr(1));
                std::string tok;
                while (ls >> tok) {
                    if (tok.rfind("n=", 0) == 0) hdr.n = std::stoi(tok.substr(2));
                    else if (tok.rfind("N=", 0) == 0) hdr.N = std::stoul(tok.substr(2));
                    else if (tok.rfind("t=", 0) == 0) hdr.t = std::stod(tok.substr(2));
                }
                have_header = true;
            }
            continue;
        }
        std::istringstream ls(line);
        double theta = 0.0, value = 0.0;
        if (!(ls >> theta >> value)) throw ContractViolation("snapshot: malformed row: " + line);
        u.push_back(value);
    }
    if (!have_header) throw ContractViolation("snapshot: missing '# n=.. N=.. t=..' header");
    if (u.size() != hdr.N) throw ContractViolation("snapshot: row count does not match N");
    return {hdr, u};
}

}  // namespace gcflow
