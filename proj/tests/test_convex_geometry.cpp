#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "gcflow/bodies.hpp"
#include "gcflow/convex_geometry.hpp"
#include "gcflow/interpolation.hpp"

using namespace gcflow;

namespace {

constexpr double pi = std::numbers::pi;

double ellipse_support(double a, double b, double t) {
    return std::sqrt(a * a * std::cos(t) * std::cos(t) + b * b * std::sin(t) * std::sin(t));
}

double ellipse_polar(double a, double b, double xi) {
    return a * b / std::sqrt(b * b * std::cos(xi) * std::cos(xi) + a * a * std::sin(xi) * std::sin(xi));
}

}  // namespace

TEST(PrincipalRadii, SphereHasConstantRadii) {
    const auto g1 = make_grid(1, 64);
    for (double v : principal_radii(bodies::sphere(g1, 2.5)).first) EXPECT_NEAR(v, 2.5, 1e-12);

    const auto g2 = make_grid(2, 65);
    const auto b = principal_radii(bodies::sphere(g2, 1.0));
    ASSERT_EQ(b.second.size(), 65u);
    for (std::size_t i = 0; i < 65; ++i) {
        EXPECT_NEAR(b.first[i], 1.0, 1e-12);
        EXPECT_NEAR(b.second[i], 1.0, 1e-12);
    }
}

TEST(PrincipalRadii, EllipseMatchesClosedForm) {
    const auto g = make_grid(1, 512);
    const auto u = bodies::ellipse(g, 2, 1);
    const auto b = principal_radii(u);
    for (std::size_t i = 0; i < g->size(); ++i) {
        const double exact = 4.0 / std::pow(u[i], 3);
        EXPECT_LT(std::abs(b.first[i] / exact - 1.0), 5e-4);
    }
}

TEST(PrincipalRadii, NonConvexInputReportsWorstNode) {
    const auto g = make_grid(1, 300);
    const SupportFn u = bodies::fourier(g, 1.0, {0.0, 0.0, 0.5});
    try {
        principal_radii(u);
        FAIL() << "expected ConvexityLost";
    } catch (const ConvexityLost& e) {
        EXPECT_LT(e.worst_value(), -2.99);
        // b = 1 - 4 cos 3 theta is most negative at multiples of 2 pi / 3
        const double th = g->node(e.worst_node());
        EXPECT_NEAR(std::cos(3 * th), 1.0, 1e-3);
    }
}

TEST(GaussCurvature, SphereAndEllipse) {
    const auto g = make_grid(1, 512);
    for (double v : gauss_curvature(bodies::sphere(g, 2.0))) EXPECT_NEAR(v, 0.5, 1e-12);
    const auto g2 = make_grid(2, 65);
    for (double v : gauss_curvature(bodies::sphere(g2, 2.0))) EXPECT_NEAR(v, 0.25, 1e-12);

    const auto u = bodies::ellipse(g, 2, 1);
    const auto K = gauss_curvature(u);
    for (std::size_t i = 0; i < g->size(); ++i) EXPECT_LT(std::abs(K[i] / (std::pow(u[i], 3) / 4.0) - 1.0), 5e-4);
}

TEST(GaussCurvature, PerturbedCircleKeepsTotalRadius) {
    const auto g = make_grid(1, 256);
    const auto u = bodies::fourier(g, 1.0, {0.0, 0.1});
    const auto K = gauss_curvature(u);
    Values b(K.size());
    for (std::size_t i = 0; i < K.size(); ++i) {
        EXPECT_GT(K[i], 0.0);
        b[i] = 1.0 / K[i];
    }
    EXPECT_NEAR(integrate(b, *g), integrate(u.values(), *g), 1e-12);
}

TEST(RadialFromSupport, Sphere) {
    const auto g = make_grid(1, 128);
    const auto body = make_snapshot(bodies::sphere(g, 1.7));
    for (std::size_t i = 0; i < g->size(); ++i) {
        EXPECT_NEAR(body.r[i], 1.7, 1e-13);
        EXPECT_NEAR(body.xi_of_x[i], g->node(i), 1e-13);
    }
}

TEST(RadialFromSupport, EllipsePolarForm) {
    const auto g = make_grid(1, 512);
    const auto r = radial_from_support(bodies::ellipse(g, 2, 1));
    for (std::size_t i = 0; i < g->size(); ++i) EXPECT_NEAR(r[i], ellipse_polar(2, 1, g->node(i)), 1e-3);
}

TEST(RadialFromSupport, ShiftedDisk) {
    const auto g = make_grid(1, 512);
    const auto r = radial_from_support(bodies::shifted_disk(g, 0.3));
    for (std::size_t i = 0; i < g->size(); ++i) {
        const double xi = g->node(i);
        EXPECT_NEAR(r[i], 0.3 * std::cos(xi) + std::sqrt(1.0 - 0.09 * std::sin(xi) * std::sin(xi)), 1e-3);
    }
}

TEST(RadialFromSupport, RadiusBetweenSupportExtremes) {
    const auto g = make_grid(1, 512);
    for (const auto& u : {bodies::ellipse(g, 2, 1), bodies::shifted_disk(g, 0.5), bodies::fourier(g, 1, {0, 0.1, 0.02})}) {
        // the extremes of u can fall between nodes, so allow the sampling gap
        const double slack = g->spacing() * g->spacing();
        const auto [lo, hi] = std::minmax_element(u.values().begin(), u.values().end());
        for (double r : radial_from_support(u).values()) {
            EXPECT_GE(r, *lo - slack);
            EXPECT_LE(r, *hi + slack);
        }
    }
}

TEST(RadialFromSupport, SnapshotIsSelfConsistent) {
    const auto g = make_grid(1, 512);
    const auto body = make_snapshot(bodies::ellipse(g, 2, 1));
    for (std::size_t i = 0; i < g->size(); ++i)
        EXPECT_NEAR(interpolate_cubic(body.r.values(), *g, body.xi_of_x[i]), body.r_at_x[i], 1e-5);
}

TEST(SupportFromRadial, ConstantRadius) {
    const auto g = make_grid(1, 128);
    const auto u = support_from_radial(RadialFn(g, Values(128, 0.6)));
    for (double v : u.values()) EXPECT_NEAR(v, 0.6, 1e-13);
}

TEST(SupportFromRadial, EllipseRoundTrip) {
    const auto g = make_grid(1, 512);
    const auto u = bodies::ellipse(g, 2, 1);
    const auto back = support_from_radial(radial_from_support(u));
    for (std::size_t i = 0; i < g->size(); ++i) EXPECT_NEAR(back[i], u[i], 1e-3);
}

TEST(SupportFromRadial, ShiftedDiskFromPolarForm) {
    const auto g = make_grid(1, 512);
    const RadialFn r(g, sample(*g, [](double xi) {
                         return 0.3 * std::cos(xi) + std::sqrt(1.0 - 0.09 * std::sin(xi) * std::sin(xi));
                     }));
    const auto u = support_from_radial(r);
    for (std::size_t i = 0; i < g->size(); ++i) EXPECT_NEAR(u[i], 1.0 + 0.3 * std::cos(g->node(i)), 1e-3);
}

TEST(PolarDual, SphereInvertsRadius) {
    const auto g = make_grid(1, 64);
    const auto dual = polar_dual(make_snapshot(bodies::sphere(g, 4.0)));
    for (double v : dual.u.values()) EXPECT_NEAR(v, 0.25, 1e-14);
}

TEST(PolarDual, EllipseGivesPolarEllipse) {
    const auto g = make_grid(1, 512);
    const auto body = make_snapshot(bodies::ellipse(g, 2, 1));
    const auto dual = polar_dual(body);
    for (std::size_t i = 0; i < g->size(); ++i) {
        EXPECT_EQ(dual.u[i], 1.0 / body.r[i]);
        EXPECT_NEAR(dual.u[i], ellipse_support(0.5, 1.0, g->node(i)), 1e-3);
    }
    const auto back = polar_dual(dual);
    for (std::size_t i = 0; i < g->size(); ++i) EXPECT_NEAR(back.u[i], body.u[i], 2e-3);
}

TEST(DualityProduct, SphereIsExact) {
    const auto g = make_grid(1, 64);
    EXPECT_LT(duality_product_check(make_snapshot(bodies::sphere(g, 3.0))), 1e-13);
}

TEST(DualityProduct, EllipseSecondOrder) {
    const double d256 = duality_product_check(make_snapshot(bodies::ellipse(make_grid(1, 256), 2, 1)));
    const double d512 = duality_product_check(make_snapshot(bodies::ellipse(make_grid(1, 512), 2, 1)));
    EXPECT_LE(d512, 5e-3);
    EXPECT_GE(std::log2(d256 / d512), 1.9);
}

TEST(Volume, DiskBallEllipse) {
    EXPECT_NEAR(volume(make_snapshot(bodies::sphere(make_grid(1, 64), 1.0))), pi, 1e-10);
    EXPECT_NEAR(volume(make_snapshot(bodies::sphere(make_grid(2, 129), 1.0))), 4 * pi / 3, 1e-3);

    const auto body = make_snapshot(bodies::ellipse(make_grid(1, 512), 2, 1));
    EXPECT_NEAR(volume(body), 2 * pi, 1e-3);
    EXPECT_NEAR(volume_radial(body), 2 * pi, 1e-3);
    EXPECT_NEAR(volume(body), volume_radial(body), 1e-3);
}

TEST(Volume, BlaschkeSantaloForSymmetricBodies) {
    const auto g = make_grid(1, 512);
    for (const auto& u : {bodies::fourier(g, 1, {0, 0.1, 0, 0.02}), bodies::sphere(g, 0.3)}) {
        const auto body = make_snapshot(u);
        EXPECT_LE(volume(body) * volume(polar_dual(body)), pi * pi + 1e-6);
    }
}

TEST(Volume, BlaschkeSantaloEqualityCaseUnderRefinement) {
    // ellipses attain the bound, so the O(h^2) volume error shows as a small excess that must vanish
    auto excess = [](std::size_t N) {
        const auto body = make_snapshot(bodies::ellipse(make_grid(1, N), 2, 1));
        return volume(body) * volume(polar_dual(body)) - pi * pi;
    };
    const double e512 = excess(512), e1024 = excess(1024);
    EXPECT_NEAR(e512 / e1024, 4.0, 0.2);
    EXPECT_LE(excess(16384), 1e-6);
}

TEST(GaussMapMass, SphereIsExact) {
    EXPECT_NEAR(gauss_map_mass(make_snapshot(bodies::sphere(make_grid(1, 512), 1.3))), 2 * pi, 1e-6);
}

TEST(GaussMapMass, SpheroidWithinSurfaceTolerance) {
    const auto body = make_snapshot(bodies::ellipse(make_grid(2, 257), 1.3, 1.0));
    EXPECT_NEAR(gauss_map_mass(body), 4 * pi, 1e-3);
}

TEST(GaussMapMass, EllipseErrorIsSecondOrder) {
    // the 1e-6 target at N=512 is tracked by the acceptance run; here only the order
    const double e256 = std::abs(gauss_map_mass(make_snapshot(bodies::ellipse(make_grid(1, 256), 2, 1))) - 2 * pi);
    const double e512 = std::abs(gauss_map_mass(make_snapshot(bodies::ellipse(make_grid(1, 512), 2, 1))) - 2 * pi);
    EXPECT_NEAR(std::log2(e256 / e512), 2.0, 0.1);
}

TEST(Snapshot, WriteReadRoundTrip) {
    const auto g = make_grid(1, 32);
    const auto body = make_snapshot(bodies::ellipse(g, 1.5, 1));
    std::stringstream ss;
    write_snapshot(ss, body, 0.25);
    const auto [hdr, u] = read_snapshot(ss);
    EXPECT_EQ(hdr.n, 1);
    EXPECT_EQ(hdr.N, 32u);
    EXPECT_EQ(hdr.t, 0.25);
    ASSERT_EQ(u.size(), 32u);
    for (std::size_t i = 0; i < 32; ++i) EXPECT_EQ(u[i], body.u[i]);
}

TEST(Snapshot, SurfaceTableHasSecondRadius) {
    const auto body = make_snapshot(bodies::sphere(make_grid(2, 17), 1.0));
    std::stringstream ss;
    write_snapshot(ss, body, 0.0);
    std::string line;
    std::getline(ss, line);
    std::getline(ss, line);
    EXPECT_EQ(line, "# theta u r K b11 b22");
    std::getline(ss, line);
    std::istringstream row(line);
    int count = 0;
    double x;
    while (row >> x) ++count;
    EXPECT_EQ(count, 6);
}

TEST(SupportFn, RejectsNonPositiveValues) {
    const auto g = make_grid(1, 16);
    Values v(16, 1.0);
    v[3] = 0.0;
    EXPECT_THROW(SupportFn(g, v), ContractViolation);
    EXPECT_THROW(RadialFn(g, v), ContractViolation);
}
