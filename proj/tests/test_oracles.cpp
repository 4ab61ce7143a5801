#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gcflow/bodies.hpp"
#include "gcflow/convex_geometry.hpp"
#include "gcflow/measures.hpp"
#include "gcflow/oracles.hpp"
#include "smoothed_polygon.hpp"

using namespace gcflow;
using oracles::ParametricCurve;

namespace {

constexpr double pi = std::numbers::pi;

ParametricCurve square() {
    ParametricCurve c;
    c.points = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};  // vertices on the axes, side sqrt 2
    return c;
}

ParametricCurve axis_square() {
    ParametricCurve c;
    c.points = {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
    return c;
}

}  // namespace

TEST(CurvatureOracle, Circle) {
    const double rho = 1.7;
    const auto c = ParametricCurve::sample([&](double s) { return oracles::Point{rho * std::cos(s), rho * std::sin(s)}; },
                                           10000);
    for (double k : oracles::parametric_curvature_oracle(c)) EXPECT_NEAR(k, 1.0 / rho, 1e-6);
}

TEST(CurvatureOracle, Ellipse) {
    const double a = 2, b = 1;
    const auto c = ParametricCurve::sample([&](double s) { return oracles::Point{a * std::cos(s), b * std::sin(s)}; },
                                           10000);
    const auto kappa = oracles::parametric_curvature_oracle(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double s = 2 * pi * static_cast<double>(i) / 10000.0;
        const double exact = a * b / std::pow(a * a * std::sin(s) * std::sin(s) + b * b * std::cos(s) * std::cos(s), 1.5);
        EXPECT_NEAR(kappa[i], exact, 1e-5);
    }
}

TEST(CurvatureOracle, OpenCurveEndsAreUndefined) {
    auto c = ParametricCurve::sample([](double s) { return oracles::Point{std::cos(s), std::sin(s)}; }, 100);
    c.points.resize(50);
    c.closed = false;
    const auto k = oracles::parametric_curvature_oracle(c);
    EXPECT_TRUE(std::isnan(k.front()));
    EXPECT_TRUE(std::isnan(k.back()));
    EXPECT_NEAR(k[25], 1.0, 1e-3);
}

TEST(CurvatureOracle, RejectsNonConvexCurves) {
    ParametricCurve c;
    c.points = {{0, 0}, {2, 0}, {1, 0.2}, {2, 2}, {0, 2}};
    EXPECT_THROW(oracles::parametric_curvature_oracle(c), ContractViolation);
    ParametricCurve cw = axis_square();
    std::reverse(cw.points.begin(), cw.points.end());
    EXPECT_THROW(oracles::parametric_curvature_oracle(cw), ContractViolation);
}

TEST(PolygonCurvature, SquareTurnsOnce) {
    const auto sq = axis_square();
    double total = 0;
    for (std::size_t i = 0; i < 4; ++i) total += oracles::detail::turning(sq, i);
    EXPECT_NEAR(total, 2 * pi, 1e-12);
    EXPECT_NEAR(oracles::polygon_integral_gauss_curvature(sq, 0, 2 * pi), 2 * pi, 1e-12);
}

TEST(PolygonCurvature, QuadrantAroundOneVertex) {
    EXPECT_NEAR(oracles::polygon_integral_gauss_curvature(square(), -pi / 4, pi / 4), pi / 2, 1e-12);
    EXPECT_NEAR(oracles::polygon_integral_gauss_curvature(axis_square(), 0, pi / 2), pi / 2, 1e-12);
    // wrapping window
    EXPECT_NEAR(oracles::polygon_integral_gauss_curvature(axis_square(), 1.5 * pi, 2.2 * pi), pi / 2, 1e-12);
}

TEST(PolygonCurvature, AnyConvexPolygonSumsToTwoPi) {
    const auto poly = testing_support::InscribedPolygon::random(37, 11);
    ParametricCurve c;
    for (double a : poly.angles) c.points.push_back({std::cos(a), std::sin(a)});
    EXPECT_NEAR(oracles::polygon_integral_gauss_curvature(c, 0, 2 * pi), 2 * pi, 1e-12);
}

TEST(ReferenceQuadrature, BasicIntegrals) {
    EXPECT_NEAR(oracles::reference_quadrature([](double) { return 1.0; }, 1), 2 * pi, 1e-12);
    EXPECT_NEAR(oracles::reference_quadrature([](double t) { return std::sin(t); }, 2), 2.0, 1e-12);
    // the ellipse log-integral has the closed form 2 pi log((a+b)/2)
    const double v = oracles::reference_quadrature(
        [](double t) { return std::log(std::sqrt(4 * std::cos(t) * std::cos(t) + std::sin(t) * std::sin(t))); }, 1);
    EXPECT_NEAR(v, 2 * pi * std::log(1.5), 1e-10);
}

TEST(ReferenceQuadrature, AgreesWithGridIntegration) {
    const SphericalGrid g(1, 512);
    auto trig = [](double t) { return 1.3 + 0.2 * std::cos(3 * t) - 0.7 * std::sin(11 * t) + std::cos(40 * t); };
    EXPECT_NEAR(integrate(sample(g, trig), g), oracles::reference_quadrature(trig, 1), 1e-6);
}

TEST(OracleAgreement, EllipseCurvature) {
    // compare at the normal angles of the grid: the point with normal x has parameter atan2(b sin x, a cos x)
    const double a = 2, b = 1;
    const auto g = make_grid(1, 512);
    const auto K = gauss_curvature(bodies::ellipse(g, a, b));
    ParametricCurve c;
    const int sub = 8;
    for (std::size_t i = 0; i < g->size(); ++i) {
        const double x0 = g->node(i), x1 = x0 + g->spacing();
        const double s0 = std::atan2(b * std::sin(x0), a * std::cos(x0));
        double s1 = std::atan2(b * std::sin(x1), a * std::cos(x1));
        if (s1 < s0) s1 += 2 * pi;
        for (int k = 0; k < sub; ++k) {
            const double s = s0 + (s1 - s0) * k / sub;
            c.points.push_back({a * std::cos(s), b * std::sin(s)});
        }
    }
    const auto kappa = oracles::parametric_curvature_oracle(c);
    for (std::size_t i = 0; i < g->size(); ++i) EXPECT_LT(std::abs(K[i] / kappa[i * sub] - 1.0), 5e-4);
}

TEST(OracleAgreement, SmoothedPolygon) {
    const auto poly = testing_support::InscribedPolygon::random(50, 7);
    const auto g = make_grid(1, 4096);
    const auto body = make_snapshot(SupportFn(g, poly.smoothed_support(g->nodes(), 0.02, 0.01)));
    const auto dual = polar_dual(body);
    ParametricCurve c;
    for (double a : poly.angles) c.points.push_back({std::cos(a), std::sin(a)});

    // normals of the polar body are the radial directions of the original one
    EXPECT_NEAR(dual_curvature_measure(dual, 0, {{0, 2 * pi}}), 2 * pi, 2e-2);
    for (std::size_t j = 0; j < 50; j += 3) {
        const double lo = poly.edge_direction(j);
        double hi = poly.edge_direction((j + 7) % 50);
        while (hi < lo) hi += 2 * pi;
        const double expected = oracles::polygon_integral_gauss_curvature(c, lo, hi);
        EXPECT_NEAR(dual_curvature_measure(dual, 0, {{lo, hi}}), expected, 2e-2) << "window " << lo << ' ' << hi;
    }
}
