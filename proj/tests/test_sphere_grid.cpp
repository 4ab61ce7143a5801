#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gcflow/sphere_grid.hpp"

using namespace gcflow;

namespace {

constexpr double pi = std::numbers::pi;

double max_abs_diff(const Values& a, const Values& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// least-squares slope of log(err) against log(h)
double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

TEST(SphericalGrid, CircleNodesAndWeights) {
    const SphericalGrid g(1, 64);
    EXPECT_EQ(g.size(), 64u);
    EXPECT_DOUBLE_EQ(g.node(0), 0.0);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g.node(i) - g.node(i - 1), g.spacing(), 1e-14);
    double w = 0.0;
    for (double x : g.weights()) w += x;
    EXPECT_NEAR(w, 2 * pi, 1e-13);
}

TEST(SphericalGrid, AxisymmetricEndpointsArePoles) {
    const SphericalGrid g(2, 129);
    EXPECT_DOUBLE_EQ(g.node(0), 0.0);
    EXPECT_DOUBLE_EQ(g.node(128), pi);
    double w = 0.0;
    for (double x : g.weights()) w += x;
    EXPECT_NEAR(w / (4 * pi) - 1.0, 0.0, 1e-3);
}

TEST(SphericalGrid, RejectsBadShapes) {
    EXPECT_THROW(SphericalGrid(1, 8), ContractViolation);
    EXPECT_THROW(SphericalGrid(3, 64), ContractViolation);
}

TEST(Deriv, SizeMismatchIsContractViolation) {
    const SphericalGrid g(1, 32);
    const Values short_values(31, 1.0);
    EXPECT_THROW(deriv1(short_values, g), ContractViolation);
    EXPECT_THROW(deriv2(short_values, g), ContractViolation);
    EXPECT_THROW(integrate(short_values, g), ContractViolation);
}

TEST(Deriv, ConstantsAreAnnihilated) {
    for (int n : {1, 2}) {
        const SphericalGrid g(n, 97 + (n == 1 ? 1 : 0));
        const Values c(g.size(), 3.7);
        for (double v : deriv1(c, g)) EXPECT_EQ(v, 0.0);
        for (double v : deriv2(c, g)) EXPECT_NEAR(v, 0.0, 1e-10);
    }
}

TEST(Deriv, FirstDerivativeOfSine) {
    const SphericalGrid g(1, 256);
    const auto d = deriv1(sample(g, [](double t) { return std::sin(t); }), g);
    // the error is exactly (1 - sin(h)/h) cos(theta), about h^2/6 = 1.004e-4 here
    const double h = g.spacing();
    EXPECT_LE(max_abs_diff(d, sample(g, [](double t) { return std::cos(t); })), h * h / 6);
}

TEST(Deriv, AxisymmetricFirstDerivativeVanishesAtPoles) {
    const SphericalGrid g(2, 129);
    const auto d = deriv1(sample(g, [](double t) { return std::cos(t); }), g);
    EXPECT_EQ(d.front(), 0.0);
    EXPECT_EQ(d.back(), 0.0);
    const double h = g.spacing();
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LE(std::abs(d[i] + std::sin(g.node(i))), h * h);
}

TEST(Deriv, SecondDerivativeOfCos2) {
    const SphericalGrid g(1, 256);
    const auto d = deriv2(sample(g, [](double t) { return std::cos(2 * t); }), g);
    EXPECT_LT(max_abs_diff(d, sample(g, [](double t) { return -4 * std::cos(2 * t); })), 4e-3);
}

TEST(Deriv, SineTruncationErrorScalesLikeHSquared) {
    // |g'' + g| <= C h^2 with C fitted from the three grids
    std::vector<double> ratio;
    for (std::size_t N : {64u, 128u, 256u}) {
        const SphericalGrid g(1, N);
        const auto s = sample(g, [](double t) { return std::sin(t); });
        const auto d = deriv2(s, g);
        double worst = 0.0;
        for (std::size_t i = 0; i < N; ++i) worst = std::max(worst, std::abs(d[i] + s[i]));
        ratio.push_back(worst / (g.spacing() * g.spacing()));
    }
    // the constant is 1/12 for the central second difference of sin
    for (double C : ratio) EXPECT_NEAR(C, 1.0 / 12.0, 2e-3);
}

TEST(Integrate, ConstantsAndLowModes) {
    const SphericalGrid c(1, 100);
    EXPECT_EQ(integrate(Values(100, 1.0), c), 2 * pi);
    EXPECT_NEAR(integrate(sample(c, [](double t) { return std::cos(t); }), c), 0.0, 1e-12);

    const SphericalGrid s(2, 129);
    EXPECT_NEAR(integrate(Values(129, 1.0), s) / (4 * pi) - 1.0, 0.0, 1e-3);
}

TEST(Convergence, SecondOrderUnderRefinement) {
    std::vector<double> hs, e1, e2, e3;
    for (std::size_t N : {64u, 128u, 256u, 512u}) {
        const SphericalGrid g(1, N);
        hs.push_back(g.spacing());
        const auto f = sample(g, [](double t) { return std::exp(std::sin(t)); });
        const auto d1 = deriv1(f, g);
        const auto d2 = deriv2(f, g);
        double m1 = 0, m2 = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const double t = g.node(i), e = std::exp(std::sin(t));
            m1 = std::max(m1, std::abs(d1[i] - std::cos(t) * e));
            m2 = std::max(m2, std::abs(d2[i] - (std::cos(t) * std::cos(t) - std::sin(t)) * e));
        }
        e1.push_back(m1);
        e2.push_back(m2);

        // the periodic rule is spectral on S^1, so the quadrature order is taken on S^2
        const SphericalGrid s(2, N + 1);
        const double exact = 2 * pi * (std::exp(1.0) - std::exp(-1.0));
        e3.push_back(std::abs(integrate(sample(s, [](double t) { return std::exp(std::cos(t)); }), s) - exact));
    }
    for (const auto* e : {&e1, &e2, &e3}) {
        const double slope = loglog_slope(hs, *e);
        EXPECT_GE(slope, 1.9);
        EXPECT_LE(slope, 2.5);
    }
}
