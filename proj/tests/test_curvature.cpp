#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nullgeo/catalog.hpp"
#include "nullgeo/curvature.hpp"
#include "nullgeo/errors.hpp"

using namespace nullgeo;

namespace {

const MetricSpec& metric(std::string_view name) { return builtin_catalog().find(name).metric; }

Curvature at(std::string_view name, const Vec4& x, const ParamMap& p = {}) {
    return compute_curvature(metric_jet(metric(name), x, p));
}

double max_diff(const Rank4& a, const Rank4& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < 256; ++k) m = std::max(m, std::abs(a.v[k] - b.v[k]));
    return m;
}

}  // namespace

TEST(Metric, SchwarzschildEquatorValues) {
    const auto jet = metric_jet(metric("schwarzschild"), {0, 4, std::numbers::pi / 2, 0});
    EXPECT_NEAR(determinant(jet.g), -256.0, 1e-10);
    EXPECT_EQ(signature(jet.g), (std::pair<int, int>{1, 3}));
    const auto gamma = christoffel(jet);
    // G^t_{tr} = M / (r^2 (1 - 2M/r))
    EXPECT_NEAR(gamma(0, 0, 1), 0.125, 1e-14);
    EXPECT_NEAR(gamma(0, 1, 0), 0.125, 1e-14);
    // G^r_{th th} = -(r - 2M)
    EXPECT_NEAR(gamma(1, 2, 2), -2.0, 1e-14);
    // G^th_{r th} = 1/r
    EXPECT_NEAR(gamma(2, 1, 2), 0.25, 1e-14);
}

TEST(Metric, InverseAndErrors) {
    const auto jet = metric_jet(metric("kerr"), {0, 5, 1.0, 0.2});
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < 4; ++k) s += jet.g[i][k] * jet.g_inv[k][j];
            EXPECT_NEAR(s, i == j ? 1.0 : 0.0, 1e-13);
        }
    EXPECT_THROW(metric_jet(metric("schwarzschild"), {0, 1.5, 1.0, 0}), DomainError);
    EXPECT_THROW(metric_jet(metric("schwarzschild"), {0, 6, 1.0, 0}, {{"Q", 1.0}}), Error);
    const auto riemannian =
        MetricSpec::from_strings("euclid", {"t", "x", "y", "z"}, {}, {{{0, 0}, "1"}, {{1, 1}, "1"}, {{2, 2}, "1"}, {{3, 3}, "1"}});
    EXPECT_THROW(metric_jet(riemannian, {0, 0, 0, 0}), SignatureError);
    const auto degenerate = MetricSpec::from_strings("deg", {"t", "x", "y", "z"}, {}, {{{0, 0}, "1"}, {{1, 1}, "-1"}, {{2, 2}, "-1"}});
    EXPECT_THROW(metric_jet(degenerate, {0, 0, 0, 0}), DegenerateMetricError);
    // det g = -1 everywhere, but |g_uu| ~ 1e4 far out: anisotropic, not degenerate
    EXPECT_NO_THROW(metric_jet(metric("pp-wave"), {0, 0, 0.5, 100}));
    const auto nearly = MetricSpec::from_strings("near", {"t", "x", "y", "z"}, {},
                                                 {{{0, 0}, "1"}, {{1, 1}, "-1"}, {{2, 2}, "-1"}, {{3, 3}, "-1e-13"}});
    EXPECT_THROW(metric_jet(nearly, {0, 0, 0, 0}), DegenerateMetricError);
}

TEST(Curvature, MinkowskiIsFlat) {
    const auto c = at("minkowski", {0.3, -1, 2, 0.5});
    EXPECT_EQ(c.riemann.lowered.max_abs(), 0.0);
    EXPECT_EQ(c.weyl.lowered.max_abs(), 0.0);
}

TEST(Curvature, MinkowskiInSphericalChartIsFlat) {
    const auto spec = MetricSpec::from_strings("sph", {"t", "r", "th", "ph"}, {},
                                               {{{0, 0}, "1"}, {{1, 1}, "-1"}, {{2, 2}, "-r^2"}, {{3, 3}, "-r^2*sin(th)^2"}});
    const auto c = compute_curvature(metric_jet(spec, {0, 2.5, 0.7, 1.1}));
    EXPECT_GT(max_abs(c.jet.dg[1]), 0.1);
    EXPECT_LT(c.riemann.lowered.max_abs(), 1e-13);
}

TEST(Curvature, SchwarzschildKretschmann) {
    for (double r : {3.0, 4.0, 7.5, 20.0}) {
        const auto c = at("schwarzschild", {0, r, 1.1, 0.4});
        EXPECT_NEAR(kretschmann(c.riemann, c.jet) / (48.0 / std::pow(r, 6)), 1.0, 1e-12) << r;
    }
    // scales as M^2 at fixed r/M
    const auto c = at("schwarzschild", {0, 8, 1.1, 0.4}, {{"M", 2.0}});
    EXPECT_NEAR(kretschmann(c.riemann, c.jet) / (48.0 * 4.0 / std::pow(8.0, 6)), 1.0, 1e-12);
}

TEST(Curvature, MetricCompatibility) {
    for (const auto& e : builtin_catalog().entries()) {
        const auto jet = metric_jet(e.metric, e.sample);
        EXPECT_LT(metric_compatibility_residual(jet, christoffel(jet)), 1e-12 * (1.0 + max_abs(jet.dg[0]) + max_abs(jet.dg[1]) + max_abs(jet.dg[2]) + max_abs(jet.dg[3])))
            << e.metric.name;
    }
}

TEST(Curvature, SymmetriesOnCatalog) {
    for (const auto& e : builtin_catalog().entries()) {
        const auto c = compute_curvature(metric_jet(e.metric, e.sample));
        const double scale = std::max(1.0, c.riemann.lowered.max_abs());
        EXPECT_LT(riemann_symmetry_residual(c.riemann.lowered), 1e-12 * scale) << e.metric.name;
        EXPECT_LT(riemann_symmetry_residual(c.weyl.lowered), 1e-12 * scale) << e.metric.name;
        EXPECT_LT(weyl_trace_residual(c.weyl, c.jet), 1e-12 * scale) << e.metric.name;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(c.ricci.ricci[i][j], c.ricci.ricci[j][i], 1e-12 * scale);
    }
}

TEST(Curvature, VacuumWeylEqualsRiemann) {
    for (const char* name : {"schwarzschild", "kerr", "pp-wave", "kasner", "eddington-finkelstein"}) {
        const auto& e = builtin_catalog().find(name);
        const auto c = compute_curvature(metric_jet(e.metric, e.sample));
        const double scale = c.riemann.lowered.max_abs();
        EXPECT_GT(scale, 1e-3) << name;
        EXPECT_LT(max_abs(c.ricci.ricci), 1e-12 * scale) << name;
        EXPECT_LT(max_diff(c.weyl.lowered, c.riemann.lowered), 1e-12 * scale) << name;
    }
}

TEST(Curvature, DeSitterIsMaximallySymmetric) {
    // R_ijkl = k (g_ik g_jl - g_il g_jk) with constant k, so Weyl vanishes
    const auto c = at("de-sitter", {0.2, 0.1, -0.3, 0.4});
    const double k = c.riemann.lowered(0, 1, 0, 1) / (c.jet.g[0][0] * c.jet.g[1][1]);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t b = 0; b < 4; ++b)
                    EXPECT_NEAR(c.riemann.lowered(i, j, a, b),
                                k * (c.jet.g[i][a] * c.jet.g[j][b] - c.jet.g[i][b] * c.jet.g[j][a]), 1e-13);
    EXPECT_NEAR(std::abs(k), 0.25, 1e-13);
    EXPECT_LT(c.weyl.lowered.max_abs(), 1e-13);
}

TEST(Curvature, RicciIsTraceOfMixedRiemann) {
    const auto c = at("conformally-flat-exp", {0.1, 0.3, 0.2, 0.1});
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < 4; ++i) s += c.riemann.mixed(i, j, k, i);
            EXPECT_NEAR(c.ricci.ricci[j][k], s, 1e-13);
        }
    double scalar = 0.0;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k) scalar += c.jet.g_inv[j][k] * c.ricci.ricci[j][k];
    EXPECT_NEAR(c.ricci.scalar, scalar, 1e-13);
}

TEST(CurvatureProperty, WeylIsConformallyInvariant) {
    // C^i_{jkl} of sigma g equals that of g
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    const auto& e = builtin_catalog().find("kerr");
    const Chart& ch = e.metric.chart;
    for (int trial = 0; trial < 5; ++trial) {
        const std::string s = std::to_string(1.0 + std::abs(u(rng))) + "*exp(" + std::to_string(u(rng)) + "*t + " +
                              std::to_string(u(rng)) + "*cos(th))";
        const Expression sigma = parse(s, ch, {});
        const Vec4 x{u(rng), 6.0 + 10 * std::abs(u(rng)), 1.2 + u(rng), u(rng)};
        const auto c = compute_curvature(metric_jet(e.metric, x));
        const auto cs = compute_curvature(metric_jet(e.metric.rescaled(sigma), x));
        const double scale = c.weyl.mixed.max_abs();
        EXPECT_LT(max_diff(c.weyl.mixed, cs.weyl.mixed), 1e-10 * scale) << s;
    }
}

TEST(CurvatureProperty, ConformalConnectionMatchesRescaledMetric) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (const char* name : {"schwarzschild", "kerr", "minkowski"}) {
        const auto& e = builtin_catalog().find(name);
        for (const std::string& s : std::vector<std::string>{"3", "exp(0.2*t)", "1 + 0.1*" + e.metric.chart[1] + "^2"}) {
            const Expression sigma = parse(s, e.metric.chart, {});
            Vec4 x = e.sample;
            x[0] += u(rng);
            x[2] += 0.2 * u(rng);
            const auto jet = metric_jet(e.metric, x);
            const auto bar = conformal_connection(jet, sigma, e.metric.params);
            const auto direct = christoffel(metric_jet(e.metric.rescaled(sigma), x));
            for (std::size_t k = 0; k < 64; ++k) EXPECT_NEAR(bar.gamma.v[k], direct.gamma.v[k], 1e-13) << name << " " << s;
        }
    }
}

TEST(Curvature, ConformalConnectionRejectsNonPositiveSigma) {
    const auto& e = builtin_catalog().find("minkowski");
    const auto jet = metric_jet(e.metric, {0, 0, 0, 0});
    EXPECT_THROW(conformal_connection(jet, parse("t - 1", e.metric.chart, {}), {}), DomainError);
}
