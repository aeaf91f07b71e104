#include <gtest/gtest.h>

#include <cmath>

#include "nullgeo/catalog.hpp"
#include "nullgeo/errors.hpp"
#include "nullgeo/lightlike.hpp"

using namespace nullgeo;

namespace {

const CatalogEntry& entry(std::string_view name) { return builtin_catalog().find(name); }

HypersurfaceSpec surface(const CatalogEntry& e, std::string_view F) {
    return {std::string(F), parse(F, e.metric.chart, e.metric.param_names()), {}};
}

}  // namespace

TEST(Lightlike, NullPlaneAndCone) {
    const auto& e = entry("minkowski");
    for (const char* name : {"null-plane", "null-cone"}) {
        const auto s = e.surface(name);
        ASSERT_FALSE(s.seeds.empty());
        const auto rep = lightlike_test(e.metric, {}, s, s.seeds[0]);
        EXPECT_TRUE(rep.lightlike) << name;
        EXPECT_LT(std::abs(rep.normal_norm), 1e-12 * rep.scale + 1e-15) << name;
    }
}

TEST(Lightlike, SpacelikeAndTimelikeSurfacesAreNot) {
    const auto& e = entry("minkowski");
    const auto t_slice = surface(e, "t - 1");
    const auto rep = lightlike_test(e.metric, {}, t_slice, {1, 0.2, 0.3, 0});
    EXPECT_FALSE(rep.lightlike);
    EXPECT_NEAR(rep.normal_norm, 1.0, 1e-15);
    const auto wall = surface(e, "x - 2");
    EXPECT_FALSE(lightlike_test(e.metric, {}, wall, {0, 2, 0, 0}).lightlike);
}

TEST(Lightlike, OffSurfaceAndCriticalPointsThrow) {
    const auto& e = entry("minkowski");
    const auto plane = e.surface("null-plane");
    EXPECT_THROW(lightlike_test(e.metric, {}, plane, {0, 1, 0, 0}), SurfaceError);
    const auto crit = surface(e, "(t - x)^2");
    EXPECT_THROW(lightlike_test(e.metric, {}, crit, {0.5, 0.5, 0, 0}), SurfaceError);
    EXPECT_THROW(foliation_check(e.metric, {}, surface(e, "t - 1"), {1, 0, 0, 0}), SurfaceError);
}

TEST(Lightlike, HorizonIsLightlikeForAnyMass) {
    const auto& e = entry("eddington-finkelstein");
    for (double M : {0.5, 1.0, 3.0}) {
        const ParamMap p{{"M", M}};
        const auto s = e.surface("horizon", p);
        const auto rep = lightlike_test(e.metric, resolve_params(e.metric, p), s, s.seeds[0]);
        EXPECT_TRUE(rep.lightlike) << M;
    }
    // r = 3M is not
    const auto off = surface(e, "r - 3*M");
    EXPECT_FALSE(lightlike_test(e.metric, e.metric.params, off, {0, 3, 1.2, 0}).lightlike);
}

TEST(Lightlike, GeneratorIsTangentAndNull) {
    const auto& e = entry("minkowski");
    const auto s = e.surface("null-cone");
    const Vec4 x = s.seeds[0];
    const Vec4 l = generator_field(e.metric, {}, s, x);
    const auto j = eval_jet2(s.F, x, {});
    EXPECT_NEAR(euclid_dot(j.grad, l), 0.0, 1e-14);
    const Mat4 g = metric_value(e.metric, x, {});
    EXPECT_NEAR(pair(g, l, l), 0.0, 1e-14);
    // the cone generators are straight lines: l.dl is parallel to l
    const Vec4 dl = generator_derivative(e.metric, {}, s, x);
    Christoffel flat{};
    EXPECT_LT(pregeodesic_residual(flat, l, dl), 1e-14);
}

TEST(Lightlike, GeneratorDerivativeMatchesFiniteDifference) {
    const auto& e = entry("eddington-finkelstein");
    const auto s = surface(e, "r - 2*M + 0.01*sin(th)*v");
    const Vec4 x{0.3, 3.0, 1.1, 0.4};
    const Vec4 l = generator_field(e.metric, e.metric.params, s, x);
    const Vec4 dl = generator_derivative(e.metric, e.metric.params, s, x);
    const double h = 1e-5;
    const Vec4 fp = generator_field(e.metric, e.metric.params, s, x + h * l);
    const Vec4 fm = generator_field(e.metric, e.metric.params, s, x - h * l);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(dl[i], (fp[i] - fm[i]) / (2 * h), 1e-8);
}

TEST(Foliation, CatalogSurfacesAreFoliatedByNullPregeodesics) {
    struct Case {
        const char* metric;
        const char* surface;
    };
    for (const auto& c : {Case{"minkowski", "null-plane"}, Case{"minkowski", "null-cone"},
                          Case{"eddington-finkelstein", "horizon"}}) {
        const auto& e = entry(c.metric);
        const auto s = e.surface(c.surface);
        const auto rep = foliation_check(e.metric, e.metric.params, s, s.seeds[0]);
        EXPECT_TRUE(rep.pass) << c.metric << " " << c.surface;
        EXPECT_LT(rep.max_F, 1e-7);
        EXPECT_LT(rep.max_null, 1e-8);
        EXPECT_LT(rep.max_pregeodesic, 1e-6);
        EXPECT_GE(rep.curve.samples.back().state.s, 20.0);
    }
}

TEST(Foliation, RescaledDefiningFunctionStillWorks) {
    // F and phi * F describe the same surface; the generator changes by scale only
    const auto& e = entry("minkowski");
    HypersurfaceSpec s = surface(e, "(t - x)*exp(0.3*y)");
    const Vec4 seed{0.3, 0.3, 0.1, -0.2};
    EXPECT_TRUE(lightlike_test(e.metric, {}, s, seed).lightlike);
    const auto rep = foliation_check(e.metric, {}, s, seed);
    EXPECT_TRUE(rep.pass);
}

TEST(Foliation, InducedMetricIsDegenerateAlongGenerator) {
    const auto& e = entry("eddington-finkelstein");
    const auto s = e.surface("horizon");
    const auto k = induced_metric_kernel(e.metric, e.metric.params, s, s.seeds[0]);
    EXPECT_LT(std::abs(k.eigenvalues[0]), 1e-12);
    EXPECT_GT(std::abs(k.eigenvalues[1]), 1e-3);
    EXPECT_LT(k.misalignment, 1e-10);
    const auto& m = entry("minkowski");
    const auto t_slice = surface(m, "t - 1");
    const auto kt = induced_metric_kernel(m.metric, {}, t_slice, {1, 0, 0, 0});
    EXPECT_NEAR(std::abs(kt.eigenvalues[0]), 1.0, 1e-12);
}

TEST(Lightlike, GeneratorDirections) {
    const auto& m = entry("minkowski");
    const Vec4 lp = generator_field(m.metric, {}, m.surface("null-plane"), {0.3, 0.3, 0.1, -0.2});
    EXPECT_NEAR(lp[0], lp[1], 1e-15);
    EXPECT_NE(lp[0], 0.0);
    EXPECT_EQ(lp[2], 0.0);
    EXPECT_EQ(lp[3], 0.0);
    // cone: radial null direction (r, x, y, z) up to scale
    const Vec4 x{3, 1, 2, 2};
    const Vec4 lc = generator_field(m.metric, {}, m.surface("null-cone"), x);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(lc[i] / lc[0], x[i] / 3.0, 1e-15);
    // EF horizon: along the v direction
    const auto& ef = entry("eddington-finkelstein");
    const auto h = ef.surface("horizon");
    const Vec4 lh = generator_field(ef.metric, ef.metric.params, h, h.seeds[0]);
    EXPECT_GT(std::abs(lh[0]), 0.1);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_LT(std::abs(lh[i]), 1e-9 * std::abs(lh[0]));
}
