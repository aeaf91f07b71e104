#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "nullgeo/catalog.hpp"
#include "nullgeo/errors.hpp"
#include "nullgeo/report.hpp"

using namespace nullgeo;

namespace {

PointReport report_for(std::string_view name) {
    const auto& e = builtin_catalog().find(name);
    const ParamMap p = resolve_params(e.metric, {});
    return make_point_report(e.metric.name, p, classify(e.metric, e.sample, p));
}

}  // namespace

TEST(Report, JsonFieldsAreStable) {
    const Json j = to_json(report_for("schwarzschild"));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"metric", "point", "params", "ok", "petrov_type", "roots", "weyl_scalars_abs",
                                              "weyl_scalars", "principal_directions", "diagnostics", "tolerances"}));
    EXPECT_EQ(j["petrov_type"], "D");
    EXPECT_EQ(j["roots"].size(), 2u);
    EXPECT_EQ(j["roots"][0]["multiplicity"], 2);
    EXPECT_EQ(j["weyl_scalars"].size(), 5u);
    EXPECT_EQ(j["params"]["M"], 1.0);
    for (const char* k : {"frame_condition_residual", "conjugacy_residual", "root_margin", "backward_error", "weyl_scale",
                          "curvature_scale", "noise_floor", "warnings"})
        EXPECT_TRUE(j["diagnostics"].contains(k)) << k;
    EXPECT_EQ(j["tolerances"]["cluster_radius"], 1e-4);
}

TEST(Report, RoundTripIsExact) {
    for (const char* name : {"schwarzschild", "kerr", "pp-wave", "kasner", "minkowski"}) {
        const PointReport r = report_for(name);
        const std::string text = dump(to_json(r));
        const PointReport back = point_report_from_json(Json::parse(text));
        EXPECT_TRUE(back == r) << name;
        EXPECT_EQ(dump(to_json(back)), text) << name;
    }
}

TEST(Report, FailedPointRoundTrip) {
    const auto r = failed_point_report("schwarzschild", {0, 1, 1, 0}, {{"M", 1.0}}, "outside domain", {});
    const Json j = to_json(r);
    EXPECT_EQ(j["ok"], false);
    EXPECT_EQ(j["error"], "outside domain");
    EXPECT_FALSE(j.contains("petrov_type"));
    EXPECT_TRUE(point_report_from_json(j) == r);
}

TEST(Report, MalformedJsonThrows) {
    EXPECT_THROW(point_report_from_json(Json::parse(R"({"metric": "x"})")), Error);
    EXPECT_THROW(point_report_from_json(Json::parse(R"({"metric": "x", "point": [1, 2], "params": {}, "ok": false,
        "error": "", "tolerances": {"cluster_radius": 1, "weyl_zero": 1, "conjugacy": 1}})")),
                 Error);
}

TEST(Report, DumpIsDeterministicAndFullPrecision) {
    Json j;
    j["a"] = 0.1;
    j["b"] = -0.0;
    j["c"] = std::numeric_limits<double>::infinity();
    j["d"] = Json::array({1.0, 2.5});
    j["e"] = "text";
    j["f"] = 3;
    const std::string one_line = dump(j, -1);
    EXPECT_EQ(one_line, R"({"a":0.10000000000000001,"b":0,"c":null,"d":[1,2.5],"e":"text","f":3})");
    EXPECT_EQ(Json::parse(one_line)["a"].get<double>(), 0.1);
    const std::string pretty = dump(j);
    EXPECT_NE(pretty.find("\"d\": [1, 2.5]"), std::string::npos) << pretty;
    EXPECT_EQ(dump(j), pretty);
}

TEST(Report, TrajectoryJson) {
    Trajectory t;
    t.samples.push_back({{{0, 1, 2, 3}, {1, 1, 0, 0}, 0.0}, 0.0});
    t.termination = Termination::DomainExit;
    const Json j = to_json(t);
    EXPECT_EQ(j["termination"], "domain-exit");
    EXPECT_EQ(j["samples"][0]["x"], Json::array({0.0, 1.0, 2.0, 3.0}));
    EXPECT_TRUE(j["samples"][0].contains("nullnorm"));
}
