#pragma once

#include <string_view>
#include <vector>

#include "nullgeo/geodesic.hpp"
#include "nullgeo/report.hpp"

namespace nullgeo {

/// One axis of a sampling grid: `count` uniform values from `lo` to `hi`
/// inclusive along chart coordinate `coordinate`.
struct GridAxis {
    std::size_t coordinate = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 1;

    std::vector<double> values() const;
};

/// Parses "name=a..b:n" where name is a chart coordinate. Throws Error.
GridAxis parse_grid_axis(std::string_view text, const Chart& chart);

/// Cartesian product of the axes over `base`; the last axis varies fastest.
std::vector<Vec4> grid_points(const Vec4& base, const std::vector<GridAxis>& axes);

/// Classifies every point; a point that fails is recorded, not thrown.
/// Output order follows input order. Parallel over points.
std::vector<PointReport> classify_sweep(const MetricSpec& spec, const std::vector<Vec4>& points,
                                        const ParamMap& overrides = {}, const Tolerances& tol = {});

/// Same, one point after another.
std::vector<PointReport> classify_sweep_serial(const MetricSpec& spec, const std::vector<Vec4>& points,
                                               const ParamMap& overrides = {}, const Tolerances& tol = {});

/// Integrates independent geodesics; parallel over initial states.
std::vector<Trajectory> integrate_bundle(const MetricSpec& spec, const ParamMap& params,
                                         const std::vector<GeodesicState>& initial, double s_end,
                                         const StepControl& ctl = {});

std::vector<Trajectory> integrate_bundle_serial(const MetricSpec& spec, const ParamMap& params,
                                                const std::vector<GeodesicState>& initial, double s_end,
                                                const StepControl& ctl = {});

}  // namespace nullgeo
