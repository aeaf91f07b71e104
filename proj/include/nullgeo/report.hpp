#pragma once

#include <array>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "nullgeo/geodesic.hpp"
#include "nullgeo/petrov.hpp"

namespace nullgeo {

using Json = nlohmann::ordered_json;

struct RootEntry {
    double re = 0.0;
    double im = 0.0;
    bool infinite = false;
    int multiplicity = 1;

    bool operator==(const RootEntry&) const = default;
};

struct DirectionEntry {
    Vec4 vector{};
    int multiplicity = 1;

    bool operator==(const DirectionEntry&) const = default;
};

struct ReportDiagnostics {
    double frame_condition_residual = 0.0;
    double conjugacy_residual = 0.0;
    double root_margin = 2.0;
    double backward_error = 0.0;
    double weyl_scale = 0.0;
    double curvature_scale = 0.0;
    double noise_floor = 0.0;
    std::vector<std::string> warnings;

    bool operator==(const ReportDiagnostics&) const = default;
};

/// One classified point, flattened for output.
struct PointReport {
    std::string metric;
    Vec4 point{};
    ParamMap params;
    bool ok = true;
    /// Empty on success.
    std::string error;
    PetrovType type = PetrovType::O;
    std::vector<RootEntry> roots;
    std::array<double, 5> weyl_abs{};
    std::array<Complex, 5> weyl_scalars{};
    std::vector<DirectionEntry> principal_directions;
    ReportDiagnostics diagnostics;
    Tolerances tolerances;

    bool operator==(const PointReport& o) const;
};

PointReport make_point_report(const std::string& metric, const ParamMap& params, const PetrovReport& rep);

PointReport failed_point_report(const std::string& metric, const Vec4& point, const ParamMap& params,
                                const std::string& error, const Tolerances& tol);

Json to_json(const PointReport& r);
PointReport point_report_from_json(const Json& j);

Json to_json(const Trajectory& t);

/// Serializes with every number printed to 17 significant digits, so that
/// identical values always give identical bytes. `indent` < 0 writes one line.
std::string dump(const Json& j, int indent = 2);

}  // namespace nullgeo
