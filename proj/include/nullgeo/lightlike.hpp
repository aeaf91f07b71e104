#pragma once

#include <string>
#include <vector>

#include "nullgeo/expr.hpp"
#include "nullgeo/geodesic.hpp"
#include "nullgeo/metric.hpp"

namespace nullgeo {

/// Hypersurface F = 0 in the chart of some metric.
struct HypersurfaceSpec {
    std::string name;
    Expression F;
    std::vector<Vec4> seeds;
};

struct LightlikeReport {
    double F = 0.0;
    Vec4 normal{};
    /// g^{ij} N_i N_j
    double normal_norm = 0.0;
    /// sum |g^{ij} N_i N_j| term by term
    double scale = 0.0;
    bool lightlike = false;
};

/// Is the normal covector null at `point`? Throws SurfaceError when the point
/// is off the surface (|F| >= 1e-10) or dF vanishes there.
LightlikeReport lightlike_test(const MetricSpec& spec, const ParamMap& params, const HypersurfaceSpec& surf,
                               const Vec4& point, double tol = 1e-9);

/// l^i = g^{ij} d_j F.
Vec4 generator_field(const MetricSpec& spec, const ParamMap& params, const HypersurfaceSpec& surf, const Vec4& point);

/// Exact derivative of the generator field along itself, l^j d_j l^i.
Vec4 generator_derivative(const MetricSpec& spec, const ParamMap& params, const HypersurfaceSpec& surf,
                          const Vec4& point);

struct FoliationOptions {
    double s_end = 20.0;
    double surface_tol = 1e-7;
    double null_tol = 1e-8;
    double geo_tol = 1e-6;
    StepControl step{};
};

struct FoliationReport {
    double max_F = 0.0;
    /// max |g(l,l)| / |l|^2
    double max_null = 0.0;
    double max_pregeodesic = 0.0;
    bool pass = false;
    Trajectory curve;
};

/// Integrates the generator through `seed` and checks that it stays on the
/// surface, stays null and is a pregeodesic. Throws SurfaceError if the seed
/// is not a lightlike surface point.
FoliationReport foliation_check(const MetricSpec& spec, const ParamMap& params, const HypersurfaceSpec& surf,
                                const Vec4& seed, const FoliationOptions& opt = {});

struct InducedKernel {
    /// Eigenvalues of the induced form on a Euclidean-orthonormal basis of the
    /// tangent space, sorted by absolute value.
    std::array<double, 3> eigenvalues{};
    /// |sin| of the Euclidean angle between the kernel direction and l.
    double misalignment = 0.0;
};

InducedKernel induced_metric_kernel(const MetricSpec& spec, const ParamMap& params, const HypersurfaceSpec& surf,
                                    const Vec4& point);

}  // namespace nullgeo
