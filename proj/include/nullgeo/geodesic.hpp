#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nullgeo/curvature.hpp"
#include "nullgeo/expr.hpp"
#include "nullgeo/metric.hpp"
#include "nullgeo/ode.hpp"
#include "nullgeo/petrov.hpp"

namespace nullgeo {

struct GeodesicState {
    Vec4 x{};
    Vec4 xi{};
    double s = 0.0;
};

struct TrajectorySample {
    GeodesicState state;
    /// g(xi, xi) at the sample.
    double null_norm = 0.0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    Termination termination = Termination::ParameterEnd;

    /// max |g(xi,xi)| / |xi|^2 over the samples (Euclidean chart norm).
    double max_relative_null_norm() const;
};

/// Connection coefficients as a function of the chart point.
using ConnectionField = std::function<Christoffel(const Vec4&)>;

/// Levi-Civita connection of the metric with resolved parameters.
ConnectionField levi_civita_field(const MetricSpec& spec, const ParamMap& params);

/// Connection of sigma * g.
ConnectionField conformal_field(const MetricSpec& spec, const ParamMap& params, const Expression& sigma);

/// (dx/ds, dxi/ds) = (xi, -Gamma(xi, xi)), packed as 8 numbers.
std::array<double, 8> geodesic_rhs(const ConnectionField& field, const Vec4& x, const Vec4& xi);

/// Integrates the affine geodesic equation of `field` from `initial` to s_end.
/// Null norms are evaluated with the metric of `spec`. Stops cleanly on domain
/// exit or step underflow, keeping what was integrated.
Trajectory integrate(const MetricSpec& spec, const ParamMap& params, const ConnectionField& field,
                     const GeodesicState& initial, double s_end, const StepControl& ctl = {});

/// Same, with the Levi-Civita connection of `spec`.
Trajectory integrate(const MetricSpec& spec, const ParamMap& params, const GeodesicState& initial, double s_end,
                     const StepControl& ctl = {});

/// Solves g(xi, xi) = 0 for component `slot`, keeping the others, and picks
/// the root nearest the given value. Throws DomainError if no real root exists.
Vec4 null_project(const Mat4& g, const Vec4& xi, std::size_t slot = 0);

/// Symmetric point-set distance between two curves: for every sample of one
/// curve, the distance to the nearest point of the other (cubic Hermite
/// interpolation between samples), maximized over both directions.
double path_distance(const Trajectory& a, const Trajectory& b);

/// Cuts the trajectory at Euclidean arc length `length`.
Trajectory trim_to_arc_length(const Trajectory& t, double length);

double arc_length(const Trajectory& t);

struct ConformalOptions {
    double s_end = 20.0;
    double path_tol = 1e-6;
    /// Timelike control must separate by more than this for non-constant sigma.
    double control_separation = 1e-2;
    /// Constant sigma must keep the control within this.
    double constant_tol = 1e-9;
    /// Weight of the timelike frame vector added to the null direction.
    double control_weight = 1.0;
    StepControl step{};
};

struct ConformalReport {
    double null_distance = 0.0;
    double control_distance = 0.0;
    bool sigma_constant = false;
    bool null_pass = false;
    bool control_pass = false;
    bool pass = false;
    Trajectory null_original, null_conformal, control_original, control_conformal;
};

/// Integrates the same initial data under g and sigma * g and compares the
/// point sets, with a timelike control ray. Throws DomainError when sigma <= 0
/// somewhere along either path. The initial direction must
/// be null within 1e-9 relative.
ConformalReport conformal_invariance_check(const MetricSpec& spec, const ParamMap& params, const Expression& sigma,
                                           const GeodesicState& initial, const ConformalOptions& opt = {});

/// Along a geodesic of g, the largest relative residual of the conformal
/// geodesic equation with the reparametrization term d log sigma (xi) xi:
///   |dxi/ds + Gbar(xi, xi) - (d log sigma . xi) xi| / |xi|^2.
/// Vanishes along null curves.
double conformal_equation_residual(const MetricSpec& spec, const ParamMap& params, const Expression& sigma,
                                   const Trajectory& along);

/// |a - kappa xi| / |xi|^2 with a = D_xi xi + Gamma(xi, xi), kappa by least squares.
double pregeodesic_residual(const Christoffel& gamma, const Vec4& xi, const Vec4& directional_derivative);

struct CongruenceCurve {
    Projective seed_root;
    int multiplicity = 1;
    Vec4 seed_direction{};
    double max_residual = 0.0;
    bool pass = false;
    Trajectory curve;
    /// Set when root tracking failed.
    std::optional<std::string> failure;
    std::optional<GeodesicState> failure_state;
};

struct CongruenceOptions {
    double s_end = 20.0;
    double geo_tol = 1e-5;
    /// Finite-difference step along the field, relative to |xi|.
    double fd_step = 1e-4;
    Tolerances tolerances{};
    StepControl step{};
};

struct CongruenceReport {
    PetrovType type = PetrovType::O;
    std::vector<CongruenceCurve> curves;
    bool pass = false;
    std::string message;
};

/// Follows each distinct principal null direction field from `point` and
/// checks that its integral curve is a pregeodesic.
CongruenceReport principal_congruence_check(const MetricSpec& spec, const ParamMap& params, const Vec4& point,
                                            const CongruenceOptions& opt = {});

/// CSV with header s,x0,x1,x2,x3,xi0,xi1,xi2,xi3,nullnorm.
void write_csv(std::ostream& out, const Trajectory& t);

}  // namespace nullgeo
