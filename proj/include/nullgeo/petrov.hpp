#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "nullgeo/curvature.hpp"
#include "nullgeo/metric.hpp"
#include "nullgeo/null_frame.hpp"
#include "nullgeo/quartic.hpp"

namespace nullgeo {

/// The ten independent frame components of the Weyl tensor.
///   a = (C1212, C1214, C1234, C1434, C3434)
///   b = (C1313, C1314, C1324, C1424, C2424)
struct WeylScalars {
    std::array<Complex, 5> a{};
    std::array<Complex, 5> b{};
};

/// Residuals of the eleven linear relations the trace-free conditions impose
/// on frame components, in order:
///   C1234 - C1324 + C1423, C1224, C1334, C1213, C2434,
///   C1314 - C1323, C1424 - C2324, C1214 + C1223, C1434 + C2334,
///   C1414 - C2323, C2323 - (C1234 + C1324).
std::array<Complex, 11> frame_conditions(const ComplexRank4& frame);

double frame_conditions_residual(const ComplexRank4& frame);

/// max_u |b_u - conj(a_u)|.
double conjugacy_residual(const WeylScalars& s);

/// Reads the scalars off the frame components. Throws FrameInconsistencyError
/// when b_u and conj(a_u) differ by more than `tol` times the largest frame
/// component.
WeylScalars extract_scalars(const ComplexRank4& frame, double tol = 1e-10);

/// Complex bivector p^{ab} in frame indices (0-based).
using Bivector = std::array<std::array<Complex, 4>, 4>;

Bivector wedge(const CVec4& xi, const CVec4& eta);

/// Spanned by e3 - lambda e1 and e4 - lambda e2.
Bivector alpha_plane_bivector(Complex lambda);

/// Spanned by e2 - mu e1 and e4 - mu e3.
Bivector beta_plane_bivector(Complex mu);

/// C(p) from the scalar expansion
///   C(p)/4 = a0 (p12)^2 + 2 a1 p12 (p14 - p23) + a2 [2 p12 p34 + (p14 - p23)^2]
///          + 2 a3 p34 (p14 - p23) + a4 (p34)^2
///          + b0 (p13)^2 + 2 b1 p13 (p14 + p23) + b2 [-2 p13 p42 + (p14 + p23)^2]
///          - 2 b3 p42 (p14 + p23) + b4 (p42)^2.
/// Throws Error if p is not antisymmetric.
Complex bivector_curvature(const WeylScalars& s, const Bivector& p);

/// Direct contraction C_abcd p^ab p^cd over all index values.
Complex bivector_contraction(const ComplexRank4& frame, const Bivector& p);

/// (a0, -4 a1, 6 a2, -4 a3, a4): alpha-plane curvature polynomial in lambda.
Quartic curvature_quartic(const WeylScalars& s);

/// Same with the b scalars, in mu.
Quartic beta_quartic(const WeylScalars& s);

enum class PetrovType { I, II, D, III, N, O };

std::string_view to_string(PetrovType t) noexcept;
PetrovType petrov_type_from_string(std::string_view s);

/// {1,1,1,1} -> I, {2,1,1} -> II, {2,2} -> D, {3,1} -> III, {4} -> N.
PetrovType type_from_partition(const std::vector<int>& partition);

struct Tolerances {
    double cluster_radius = 1e-4;
    /// Weyl counts as zero below this fraction of the curvature scale.
    double weyl_zero = 1e-9;
    double conjugacy = 1e-10;
};

struct PrincipalDirection {
    Projective root;
    Vec4 vector{};
    int multiplicity = 1;
};

struct PetrovReport {
    PetrovType type = PetrovType::O;
    Vec4 point{};
    ProjectiveRoots roots;
    std::vector<PrincipalDirection> principal_directions;
    WeylScalars scalars;
    NullTetrad tetrad;
    Tolerances tolerances;
    /// max |a_u|
    double weyl_scale = 0.0;
    /// Largest Riemann frame component.
    double curvature_scale = 0.0;
    /// Rounding floor below which Weyl is indistinguishable from zero.
    double noise_floor = 0.0;
    double frame_condition_residual = 0.0;
    double conjugacy_residual = 0.0;
};

/// Classification from curvature already computed at a point, in a given tetrad.
PetrovReport classify_curvature(const Curvature& curv, const NullTetrad& tetrad, const Tolerances& tol);

/// metric_jet -> curvature -> tetrad -> frame components -> scalars -> quartic -> roots -> type.
PetrovReport classify(const MetricSpec& spec, const Vec4& point, const ParamMap& overrides = {},
                      const Tolerances& tol = {});

}  // namespace nullgeo
