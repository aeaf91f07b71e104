#pragma once

#include <array>

#include "nullgeo/expr.hpp"
#include "nullgeo/metric.hpp"
#include "nullgeo/tensor.hpp"

namespace nullgeo {

/// Gamma^i_{jk}, symmetric in the lower pair; indexed (i, j, k).
struct Christoffel {
    Rank3 gamma;

    double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept { return gamma(i, j, k); }
    double& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept { return gamma(i, j, k); }

    /// Gamma^i_{jk} u^j v^k.
    Vec4 contract(const Vec4& u, const Vec4& v) const noexcept;
};

/// d_l Gamma^i_{jk}, stored as one Christoffel-shaped array per l.
using ChristoffelDerivative = std::array<Christoffel, 4>;

/// R^i_{jkl} with
///   R^i_{jkl} = d_k G^i_{jl} - d_l G^i_{jk} + G^m_{jl} G^i_{mk} - G^m_{jk} G^i_{ml}.
/// With this placement the Ricci tensor is the trace R_{jk} = R^i_{jki}.
struct Riemann {
    Rank4 mixed;
    Rank4 lowered;  // R_{ijkl} = g_{im} R^m_{jkl}
};

struct RicciData {
    Mat4 ricci{};
    double scalar = 0.0;
};

/// Conformal curvature tensor.
struct WeylTensor {
    Vec4 point{};
    Rank4 lowered;  // C_{ijkl}
    Rank4 mixed;    // C^i_{jkl}
};

/// Everything downstream code needs at one point.
struct Curvature {
    MetricJet jet;
    Christoffel gamma;
    Riemann riemann;
    RicciData ricci;
    WeylTensor weyl;
};

Christoffel christoffel(const MetricJet& jet);

ChristoffelDerivative christoffel_derivative(const MetricJet& jet);

Riemann riemann(const MetricJet& jet, const Christoffel& gamma, const ChristoffelDerivative& dgamma);

RicciData ricci_and_scalar(const Riemann& r, const MetricJet& jet);

WeylTensor weyl(const Riemann& r, const RicciData& ricci, const MetricJet& jet);

Curvature compute_curvature(const MetricJet& jet);

/// Levi-Civita connection of sigma * g from the connection of g and
/// d log sigma. Throws DomainError when sigma <= 0 at the point.
Christoffel conformal_connection(const MetricJet& jet, const Expression& sigma, const ParamMap& params);

/// Same, from an already-computed connection of g.
Christoffel conformal_connection(const MetricJet& jet, const Christoffel& gamma, const Expression& sigma,
                                 const ParamMap& params);

/// Max over (i,j,k) of |d_k g_ij - g_mj G^m_ik - g_im G^m_jk|.
double metric_compatibility_residual(const MetricJet& jet, const Christoffel& gamma);

/// R_{ijkl} R^{ijkl}.
double kretschmann(const Riemann& r, const MetricJet& jet);

/// Largest deviation from the algebraic symmetries of a lowered curvature
/// tensor: antisymmetry in each pair, pair exchange and the cyclic identity.
double riemann_symmetry_residual(const Rank4& lowered);

/// Max |g^{ik} C_{ijkl}|.
double weyl_trace_residual(const WeylTensor& c, const MetricJet& jet);

}  // namespace nullgeo
