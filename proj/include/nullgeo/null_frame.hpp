#pragma once

#include <array>
#include <complex>

#include "nullgeo/curvature.hpp"
#include "nullgeo/metric.hpp"
#include "nullgeo/tensor.hpp"

namespace nullgeo {

/// A point of the Riemann sphere: a finite complex number or infinity.
struct Projective {
    Complex value{};
    bool infinite = false;

    static Projective finite(Complex z) noexcept { return {z, false}; }
    static Projective infinity() noexcept { return {Complex{}, true}; }
};

/// Chordal distance on the Riemann sphere (diameter 2).
double chordal_distance(const Projective& a, const Projective& b) noexcept;

/// Pseudo-orthonormal frame: u[0..2] spacelike with g = -1, u[3] timelike with g = +1.
struct OrthonormalFrame {
    std::array<Vec4, 4> u{};
};

/// Newman-Penrose tetrad in coordinate components.
///
/// e1, e4 real null, e3 = conj(e2), with g(e1,e4) = 1, g(e2,e3) = -1 and every
/// other pairing zero, so that g = 2(w1 w4 - w2 w3) in the dual coframe.
struct NullTetrad {
    Vec4 point{};
    Vec4 e1{};
    CVec4 e2{};
    CVec4 e3{};
    Vec4 e4{};

    /// Frame vector a in {1,2,3,4} as a complex vector.
    CVec4 vector(int a) const noexcept;
};

/// Lorentzian Gram-Schmidt on the coordinate basis. Tries the basis orders in
/// lexicographic permutation order until no pivot falls below 1e-10 relative,
/// then falls back to the scaled eigenvectors of g.
OrthonormalFrame orthonormal_frame(const MetricJet& jet);

NullTetrad tetrad_from_frame(const OrthonormalFrame& frame, const Vec4& point);

OrthonormalFrame frame_from_tetrad(const NullTetrad& tetrad);

NullTetrad build_tetrad(const MetricJet& jet);

/// Lorentz matrix acting on frame slots ordered (u4, u1, u2, u3) = (t, x, y, z):
/// u'_a = sum_b L[b][a] u_b.
using LorentzMatrix = std::array<std::array<double, 4>, 4>;

LorentzMatrix boost(double rapidity, const std::array<double, 3>& direction);
LorentzMatrix rotation(double angle, const std::array<double, 3>& axis);
LorentzMatrix compose(const LorentzMatrix& a, const LorentzMatrix& b);

NullTetrad lorentz_transform(const NullTetrad& tetrad, const LorentzMatrix& l);

/// Complex 4x4 matrix of pairings g(e_a, e_b), a, b in 1..4 stored at [a-1][b-1].
std::array<std::array<Complex, 4>, 4> frame_metric(const NullTetrad& tetrad, const Mat4& g);

/// Largest deviation of frame_metric from the adapted-frame table.
double frame_metric_residual(const NullTetrad& tetrad, const Mat4& g);

/// Dual coframe w^a (w^a(e_b) = delta^a_b) as covectors in coordinate components.
std::array<CVec4, 4> dual_coframe(const NullTetrad& tetrad);

/// Max |g_ij - (w1_i w4_j + w4_i w1_j - w2_i w3_j - w3_i w2_j)|.
double reconstruction_residual(const NullTetrad& tetrad, const Mat4& g);

/// Frame components C_abcd = C_ijkl e_a^i e_b^j e_c^k e_d^l; frame index a-1.
/// Throws Error when the tensor and tetrad belong to different points.
ComplexRank4 frame_components(const WeylTensor& c, const NullTetrad& tetrad);
ComplexRank4 frame_components(const Rank4& lowered, const NullTetrad& tetrad);

/// Real null generator lambda lambda* e1 - lambda e2 - lambda* e3 + e4 of the
/// cone for a finite parameter; e1 at infinity.
Vec4 real_null_direction(const Projective& lambda, const NullTetrad& tetrad);

/// Complex vector form, before dropping the imaginary residue.
CVec4 null_direction_complex(Complex lambda, const NullTetrad& tetrad);

}  // namespace nullgeo
