#include "nullgeo/petrov.hpp"

#include <algorithm>
#include <cmath>

#include "nullgeo/errors.hpp"

namespace nullgeo {

namespace {

// Frame component with 1-based indices.
Complex at(const ComplexRank4& c, int a, int b, int d, int e) { return c(a - 1, b - 1, d - 1, e - 1); }

Complex p(const Bivector& b, int i, int j) { return b[i - 1][j - 1]; }

// Bound on the rounding error of each Weyl frame component: the same sums as
// the curvature, taken over absolute values of their terms, then carried to
// the frame with absolute tetrad legs.
double rounding_floor(const Curvature& curv, const NullTetrad& t) {
    const MetricJet& jet = curv.jet;
    const ChristoffelDerivative dgamma = christoffel_derivative(jet);
    const Christoffel& gam = curv.gamma;
    Rank4 mixed;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l) {
                    double s = std::abs(dgamma[k](i, j, l)) + std::abs(dgamma[l](i, j, k));
                    for (std::size_t m = 0; m < 4; ++m)
                        s += std::abs(gam(m, j, l) * gam(i, m, k)) + std::abs(gam(m, j, k) * gam(i, m, l));
                    mixed(i, j, k, l) = s;
                }
    std::array<Vec4, 4> legs{};
    for (int a = 0; a < 4; ++a) {
        const CVec4 v = t.vector(a + 1);
        for (std::size_t i = 0; i < 4; ++i) legs[a][i] = std::abs(v[i]);
    }
    Rank4 cur;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l)
                    for (std::size_t m = 0; m < 4; ++m) cur(i, j, k, l) += std::abs(jet.g[i][m]) * mixed(m, j, k, l);
    // Contract the leading slot and rotate it to the back, four times.
    for (int pass = 0; pass < 4; ++pass) {
        Rank4 next;
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t j = 0; j < 4; ++j)
                for (std::size_t k = 0; k < 4; ++k)
                    for (std::size_t l = 0; l < 4; ++l) {
                        double s = 0.0;
                        for (std::size_t i = 0; i < 4; ++i) s += legs[a][i] * cur(i, j, k, l);
                        next(j, k, l, a) = s;
                    }
        cur = next;
    }
    const double worst = cur.max_abs();
    return 1e-12 * worst;
}

}  // namespace

std::array<Complex, 11> frame_conditions(const ComplexRank4& c) {
    return {at(c, 1, 2, 3, 4) - at(c, 1, 3, 2, 4) + at(c, 1, 4, 2, 3),
            at(c, 1, 2, 2, 4),
            at(c, 1, 3, 3, 4),
            at(c, 1, 2, 1, 3),
            at(c, 2, 4, 3, 4),
            at(c, 1, 3, 1, 4) - at(c, 1, 3, 2, 3),
            at(c, 1, 4, 2, 4) - at(c, 2, 3, 2, 4),
            at(c, 1, 2, 1, 4) + at(c, 1, 2, 2, 3),
            at(c, 1, 4, 3, 4) + at(c, 2, 3, 3, 4),
            at(c, 1, 4, 1, 4) - at(c, 2, 3, 2, 3),
            at(c, 2, 3, 2, 3) - (at(c, 1, 2, 3, 4) + at(c, 1, 3, 2, 4))};
}

double frame_conditions_residual(const ComplexRank4& frame) {
    double worst = 0.0;
    for (const auto& r : frame_conditions(frame)) worst = std::max(worst, std::abs(r));
    return worst;
}

double conjugacy_residual(const WeylScalars& s) {
    double worst = 0.0;
    for (std::size_t u = 0; u < 5; ++u) worst = std::max(worst, std::abs(s.b[u] - std::conj(s.a[u])));
    return worst;
}

WeylScalars extract_scalars(const ComplexRank4& c, double tol) {
    WeylScalars s;
    s.a = {at(c, 1, 2, 1, 2), at(c, 1, 2, 1, 4), at(c, 1, 2, 3, 4), at(c, 1, 4, 3, 4), at(c, 3, 4, 3, 4)};
    s.b = {at(c, 1, 3, 1, 3), at(c, 1, 3, 1, 4), at(c, 1, 3, 2, 4), at(c, 1, 4, 2, 4), at(c, 2, 4, 2, 4)};
    const double scale = c.max_abs();
    const double r = conjugacy_residual(s);
    if (r > tol * std::max(scale, 1e-300) && r > 0.0)
        throw FrameInconsistencyError("frame components violate b = conj(a): residual " + std::to_string(r) +
                                      " against scale " + std::to_string(scale));
    return s;
}

Bivector wedge(const CVec4& xi, const CVec4& eta) {
    Bivector b{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) b[i][j] = xi[i] * eta[j] - xi[j] * eta[i];
    return b;
}

Bivector alpha_plane_bivector(Complex lambda) {
    return wedge({-lambda, 0.0, 1.0, 0.0}, {0.0, -lambda, 0.0, 1.0});
}

Bivector beta_plane_bivector(Complex mu) { return wedge({-mu, 1.0, 0.0, 0.0}, {0.0, 0.0, -mu, 1.0}); }

Complex bivector_curvature(const WeylScalars& s, const Bivector& b) {
    double scale = 0.0, asym = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            scale = std::max(scale, std::abs(b[i][j]));
            asym = std::max(asym, std::abs(b[i][j] + b[j][i]));
        }
    if (asym > 1e-12 * scale) throw Error("bivector_curvature: bivector is not antisymmetric");

    const Complex p12 = p(b, 1, 2), p13 = p(b, 1, 3), p14 = p(b, 1, 4);
    const Complex p23 = p(b, 2, 3), p34 = p(b, 3, 4), p42 = p(b, 4, 2);
    const Complex dm = p14 - p23;
    const Complex dp = p14 + p23;
    const auto& a = s.a;
    const auto& c = s.b;
    const Complex quarter = a[0] * p12 * p12 + 2.0 * a[1] * p12 * dm + a[2] * (2.0 * p12 * p34 + dm * dm) +
                            2.0 * a[3] * p34 * dm + a[4] * p34 * p34 + c[0] * p13 * p13 + 2.0 * c[1] * p13 * dp +
                            c[2] * (-2.0 * p13 * p42 + dp * dp) - 2.0 * c[3] * p42 * dp + c[4] * p42 * p42;
    return 4.0 * quarter;
}

Complex bivector_contraction(const ComplexRank4& frame, const Bivector& b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l) s += frame(i, j, k, l) * b[i][j] * b[k][l];
    return s;
}

Quartic curvature_quartic(const WeylScalars& s) {
    return {s.a[0], -4.0 * s.a[1], 6.0 * s.a[2], -4.0 * s.a[3], s.a[4]};
}

Quartic beta_quartic(const WeylScalars& s) {
    return {s.b[0], -4.0 * s.b[1], 6.0 * s.b[2], -4.0 * s.b[3], s.b[4]};
}

std::string_view to_string(PetrovType t) noexcept {
    switch (t) {
        case PetrovType::I: return "I";
        case PetrovType::II: return "II";
        case PetrovType::D: return "D";
        case PetrovType::III: return "III";
        case PetrovType::N: return "N";
        case PetrovType::O: return "O";
    }
    return "?";
}

PetrovType petrov_type_from_string(std::string_view s) {
    for (auto t : {PetrovType::I, PetrovType::II, PetrovType::D, PetrovType::III, PetrovType::N, PetrovType::O})
        if (to_string(t) == s) return t;
    throw Error("unknown Petrov type '" + std::string(s) + "'");
}

PetrovType type_from_partition(const std::vector<int>& partition) {
    std::vector<int> q = partition;
    std::sort(q.begin(), q.end(), std::greater<>());
    if (q == std::vector<int>{1, 1, 1, 1}) return PetrovType::I;
    if (q == std::vector<int>{2, 1, 1}) return PetrovType::II;
    if (q == std::vector<int>{2, 2}) return PetrovType::D;
    if (q == std::vector<int>{3, 1}) return PetrovType::III;
    if (q == std::vector<int>{4}) return PetrovType::N;
    throw Error("root multiplicities do not sum to four");
}

PetrovReport classify_curvature(const Curvature& curv, const NullTetrad& tetrad, const Tolerances& tol) {
    PetrovReport rep;
    rep.point = curv.jet.point;
    rep.tetrad = tetrad;
    rep.tolerances = tol;

    const ComplexRank4 weyl_frame = frame_components(curv.weyl, tetrad);
    rep.scalars = extract_scalars(weyl_frame, tol.conjugacy);
    rep.frame_condition_residual = frame_conditions_residual(weyl_frame);
    rep.conjugacy_residual = conjugacy_residual(rep.scalars);
    rep.curvature_scale = frame_components(curv.riemann.lowered, tetrad).max_abs();
    for (const auto& a : rep.scalars.a) rep.weyl_scale = std::max(rep.weyl_scale, std::abs(a));
    rep.noise_floor = rounding_floor(curv, tetrad);

    const double zero = std::max(tol.weyl_zero * rep.curvature_scale, rep.noise_floor);
    if (rep.weyl_scale <= zero) {
        rep.type = PetrovType::O;
        return rep;
    }

    rep.roots = solve_projective_quartic(curvature_quartic(rep.scalars), tol.cluster_radius);
    rep.type = type_from_partition(rep.roots.partition());
    for (const auto& r : rep.roots.roots)
        rep.principal_directions.push_back({r.root, real_null_direction(r.root, tetrad), r.multiplicity});
    return rep;
}

PetrovReport classify(const MetricSpec& spec, const Vec4& point, const ParamMap& overrides, const Tolerances& tol) {
    const MetricJet jet = metric_jet(spec, point, overrides);
    const Curvature curv = compute_curvature(jet);
    return classify_curvature(curv, build_tetrad(jet), tol);
}

}  // namespace nullgeo
