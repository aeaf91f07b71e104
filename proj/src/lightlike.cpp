#include "nullgeo/lightlike.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "nullgeo/errors.hpp"

namespace nullgeo {

namespace {

Vec4 raise(const Mat4& g_inv, const Vec4& w) {
    Vec4 out{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) out[i] += g_inv[i][j] * w[j];
    return out;
}

Vec4 generator_at(const MetricJet& jet, const Jet2& f) { return raise(jet.g_inv, f.grad); }

}  // namespace

LightlikeReport lightlike_test(const MetricSpec& spec, const ParamMap& params, const HypersurfaceSpec& surf,
                               const Vec4& point, double tol) {
    const ParamMap p = resolve_params(spec, params);
    const Jet2 f = eval_jet2(surf.F, point, p);
    if (std::abs(f.value) >= 1e-10)
        throw SurfaceError("point is not on surface '" + surf.name + "': F = " + std::to_string(f.value));
    if (euclid_norm(f.grad) == 0.0) throw SurfaceError("dF vanishes on surface '" + surf.name + "'");
    const Mat4 g_inv = inverse(metric_value(spec, point, p));

    LightlikeReport rep;
    rep.F = f.value;
    rep.normal = f.grad;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const double t = g_inv[i][j] * f.grad[i] * f.grad[j];
            rep.normal_norm += t;
            rep.scale += std::abs(t);
        }
    rep.lightlike = std::abs(rep.normal_norm) <= tol * rep.scale;
    return rep;
}

Vec4 generator_field(const MetricSpec& spec, const ParamMap& params, const HypersurfaceSpec& surf, const Vec4& point) {
    const ParamMap p = resolve_params(spec, params);
    return raise(inverse(metric_value(spec, point, p)), eval_jet2(surf.F, point, p).grad);
}

Vec4 generator_derivative(const MetricSpec& spec, const ParamMap& params, const HypersurfaceSpec& surf,
                          const Vec4& point) {
    const ParamMap p = resolve_params(spec, params);
    const MetricJet jet = metric_jet_resolved(spec, point, p);
    const Jet2 f = eval_jet2(surf.F, point, p);
    const Vec4 l = generator_at(jet, f);
    // d_j l^i = -(g^-1 d_j g g^-1)^{ik} d_k F + g^{ik} d_j d_k F
    Vec4 out{};
    for (std::size_t j = 0; j < 4; ++j) {
        if (l[j] == 0.0) continue;
        Vec4 hess_col{};
        for (std::size_t k = 0; k < 4; ++k) hess_col[k] = f.second(j, k);
        Vec4 dg_l{};  // (d_j g) l
        for (std::size_t m = 0; m < 4; ++m)
            for (std::size_t n = 0; n < 4; ++n) dg_l[m] += jet.dg[j][m][n] * l[n];
        const Vec4 term = raise(jet.g_inv, hess_col) - raise(jet.g_inv, dg_l);
        out = out + l[j] * term;
    }
    return out;
}

FoliationReport foliation_check(const MetricSpec& spec, const ParamMap& params, const HypersurfaceSpec& surf,
                                const Vec4& seed, const FoliationOptions& opt) {
    const ParamMap p = resolve_params(spec, params);
    const LightlikeReport start = lightlike_test(spec, p, surf, seed);
    if (!start.lightlike)
        throw SurfaceError("surface '" + surf.name + "' is not lightlike at the seed: g(N,N) = " +
                           std::to_string(start.normal_norm));

    FoliationReport rep;
    auto rhs = [&](double, const Vec4& x) {
        return generator_at(metric_jet_resolved(spec, x, p), eval_jet2(surf.F, x, p));
    };
    auto accept = [&](double s, const Vec4& x, const Vec4& l) {
        const MetricJet jet = metric_jet_resolved(spec, x, p);
        const double n2 = euclid_dot(l, l);
        const double null = pair(jet.g, l, l);
        rep.max_F = std::max(rep.max_F, std::abs(eval_value(surf.F, x, p)));
        if (n2 > 0.0) rep.max_null = std::max(rep.max_null, std::abs(null) / n2);
        const Vec4 d = generator_derivative(spec, p, surf, x);
        rep.max_pregeodesic = std::max(rep.max_pregeodesic, pregeodesic_residual(christoffel(jet), l, d));
        rep.curve.samples.push_back({{x, l, s}, null});
    };
    rep.curve.termination = dormand_prince<4>(rhs, 0.0, opt.s_end, seed, opt.step, accept,
                                              [](double, const Vec4&) { return false; });
    rep.pass = rep.curve.termination == Termination::ParameterEnd && rep.max_F < opt.surface_tol &&
               rep.max_null < opt.null_tol && rep.max_pregeodesic < opt.geo_tol;
    return rep;
}

InducedKernel induced_metric_kernel(const MetricSpec& spec, const ParamMap& params, const HypersurfaceSpec& surf,
                                    const Vec4& point) {
    const ParamMap p = resolve_params(spec, params);
    const Mat4 g = metric_value(spec, point, p);
    const Jet2 f = eval_jet2(surf.F, point, p);
    if (euclid_norm(f.grad) == 0.0) throw SurfaceError("dF vanishes on surface '" + surf.name + "'");

    // Tangent space: Euclidean orthogonal complement of dF.
    Eigen::Matrix<double, 1, 4> n(f.grad[0], f.grad[1], f.grad[2], f.grad[3]);
    Eigen::JacobiSVD<Eigen::Matrix<double, 1, 4>> svd(n, Eigen::ComputeFullV);
    const Eigen::Matrix<double, 4, 3> t = svd.matrixV().rightCols<3>();
    Eigen::Matrix4d gm;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) gm(i, j) = g[i][j];
    const Eigen::Matrix3d h = t.transpose() * gm * t;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (h + h.transpose()));

    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(es.eigenvalues()[a]) < std::abs(es.eigenvalues()[b]); });
    InducedKernel out;
    for (int k = 0; k < 3; ++k) out.eigenvalues[k] = es.eigenvalues()[order[k]];
    const Eigen::Vector4d kernel = t * es.eigenvectors().col(order[0]);
    const Vec4 l = raise(inverse(g), f.grad);
    const Eigen::Vector4d lv = Eigen::Vector4d(l[0], l[1], l[2], l[3]).normalized();
    const Eigen::Vector4d k = kernel.normalized();
    out.misalignment = (k - k.dot(lv) * lv).norm();
    return out;
}

}  // namespace nullgeo
