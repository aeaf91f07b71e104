#include "nullgeo/metric.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "nullgeo/errors.hpp"

namespace nullgeo {

namespace {

Eigen::Matrix4d to_eigen(const Mat4& m) {
    Eigen::Matrix4d e;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) e(i, j) = m[i][j];
    return e;
}

void validate(const Mat4& g, const MetricSpec& spec, const Vec4& point) {
    const double scale = max_abs(g);
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw DegenerateMetricError("metric '" + spec.name + "' vanishes or is not finite at the point");
    // smallest over largest eigenvalue magnitude; the determinant would also
    // flag metrics that are merely anisotropic
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(to_eigen(g), Eigen::EigenvaluesOnly);
    const auto ev = es.eigenvalues().cwiseAbs();
    if (ev.minCoeff() <= 1e-12 * ev.maxCoeff())
        throw DegenerateMetricError("metric '" + spec.name + "' is degenerate at (" + std::to_string(point[0]) + ", " +
                                    std::to_string(point[1]) + ", " + std::to_string(point[2]) + ", " +
                                    std::to_string(point[3]) + ")");
    const auto [pos, neg] = signature(g);
    if (pos != 1 || neg != 3)
        throw SignatureError("metric '" + spec.name + "' has signature (" + std::to_string(pos) + "," +
                             std::to_string(neg) + "), expected (1,3)");
}

}  // namespace

MetricSpec MetricSpec::from_strings(std::string name, const Chart& chart, ParamMap params,
                                    const std::vector<std::pair<std::pair<int, int>, std::string>>& comps,
                                    const std::string& guard) {
    MetricSpec spec;
    spec.name = std::move(name);
    spec.chart = chart;
    spec.params = std::move(params);
    const ParamNames names = spec.param_names();
    for (const auto& [ij, text] : comps) {
        const auto [i, j] = ij;
        if (i < 0 || j < 0 || i > 3 || j > 3) throw CatalogError("component index out of range");
        spec.components[component_index(static_cast<std::size_t>(i), static_cast<std::size_t>(j))] =
            parse(text, chart, names);
    }
    if (!guard.empty()) spec.domain_guard = parse(guard, chart, names);
    return spec;
}

ParamNames MetricSpec::param_names() const {
    ParamNames names;
    for (const auto& [k, v] : params) names.insert(k);
    return names;
}

MetricSpec MetricSpec::rescaled(const Expression& sigma, const std::string& new_name) const {
    MetricSpec out = *this;
    out.name = new_name.empty() ? name + "*sigma" : new_name;
    for (auto& c : out.components) c = sigma * c;
    return out;
}

ParamMap resolve_params(const MetricSpec& spec, const ParamMap& overrides) {
    ParamMap merged = spec.params;
    for (const auto& [k, v] : overrides) {
        auto it = merged.find(k);
        if (it == merged.end()) throw UnknownSymbolError(k);
        it->second = v;
    }
    return merged;
}

void check_domain(const MetricSpec& spec, const Vec4& point, const ParamMap& params) {
    for (double x : point)
        if (!std::isfinite(x)) throw DomainError("point has non-finite coordinates");
    if (!spec.domain_guard) return;
    const double guard = eval_value(*spec.domain_guard, point, params);
    if (!(guard > 0.0)) throw DomainError("point outside the domain of metric '" + spec.name + "'");
}

Mat4 metric_value(const MetricSpec& spec, const Vec4& point, const ParamMap& params) {
    check_domain(spec, point, params);
    Mat4 g{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i; j < 4; ++j) {
            const double v = eval_value(spec.components[MetricSpec::component_index(i, j)], point, params);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    validate(g, spec, point);
    return g;
}

MetricJet metric_jet_resolved(const MetricSpec& spec, const Vec4& point, const ParamMap& params) {
    check_domain(spec, point, params);
    MetricJet jet;
    jet.point = point;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i; j < 4; ++j) {
            const Jet2 c = eval_jet2(spec.components[MetricSpec::component_index(i, j)], point, params);
            jet.g[i][j] = jet.g[j][i] = c.value;
            for (std::size_t k = 0; k < 4; ++k) {
                jet.dg[k][i][j] = jet.dg[k][j][i] = c.grad[k];
                for (std::size_t l = 0; l < 4; ++l) jet.d2g[k][l][i][j] = jet.d2g[k][l][j][i] = c.second(k, l);
            }
        }
    }
    validate(jet.g, spec, point);
    jet.g_inv = inverse(jet.g);
    return jet;
}

MetricJet metric_jet(const MetricSpec& spec, const Vec4& point, const ParamMap& overrides) {
    return metric_jet_resolved(spec, point, resolve_params(spec, overrides));
}

std::pair<int, int> signature(const Mat4& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(to_eigen(g), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double tiny = 1e-14 * ev.cwiseAbs().maxCoeff();
    int pos = 0, neg = 0;
    for (int i = 0; i < 4; ++i) {
        if (ev[i] > tiny) ++pos;
        else if (ev[i] < -tiny) ++neg;
    }
    return {pos, neg};
}

double determinant(const Mat4& g) { return to_eigen(g).determinant(); }

Mat4 inverse(const Mat4& g) {
    const Eigen::Matrix4d inv = to_eigen(g).inverse();
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = 0.5 * (inv(i, j) + inv(j, i));
    return out;
}

}  // namespace nullgeo
