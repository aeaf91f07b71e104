#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nullgeo/expr.hpp"
#include "nullgeo/tensor.hpp"

namespace nullgeo {

/// A Lorentzian metric given by coordinate expressions, signature (+,-,-,-).
struct MetricSpec {
    std::string name;
    Chart chart;
    ParamMap params;  // defaults
    /// g_ij for i <= j in the order (00, 01, 02, 03, 11, 12, 13, 22, 23, 33).
    std::array<Expression, 10> components;
    /// A point is inside the domain iff the guard evaluates > 0.
    std::optional<Expression> domain_guard;

    static constexpr std::size_t component_index(std::size_t i, std::size_t j) noexcept {
        if (i > j) {
            const std::size_t t = i;
            i = j;
            j = t;
        }
        return i * (7 - i) / 2 + j;
    }

    /// Builds a spec from component strings keyed by (i, j); missing entries are 0.
    static MetricSpec from_strings(std::string name, const Chart& chart, ParamMap params,
                                   const std::vector<std::pair<std::pair<int, int>, std::string>>& comps,
                                   const std::string& guard = {});

    ParamNames param_names() const;

    /// The metric multiplied by a conformal factor, sigma * g.
    MetricSpec rescaled(const Expression& sigma, const std::string& new_name = {}) const;
};

/// Default parameters overridden by `overrides`. Unknown override names throw.
ParamMap resolve_params(const MetricSpec& spec, const ParamMap& overrides);

/// Metric value and its first and second coordinate derivatives at a point.
struct MetricJet {
    Vec4 point{};
    Mat4 g{};
    Mat4 g_inv{};
    std::array<Mat4, 4> dg{};                  // dg[k][i][j] = d_k g_ij
    std::array<std::array<Mat4, 4>, 4> d2g{};  // d2g[k][l][i][j] = d_k d_l g_ij
};

/// Throws DomainError when the guard fails or is not positive.
void check_domain(const MetricSpec& spec, const Vec4& point, const ParamMap& params);

/// Evaluates the metric jet. Throws DegenerateMetricError or SignatureError
/// when the matrix is not a nondegenerate (1,3) form, DomainError otherwise.
MetricJet metric_jet(const MetricSpec& spec, const Vec4& point, const ParamMap& overrides = {});

/// Same, with parameters already resolved (no override merge).
MetricJet metric_jet_resolved(const MetricSpec& spec, const Vec4& point, const ParamMap& params);

/// Metric matrix only, with the same validity checks.
Mat4 metric_value(const MetricSpec& spec, const Vec4& point, const ParamMap& params);

/// Counts of (positive, negative) eigenvalues of a symmetric matrix.
std::pair<int, int> signature(const Mat4& g);

double determinant(const Mat4& g);

Mat4 inverse(const Mat4& g);

}  // namespace nullgeo
