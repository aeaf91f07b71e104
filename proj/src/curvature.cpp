#include "nullgeo/curvature.hpp"

#include <cmath>

#include "nullgeo/errors.hpp"

namespace nullgeo {

Vec4 Christoffel::contract(const Vec4& u, const Vec4& v) const noexcept {
    Vec4 out{};
    for (std::size_t i = 0; i < 4; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) s += gamma(i, j, k) * u[j] * v[k];
        out[i] = s;
    }
    return out;
}

Christoffel christoffel(const MetricJet& jet) {
    // First kind: G_{mjk} = 1/2 (d_j g_mk + d_k g_mj - d_m g_jk)
    Rank3 first;
    for (std::size_t m = 0; m < 4; ++m)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = j; k < 4; ++k)
                first(m, j, k) = first(m, k, j) =
                    0.5 * (jet.dg[j][m][k] + jet.dg[k][m][j] - jet.dg[m][j][k]);

    Christoffel c;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = j; k < 4; ++k) {
                double s = 0.0;
                for (std::size_t m = 0; m < 4; ++m) s += jet.g_inv[i][m] * first(m, j, k);
                c(i, j, k) = c(i, k, j) = s;
            }
    return c;
}

ChristoffelDerivative christoffel_derivative(const MetricJet& jet) {
    // d_l g^{im} = -g^{ia} d_l g_ab g^{bm}
    std::array<Mat4, 4> dginv{};
    for (std::size_t l = 0; l < 4; ++l) {
        Mat4 tmp{};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t b = 0; b < 4; ++b) {
                double s = 0.0;
                for (std::size_t a = 0; a < 4; ++a) s += jet.g_inv[i][a] * jet.dg[l][a][b];
                tmp[i][b] = s;
            }
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t m = 0; m < 4; ++m) {
                double s = 0.0;
                for (std::size_t b = 0; b < 4; ++b) s += tmp[i][b] * jet.g_inv[b][m];
                dginv[l][i][m] = -s;
            }
    }

    Rank3 first;
    for (std::size_t m = 0; m < 4; ++m)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                first(m, j, k) = 0.5 * (jet.dg[j][m][k] + jet.dg[k][m][j] - jet.dg[m][j][k]);

    ChristoffelDerivative out;
    for (std::size_t l = 0; l < 4; ++l) {
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                for (std::size_t k = j; k < 4; ++k) {
                    double s = 0.0;
                    for (std::size_t m = 0; m < 4; ++m) {
                        const double dfirst =
                            0.5 * (jet.d2g[l][j][m][k] + jet.d2g[l][k][m][j] - jet.d2g[l][m][j][k]);
                        s += dginv[l][i][m] * first(m, j, k) + jet.g_inv[i][m] * dfirst;
                    }
                    out[l](i, j, k) = out[l](i, k, j) = s;
                }
    }
    return out;
}

Riemann riemann(const MetricJet& jet, const Christoffel& gamma, const ChristoffelDerivative& dgamma) {
    Riemann r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = k + 1; l < 4; ++l) {
                    double s = dgamma[k](i, j, l) - dgamma[l](i, j, k);
                    for (std::size_t m = 0; m < 4; ++m)
                        s += gamma(m, j, l) * gamma(i, m, k) - gamma(m, j, k) * gamma(i, m, l);
                    r.mixed(i, j, k, l) = s;
                    r.mixed(i, j, l, k) = -s;
                }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (std::size_t m = 0; m < 4; ++m) s += jet.g[i][m] * r.mixed(m, j, k, l);
                    r.lowered(i, j, k, l) = s;
                }
    return r;
}

RicciData ricci_and_scalar(const Riemann& r, const MetricJet& jet) {
    RicciData out;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < 4; ++i) s += r.mixed(i, j, k, i);
            out.ricci[j][k] = s;
        }
    double scalar = 0.0;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k) scalar += jet.g_inv[j][k] * out.ricci[j][k];
    out.scalar = scalar;
    return out;
}

WeylTensor weyl(const Riemann& r, const RicciData& ricci, const MetricJet& jet) {
    // With R_{jk} = R^i_{jki} the Ricci terms enter with the opposite sign
    // to the usual R^i_{jik} form of the decomposition.
    const Mat4& g = jet.g;
    const Mat4& ric = ricci.ricci;
    const double third = ricci.scalar / 3.0;
    WeylTensor c;
    c.point = jet.point;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l) {
                    const double gr = 0.5 * (g[i][k] * ric[l][j] - g[i][l] * ric[k][j]) -
                                      0.5 * (g[j][k] * ric[l][i] - g[j][l] * ric[k][i]);
                    const double gg = 0.5 * (g[i][k] * g[l][j] - g[i][l] * g[k][j]);
                    c.lowered(i, j, k, l) = r.lowered(i, j, k, l) + gr - third * gg;
                }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (std::size_t m = 0; m < 4; ++m) s += jet.g_inv[i][m] * c.lowered(m, j, k, l);
                    c.mixed(i, j, k, l) = s;
                }
    return c;
}

Curvature compute_curvature(const MetricJet& jet) {
    Curvature out;
    out.jet = jet;
    out.gamma = christoffel(jet);
    out.riemann = riemann(jet, out.gamma, christoffel_derivative(jet));
    out.ricci = ricci_and_scalar(out.riemann, jet);
    out.weyl = weyl(out.riemann, out.ricci, jet);
    return out;
}

Christoffel conformal_connection(const MetricJet& jet, const Christoffel& gamma, const Expression& sigma,
                                 const ParamMap& params) {
    const Jet2 s = eval_jet2(sigma, jet.point, params);
    if (!(s.value > 0.0)) throw DomainError("conformal factor must be positive, got " + std::to_string(s.value));
    // d log sigma = sigma_k dx^k; sigma^i = g^{ik} sigma_k
    Vec4 lower{};
    for (std::size_t k = 0; k < 4; ++k) lower[k] = s.grad[k] / s.value;
    Vec4 upper{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) upper[i] += jet.g_inv[i][k] * lower[k];

    Christoffel out = gamma;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) {
                const double dij = i == j ? 1.0 : 0.0;
                const double dik = i == k ? 1.0 : 0.0;
                out(i, j, k) += 0.5 * (dij * lower[k] + lower[j] * dik - upper[i] * jet.g[j][k]);
            }
    return out;
}

Christoffel conformal_connection(const MetricJet& jet, const Expression& sigma, const ParamMap& params) {
    return conformal_connection(jet, christoffel(jet), sigma, params);
}

double metric_compatibility_residual(const MetricJet& jet, const Christoffel& gamma) {
    double worst = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                double s = jet.dg[k][i][j];
                for (std::size_t m = 0; m < 4; ++m)
                    s -= jet.g[m][j] * gamma(m, i, k) + jet.g[i][m] * gamma(m, j, k);
                worst = std::max(worst, std::abs(s));
            }
    return worst;
}

double kretschmann(const Riemann& r, const MetricJet& jet) {
    // Raise all four indices of R_{ijkl} one at a time.
    Rank4 up = r.lowered;
    for (int slot = 0; slot < 4; ++slot) {
        Rank4 next;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                for (std::size_t k = 0; k < 4; ++k)
                    for (std::size_t l = 0; l < 4; ++l) {
                        double s = 0.0;
                        for (std::size_t m = 0; m < 4; ++m) {
                            switch (slot) {
                                case 0: s += jet.g_inv[i][m] * up(m, j, k, l); break;
                                case 1: s += jet.g_inv[j][m] * up(i, m, k, l); break;
                                case 2: s += jet.g_inv[k][m] * up(i, j, m, l); break;
                                default: s += jet.g_inv[l][m] * up(i, j, k, m); break;
                            }
                        }
                        next(i, j, k, l) = s;
                    }
        up = next;
    }
    double sum = 0.0;
    for (std::size_t n = 0; n < 256; ++n) sum += r.lowered.v[n] * up.v[n];
    return sum;
}

double riemann_symmetry_residual(const Rank4& t) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l) {
                    const double x = t(i, j, k, l);
                    worst = std::max(worst, std::abs(x + t(j, i, k, l)));
                    worst = std::max(worst, std::abs(x + t(i, j, l, k)));
                    worst = std::max(worst, std::abs(x - t(k, l, i, j)));
                    worst = std::max(worst, std::abs(x + t(i, k, l, j) + t(i, l, j, k)));
                }
    return worst;
}

double weyl_trace_residual(const WeylTensor& c, const MetricJet& jet) {
    double worst = 0.0;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t l = 0; l < 4; ++l) {
            double s = 0.0;
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t k = 0; k < 4; ++k) s += jet.g_inv[i][k] * c.lowered(i, j, k, l);
            worst = std::max(worst, std::abs(s));
        }
    return worst;
}

}  // namespace nullgeo
