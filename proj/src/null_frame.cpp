#include "nullgeo/null_frame.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "nullgeo/errors.hpp"

namespace nullgeo {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

bool try_gram_schmidt(const MetricJet& jet, const std::array<std::size_t, 4>& order, OrthonormalFrame& out) {
    const double gscale = max_abs(jet.g);
    std::array<Vec4, 4> basis{};
    std::array<double, 4> eta{};
    std::size_t n_time = 0;
    for (std::size_t n = 0; n < 4; ++n) {
        Vec4 w{};
        w[order[n]] = 1.0;
        for (std::size_t a = 0; a < n; ++a) {
            const double c = pair(jet.g, w, basis[a]) / eta[a];
            w = w - c * basis[a];
        }
        const double norm = pair(jet.g, w, w);
        const double e2 = euclid_dot(w, w);
        if (std::abs(norm) < 1e-10 * gscale * e2) return false;
        basis[n] = (1.0 / std::sqrt(std::abs(norm))) * w;
        eta[n] = norm > 0.0 ? 1.0 : -1.0;
        if (eta[n] > 0.0) ++n_time;
    }
    if (n_time != 1) return false;
    std::size_t space = 0;
    for (std::size_t n = 0; n < 4; ++n) {
        if (eta[n] > 0.0)
            out.u[3] = basis[n];
        else
            out.u[space++] = basis[n];
    }
    return true;
}

// Eigenvectors of a symmetric g are g-orthogonal, so they give a frame even
// when every coordinate direction is null.
OrthonormalFrame eigen_frame(const MetricJet& jet) {
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = jet.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
    OrthonormalFrame out;
    std::size_t space = 0, n_time = 0;
    for (int k = 0; k < 4; ++k) {
        const double lam = es.eigenvalues()(k);
        if (std::abs(lam) < 1e-10 * max_abs(jet.g)) throw DegenerateFrameError("metric is degenerate");
        Eigen::Vector4d v = es.eigenvectors().col(k) / std::sqrt(std::abs(lam));
        Eigen::Index big = 0;
        v.cwiseAbs().maxCoeff(&big);
        if (v(big) < 0) v = -v;
        const Vec4 w{v(0), v(1), v(2), v(3)};
        if (lam > 0.0) {
            out.u[3] = w;
            ++n_time;
        } else if (space < 3) {
            out.u[space++] = w;
        }
    }
    if (n_time != 1) throw DegenerateFrameError("metric does not have signature (1,3)");
    return out;
}

CVec4 to_complex(const Vec4& v) noexcept { return {v[0], v[1], v[2], v[3]}; }

}  // namespace

double chordal_distance(const Projective& a, const Projective& b) noexcept {
    if (a.infinite && b.infinite) return 0.0;
    if (a.infinite) return 2.0 / std::sqrt(1.0 + std::norm(b.value));
    if (b.infinite) return 2.0 / std::sqrt(1.0 + std::norm(a.value));
    return 2.0 * std::abs(a.value - b.value) / std::sqrt((1.0 + std::norm(a.value)) * (1.0 + std::norm(b.value)));
}

CVec4 NullTetrad::vector(int a) const noexcept {
    switch (a) {
        case 1: return to_complex(e1);
        case 2: return e2;
        case 3: return e3;
        default: return to_complex(e4);
    }
}

OrthonormalFrame orthonormal_frame(const MetricJet& jet) {
    std::array<std::size_t, 4> order{0, 1, 2, 3};
    do {
        OrthonormalFrame f;
        if (try_gram_schmidt(jet, order, f)) return f;
    } while (std::next_permutation(order.begin(), order.end()));
    return eigen_frame(jet);
}

NullTetrad tetrad_from_frame(const OrthonormalFrame& f, const Vec4& point) {
    NullTetrad t;
    t.point = point;
    const Vec4& u1 = f.u[0];
    const Vec4& u2 = f.u[1];
    const Vec4& u3 = f.u[2];
    const Vec4& u4 = f.u[3];
    for (std::size_t i = 0; i < 4; ++i) {
        t.e1[i] = kInvSqrt2 * (u4[i] + u1[i]);
        t.e4[i] = kInvSqrt2 * (u4[i] - u1[i]);
        t.e2[i] = Complex(kInvSqrt2 * u2[i], -kInvSqrt2 * u3[i]);
        t.e3[i] = std::conj(t.e2[i]);
    }
    return t;
}

OrthonormalFrame frame_from_tetrad(const NullTetrad& t) {
    OrthonormalFrame f;
    for (std::size_t i = 0; i < 4; ++i) {
        f.u[3][i] = kInvSqrt2 * (t.e1[i] + t.e4[i]);
        f.u[0][i] = kInvSqrt2 * (t.e1[i] - t.e4[i]);
        f.u[1][i] = std::sqrt(2.0) * t.e2[i].real();
        f.u[2][i] = -std::sqrt(2.0) * t.e2[i].imag();
    }
    return f;
}

NullTetrad build_tetrad(const MetricJet& jet) { return tetrad_from_frame(orthonormal_frame(jet), jet.point); }

LorentzMatrix boost(double rapidity, const std::array<double, 3>& direction) {
    const double norm =
        std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] + direction[2] * direction[2]);
    std::array<double, 3> n{direction[0] / norm, direction[1] / norm, direction[2] / norm};
    const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
    LorentzMatrix l{};
    l[0][0] = ch;
    for (std::size_t i = 0; i < 3; ++i) {
        l[0][i + 1] = l[i + 1][0] = n[i] * sh;
        for (std::size_t j = 0; j < 3; ++j) l[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + (ch - 1.0) * n[i] * n[j];
    }
    return l;
}

LorentzMatrix rotation(double angle, const std::array<double, 3>& axis) {
    const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    const double x = axis[0] / norm, y = axis[1] / norm, z = axis[2] / norm;
    const double c = std::cos(angle), s = std::sin(angle), C = 1.0 - c;
    LorentzMatrix l{};
    l[0][0] = 1.0;
    const double r[3][3] = {{c + x * x * C, x * y * C - z * s, x * z * C + y * s},
                            {y * x * C + z * s, c + y * y * C, y * z * C - x * s},
                            {z * x * C - y * s, z * y * C + x * s, c + z * z * C}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) l[i + 1][j + 1] = r[i][j];
    return l;
}

LorentzMatrix compose(const LorentzMatrix& a, const LorentzMatrix& b) {
    LorentzMatrix out{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) out[i][j] += a[i][k] * b[k][j];
    return out;
}

NullTetrad lorentz_transform(const NullTetrad& tetrad, const LorentzMatrix& l) {
    const OrthonormalFrame f = frame_from_tetrad(tetrad);
    // slots in (t, x, y, z) order
    const std::array<const Vec4*, 4> slots{&f.u[3], &f.u[0], &f.u[1], &f.u[2]};
    std::array<Vec4, 4> moved{};
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) moved[a] = moved[a] + l[b][a] * *slots[b];
    OrthonormalFrame g;
    g.u[3] = moved[0];
    g.u[0] = moved[1];
    g.u[1] = moved[2];
    g.u[2] = moved[3];
    return tetrad_from_frame(g, tetrad.point);
}

std::array<std::array<Complex, 4>, 4> frame_metric(const NullTetrad& t, const Mat4& g) {
    std::array<std::array<Complex, 4>, 4> m{};
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) m[a - 1][b - 1] = pair(g, t.vector(a), t.vector(b));
    return m;
}

double frame_metric_residual(const NullTetrad& t, const Mat4& g) {
    const auto m = frame_metric(t, g);
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double expected = 0.0;
            if ((a == 0 && b == 3) || (a == 3 && b == 0)) expected = 1.0;
            if ((a == 1 && b == 2) || (a == 2 && b == 1)) expected = -1.0;
            worst = std::max(worst, std::abs(m[a][b] - expected));
        }
    return worst;
}

std::array<CVec4, 4> dual_coframe(const NullTetrad& t) {
    Eigen::Matrix4cd e;
    for (int a = 0; a < 4; ++a) {
        const CVec4 v = t.vector(a + 1);
        for (int i = 0; i < 4; ++i) e(i, a) = v[i];
    }
    const Eigen::Matrix4cd w = e.inverse();
    std::array<CVec4, 4> out{};
    for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 4; ++i) out[a][i] = w(a, i);
    return out;
}

double reconstruction_residual(const NullTetrad& t, const Mat4& g) {
    const auto w = dual_coframe(t);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Complex r = w[0][i] * w[3][j] + w[3][i] * w[0][j] - w[1][i] * w[2][j] - w[2][i] * w[1][j];
            worst = std::max(worst, std::abs(g[i][j] - r));
        }
    return worst;
}

ComplexRank4 frame_components(const Rank4& c, const NullTetrad& t) {
    std::array<CVec4, 4> e{};
    for (int a = 0; a < 4; ++a) e[a] = t.vector(a + 1);

    // Contract one slot at a time: 4 passes of 4^5 multiply-adds.
    ComplexRank4 s1;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l) {
                    Complex s = 0.0;
                    for (std::size_t i = 0; i < 4; ++i) s += c(i, j, k, l) * e[a][i];
                    s1(a, j, k, l) = s;
                }
    ComplexRank4 s2;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l) {
                    Complex s = 0.0;
                    for (std::size_t j = 0; j < 4; ++j) s += s1(a, j, k, l) * e[b][j];
                    s2(a, b, k, l) = s;
                }
    ComplexRank4 s3;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            for (std::size_t cc = 0; cc < 4; ++cc)
                for (std::size_t l = 0; l < 4; ++l) {
                    Complex s = 0.0;
                    for (std::size_t k = 0; k < 4; ++k) s += s2(a, b, k, l) * e[cc][k];
                    s3(a, b, cc, l) = s;
                }
    ComplexRank4 out;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            for (std::size_t cc = 0; cc < 4; ++cc)
                for (std::size_t d = 0; d < 4; ++d) {
                    Complex s = 0.0;
                    for (std::size_t l = 0; l < 4; ++l) s += s3(a, b, cc, l) * e[d][l];
                    out(a, b, cc, d) = s;
                }
    return out;
}

ComplexRank4 frame_components(const WeylTensor& c, const NullTetrad& t) {
    for (std::size_t i = 0; i < 4; ++i)
        if (c.point[i] != t.point[i]) throw Error("frame_components: tensor and tetrad are at different points");
    return frame_components(c.lowered, t);
}

CVec4 null_direction_complex(Complex lambda, const NullTetrad& t) {
    const double ll = std::norm(lambda);
    CVec4 xi{};
    for (std::size_t i = 0; i < 4; ++i)
        xi[i] = ll * t.e1[i] - lambda * t.e2[i] - std::conj(lambda) * t.e3[i] + t.e4[i];
    return xi;
}

Vec4 real_null_direction(const Projective& lambda, const NullTetrad& t) {
    if (lambda.infinite) return t.e1;
    const CVec4 xi = null_direction_complex(lambda.value, t);
    return {xi[0].real(), xi[1].real(), xi[2].real(), xi[3].real()};
}

}  // namespace nullgeo
