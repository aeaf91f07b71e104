#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace nullgeo {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<Vec4, 4>;
using Complex = std::complex<double>;
using CVec4 = std::array<Complex, 4>;

/// Dense rank-3 array over four indices, row-major.
struct Rank3 {
    std::array<double, 64> v{};

    double& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept { return v[(i * 4 + j) * 4 + k]; }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
        return v[(i * 4 + j) * 4 + k];
    }
};

/// Dense rank-4 array over four indices, row-major.
template <typename T>
struct BasicRank4 {
    std::array<T, 256> v{};

    T& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) noexcept {
        return v[((i * 4 + j) * 4 + k) * 4 + l];
    }
    const T& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const noexcept {
        return v[((i * 4 + j) * 4 + k) * 4 + l];
    }

    double max_abs() const noexcept {
        double m = 0.0;
        for (const auto& x : v) m = std::max(m, static_cast<double>(std::abs(x)));
        return m;
    }
};

using Rank4 = BasicRank4<double>;
using ComplexRank4 = BasicRank4<Complex>;

inline double max_abs(const Mat4& m) noexcept {
    double r = 0.0;
    for (const auto& row : m)
        for (double x : row) r = std::max(r, std::abs(x));
    return r;
}

inline double euclid_norm(const Vec4& v) noexcept {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

inline double euclid_dot(const Vec4& a, const Vec4& b) noexcept {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// g(u, v) for a real bilinear form.
inline double pair(const Mat4& g, const Vec4& u, const Vec4& v) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) s += g[i][j] * u[i] * v[j];
    return s;
}

/// Complex-bilinear (not Hermitian) extension of g.
inline Complex pair(const Mat4& g, const CVec4& u, const CVec4& v) noexcept {
    Complex s = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) s += g[i][j] * u[i] * v[j];
    return s;
}

inline Vec4 operator+(const Vec4& a, const Vec4& b) noexcept {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) noexcept {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Vec4 operator*(double s, const Vec4& a) noexcept { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }

}  // namespace nullgeo
