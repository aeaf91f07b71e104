#pragma once

#include <array>
#include <cstddef>

namespace nullgeo {

/// Truncated second-order Taylor jet of a scalar function of four variables.
///
/// Carries the value, the gradient and the Hessian. The Hessian is stored as
/// its upper triangle, so it is symmetric by construction.
struct Jet2 {
    double value = 0.0;
    std::array<double, 4> grad{};
    std::array<double, 10> hess{};

    static constexpr std::size_t packed(std::size_t k, std::size_t l) noexcept {
        if (k > l) {
            const std::size_t t = k;
            k = l;
            l = t;
        }
        return k * (7 - k) / 2 + l;
    }

    double second(std::size_t k, std::size_t l) const noexcept { return hess[packed(k, l)]; }

    static Jet2 constant(double v) noexcept {
        Jet2 j;
        j.value = v;
        return j;
    }

    /// Jet of the coordinate function x^k evaluated at x^k = v.
    static Jet2 variable(std::size_t k, double v) noexcept {
        Jet2 j;
        j.value = v;
        j.grad[k] = 1.0;
        return j;
    }
};

Jet2 operator+(const Jet2& a, const Jet2& b) noexcept;
Jet2 operator-(const Jet2& a, const Jet2& b) noexcept;
Jet2 operator-(const Jet2& a) noexcept;
Jet2 operator*(const Jet2& a, const Jet2& b) noexcept;
Jet2 operator*(double s, const Jet2& a) noexcept;

/// Composition f(a) given f, f' and f'' evaluated at a.value.
Jet2 compose(const Jet2& a, double f, double df, double d2f) noexcept;

/// 1/a; caller guarantees a.value != 0.
Jet2 reciprocal(const Jet2& a) noexcept;

/// a^n by repeated squaring; negative n goes through reciprocal.
Jet2 integer_power(const Jet2& a, long n) noexcept;

}  // namespace nullgeo
