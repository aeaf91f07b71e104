#include "nullgeo/jet.hpp"

namespace nullgeo {

Jet2 operator+(const Jet2& a, const Jet2& b) noexcept {
    Jet2 r;
    r.value = a.value + b.value;
    for (std::size_t k = 0; k < 4; ++k) r.grad[k] = a.grad[k] + b.grad[k];
    for (std::size_t k = 0; k < 10; ++k) r.hess[k] = a.hess[k] + b.hess[k];
    return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) noexcept {
    Jet2 r;
    r.value = a.value - b.value;
    for (std::size_t k = 0; k < 4; ++k) r.grad[k] = a.grad[k] - b.grad[k];
    for (std::size_t k = 0; k < 10; ++k) r.hess[k] = a.hess[k] - b.hess[k];
    return r;
}

Jet2 operator-(const Jet2& a) noexcept {
    Jet2 r;
    r.value = -a.value;
    for (std::size_t k = 0; k < 4; ++k) r.grad[k] = -a.grad[k];
    for (std::size_t k = 0; k < 10; ++k) r.hess[k] = -a.hess[k];
    return r;
}

Jet2 operator*(double s, const Jet2& a) noexcept {
    Jet2 r;
    r.value = s * a.value;
    for (std::size_t k = 0; k < 4; ++k) r.grad[k] = s * a.grad[k];
    for (std::size_t k = 0; k < 10; ++k) r.hess[k] = s * a.hess[k];
    return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) noexcept {
    Jet2 r;
    r.value = a.value * b.value;
    for (std::size_t k = 0; k < 4; ++k) r.grad[k] = a.value * b.grad[k] + b.value * a.grad[k];
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t l = k; l < 4; ++l) {
            const std::size_t p = Jet2::packed(k, l);
            r.hess[p] = a.value * b.hess[p] + b.value * a.hess[p] + a.grad[k] * b.grad[l] +
                        a.grad[l] * b.grad[k];
        }
    }
    return r;
}

Jet2 compose(const Jet2& a, double f, double df, double d2f) noexcept {
    Jet2 r;
    r.value = f;
    for (std::size_t k = 0; k < 4; ++k) r.grad[k] = df * a.grad[k];
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t l = k; l < 4; ++l) {
            const std::size_t p = Jet2::packed(k, l);
            r.hess[p] = df * a.hess[p] + d2f * a.grad[k] * a.grad[l];
        }
    }
    return r;
}

Jet2 reciprocal(const Jet2& a) noexcept {
    const double inv = 1.0 / a.value;
    return compose(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

Jet2 integer_power(const Jet2& a, long n) noexcept {
    if (n < 0) return reciprocal(integer_power(a, -n));
    Jet2 result = Jet2::constant(1.0);
    Jet2 base = a;
    bool first = true;
    while (n > 0) {
        if (n & 1) {
            result = first ? base : result * base;
            first = false;
        }
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

}  // namespace nullgeo
