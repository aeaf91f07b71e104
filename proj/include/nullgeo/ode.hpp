#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <exception>
#include <string_view>

namespace nullgeo {

struct StepControl {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 1e-3;
    double h_min = 1e-12;
    double h_max = 0.05;
    std::size_t max_steps = 2'000'000;
};

enum class Termination { ParameterEnd, DomainExit, StepUnderflow, MaxSteps };

inline std::string_view to_string(Termination t) noexcept {
    switch (t) {
        case Termination::ParameterEnd: return "parameter-end";
        case Termination::DomainExit: return "domain-exit";
        case Termination::StepUnderflow: return "step-underflow";
        case Termination::MaxSteps: return "max-steps";
    }
    return "?";
}

/// Adaptive Dormand-Prince 5(4) on y' = f(s, y), from s0 toward s1 (either
/// direction). `on_accept(s, y, dy)` sees every accepted step, dy being f at
/// the new point (FSAL). A right-hand side that throws shrinks the step; if
/// that drives the step below h_min the run ends with DomainExit. `stop(s, y)`
/// returning true after an accepted step ends it with DomainExit as well.
template <std::size_t N, typename F, typename Accept, typename Stop>
Termination dormand_prince(F&& f, double s0, double s1, std::array<double, N> y, const StepControl& ctl,
                           Accept&& on_accept, Stop&& stop) {
    using State = std::array<double, N>;
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double dir = s1 >= s0 ? 1.0 : -1.0;
    auto combine = [](const State& base, double h, std::initializer_list<std::pair<double, const State*>> terms) {
        State out = base;
        for (const auto& [w, k] : terms)
            for (std::size_t i = 0; i < N; ++i) out[i] += h * w * (*k)[i];
        return out;
    };

    double s = s0;
    State k1;
    try {
        k1 = f(s, y);
    } catch (const std::exception&) {
        return Termination::DomainExit;
    }
    on_accept(s, y, k1);
    double h = std::min(ctl.h_init, ctl.h_max);
    std::size_t steps = 0;
    while (dir * (s1 - s) > 0.0) {
        if (steps++ >= ctl.max_steps) return Termination::MaxSteps;
        h = std::min(h, std::abs(s1 - s));
        const double hs = dir * h;
        State k2, k3, k4, k5, k6, k7, y5;
        bool failed = false;
        try {
            k2 = f(s + c2 * hs, combine(y, hs, {{a21, &k1}}));
            k3 = f(s + c3 * hs, combine(y, hs, {{a31, &k1}, {a32, &k2}}));
            k4 = f(s + c4 * hs, combine(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
            k5 = f(s + c5 * hs, combine(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
            k6 = f(s + hs, combine(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
            y5 = combine(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
            k7 = f(s + hs, y5);
        } catch (const std::exception&) {
            failed = true;
        }
        if (failed) {
            h *= 0.25;
            if (h < ctl.h_min) return Termination::DomainExit;
            continue;
        }
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei =
                hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = ctl.atol + ctl.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(ei) / sc);
        }
        if (!std::isfinite(err)) {
            h *= 0.25;
            if (h < ctl.h_min) return Termination::DomainExit;
            continue;
        }
        if (err <= 1.0) {
            s = (std::abs(s1 - (s + hs)) <= 1e-14 * std::max(1.0, std::abs(s1))) ? s1 : s + hs;
            y = y5;
            k1 = k7;
            on_accept(s, y, k1);
            if (stop(s, y)) return Termination::DomainExit;
        }
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h = std::min(h * factor, ctl.h_max);
        if (h < ctl.h_min && dir * (s1 - s) > 0.0) return Termination::StepUnderflow;
    }
    return Termination::ParameterEnd;
}

}  // namespace nullgeo
