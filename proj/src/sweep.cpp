#include "nullgeo/sweep.hpp"

#include <charconv>
#include <exception>

#include "nullgeo/errors.hpp"

namespace nullgeo {

namespace {

double to_double(std::string_view s, std::string_view whole) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw Error("bad number '" + std::string(s) + "' in grid '" + std::string(whole) + "'");
    return v;
}

PointReport classify_one(const MetricSpec& spec, const Vec4& x, const ParamMap& resolved, const Tolerances& tol) {
    try {
        return make_point_report(spec.name, resolved, classify(spec, x, resolved, tol));
    } catch (const std::exception& e) {
        return failed_point_report(spec.name, x, resolved, e.what(), tol);
    }
}

}  // namespace

std::vector<double> GridAxis::values() const {
    std::vector<double> out;
    if (count == 1) return {lo};
    for (std::size_t k = 0; k < count; ++k)
        out.push_back(k + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1));
    return out;
}

GridAxis parse_grid_axis(std::string_view text, const Chart& chart) {
    const auto eq = text.find('=');
    const auto dots = text.find("..");
    const auto colon = text.rfind(':');
    if (eq == std::string_view::npos || dots == std::string_view::npos || colon == std::string_view::npos ||
        !(eq < dots && dots < colon))
        throw Error("grid '" + std::string(text) + "' is not of the form name=a..b:n");
    GridAxis axis;
    const std::string_view name = text.substr(0, eq);
    bool found = false;
    for (std::size_t i = 0; i < 4; ++i)
        if (chart[i] == name) {
            axis.coordinate = i;
            found = true;
        }
    if (!found) throw Error("grid axis '" + std::string(name) + "' is not a chart coordinate");
    axis.lo = to_double(text.substr(eq + 1, dots - eq - 1), text);
    axis.hi = to_double(text.substr(dots + 2, colon - dots - 2), text);
    const double n = to_double(text.substr(colon + 1), text);
    if (n < 1 || n != static_cast<double>(static_cast<std::size_t>(n)))
        throw Error("grid '" + std::string(text) + "' needs a positive integer sample count");
    axis.count = static_cast<std::size_t>(n);
    return axis;
}

std::vector<Vec4> grid_points(const Vec4& base, const std::vector<GridAxis>& axes) {
    std::vector<Vec4> out{base};
    for (const auto& axis : axes) {
        std::vector<Vec4> next;
        for (const auto& p : out)
            for (double v : axis.values()) {
                Vec4 q = p;
                q[axis.coordinate] = v;
                next.push_back(q);
            }
        out = std::move(next);
    }
    return out;
}

std::vector<PointReport> classify_sweep(const MetricSpec& spec, const std::vector<Vec4>& points,
                                        const ParamMap& overrides, const Tolerances& tol) {
    const ParamMap p = resolve_params(spec, overrides);
    std::vector<PointReport> out(points.size());
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = classify_one(spec, points[k], p, tol);
    return out;
}

std::vector<PointReport> classify_sweep_serial(const MetricSpec& spec, const std::vector<Vec4>& points,
                                               const ParamMap& overrides, const Tolerances& tol) {
    const ParamMap p = resolve_params(spec, overrides);
    std::vector<PointReport> out;
    out.reserve(points.size());
    for (const auto& x : points) out.push_back(classify_one(spec, x, p, tol));
    return out;
}

std::vector<Trajectory> integrate_bundle(const MetricSpec& spec, const ParamMap& params,
                                         const std::vector<GeodesicState>& initial, double s_end,
                                         const StepControl& ctl) {
    const ParamMap p = resolve_params(spec, params);
    std::vector<Trajectory> out(initial.size());
    std::vector<std::exception_ptr> errors(initial.size());
    const auto n = static_cast<std::ptrdiff_t>(initial.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        try {
            out[i] = integrate(spec, p, initial[i], s_end, ctl);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<Trajectory> integrate_bundle_serial(const MetricSpec& spec, const ParamMap& params,
                                                const std::vector<GeodesicState>& initial, double s_end,
                                                const StepControl& ctl) {
    const ParamMap p = resolve_params(spec, params);
    std::vector<Trajectory> out;
    out.reserve(initial.size());
    for (const auto& s : initial) out.push_back(integrate(spec, p, s, s_end, ctl));
    return out;
}

}  // namespace nullgeo
