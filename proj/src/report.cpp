#include "nullgeo/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "nullgeo/errors.hpp"

namespace nullgeo {

namespace {

Json vec_json(const Vec4& v) { return Json::array({v[0], v[1], v[2], v[3]}); }

Vec4 vec_from(const Json& j) {
    if (!j.is_array() || j.size() != 4) throw Error("report: expected an array of four numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

void write_number(std::ostream& out, double v) {
    if (!std::isfinite(v)) {
        out << "null";
        return;
    }
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

void write(std::ostream& out, const Json& j, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out << "{}";
                return;
            }
            out << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out << ',';
                first = false;
                newline(depth + 1);
                out << Json(it.key()).dump() << (indent < 0 ? ":" : ": ");
                write(out, it.value(), indent, depth + 1);
            }
            newline(depth);
            out << '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out << "[]";
                return;
            }
            // Short numeric arrays stay on one line.
            const bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_number(); });
            out << '[';
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k) out << (flat && indent >= 0 ? ", " : ",");
                if (!flat) newline(depth + 1);
                write(out, j[k], indent, depth + 1);
            }
            if (!flat) newline(depth);
            out << ']';
            return;
        }
        case Json::value_t::number_float: write_number(out, j.get<double>()); return;
        default: out << j.dump(); return;
    }
}

}  // namespace

bool PointReport::operator==(const PointReport& o) const {
    return metric == o.metric && point == o.point && params == o.params && ok == o.ok && error == o.error &&
           type == o.type && roots == o.roots && weyl_abs == o.weyl_abs && weyl_scalars == o.weyl_scalars &&
           principal_directions == o.principal_directions && diagnostics == o.diagnostics &&
           tolerances.cluster_radius == o.tolerances.cluster_radius &&
           tolerances.weyl_zero == o.tolerances.weyl_zero && tolerances.conjugacy == o.tolerances.conjugacy;
}

PointReport make_point_report(const std::string& metric, const ParamMap& params, const PetrovReport& rep) {
    PointReport r;
    r.metric = metric;
    r.point = rep.point;
    r.params = params;
    r.type = rep.type;
    for (const auto& root : rep.roots.roots)
        r.roots.push_back({root.root.value.real(), root.root.value.imag(), root.root.infinite, root.multiplicity});
    for (std::size_t u = 0; u < 5; ++u) {
        r.weyl_scalars[u] = rep.scalars.a[u];
        r.weyl_abs[u] = std::abs(rep.scalars.a[u]);
    }
    for (const auto& d : rep.principal_directions) r.principal_directions.push_back({d.vector, d.multiplicity});
    r.diagnostics.frame_condition_residual = rep.frame_condition_residual;
    r.diagnostics.conjugacy_residual = rep.conjugacy_residual;
    r.diagnostics.root_margin = rep.roots.margin;
    r.diagnostics.backward_error = rep.roots.backward_error;
    r.diagnostics.weyl_scale = rep.weyl_scale;
    r.diagnostics.curvature_scale = rep.curvature_scale;
    r.diagnostics.noise_floor = rep.noise_floor;
    r.diagnostics.warnings = rep.roots.warnings;
    r.tolerances = rep.tolerances;
    return r;
}

PointReport failed_point_report(const std::string& metric, const Vec4& point, const ParamMap& params,
                                const std::string& error, const Tolerances& tol) {
    PointReport r;
    r.metric = metric;
    r.point = point;
    r.params = params;
    r.ok = false;
    r.error = error;
    r.tolerances = tol;
    return r;
}

Json to_json(const PointReport& r) {
    Json j;
    j["metric"] = r.metric;
    j["point"] = vec_json(r.point);
    j["params"] = Json::object();
    for (const auto& [k, v] : r.params) j["params"][k] = v;
    j["ok"] = r.ok;
    if (!r.ok) {
        j["error"] = r.error;
    } else {
        j["petrov_type"] = std::string(to_string(r.type));
        j["roots"] = Json::array();
        for (const auto& root : r.roots)
            j["roots"].push_back(
                {{"re", root.re}, {"im", root.im}, {"infinite", root.infinite}, {"multiplicity", root.multiplicity}});
        j["weyl_scalars_abs"] = Json::array();
        for (double a : r.weyl_abs) j["weyl_scalars_abs"].push_back(a);
        j["weyl_scalars"] = Json::array();
        for (const auto& a : r.weyl_scalars) j["weyl_scalars"].push_back({{"re", a.real()}, {"im", a.imag()}});
        j["principal_directions"] = Json::array();
        for (const auto& d : r.principal_directions)
            j["principal_directions"].push_back({{"vector", vec_json(d.vector)}, {"multiplicity", d.multiplicity}});
        const auto& d = r.diagnostics;
        j["diagnostics"] = {{"frame_condition_residual", d.frame_condition_residual},
                            {"conjugacy_residual", d.conjugacy_residual},
                            {"root_margin", d.root_margin},
                            {"backward_error", d.backward_error},
                            {"weyl_scale", d.weyl_scale},
                            {"curvature_scale", d.curvature_scale},
                            {"noise_floor", d.noise_floor},
                            {"warnings", d.warnings}};
    }
    j["tolerances"] = {{"cluster_radius", r.tolerances.cluster_radius},
                       {"weyl_zero", r.tolerances.weyl_zero},
                       {"conjugacy", r.tolerances.conjugacy}};
    return j;
}

PointReport point_report_from_json(const Json& j) {
    try {
        PointReport r;
        r.metric = j.at("metric").get<std::string>();
        r.point = vec_from(j.at("point"));
        for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<double>();
        r.ok = j.at("ok").get<bool>();
        const auto& t = j.at("tolerances");
        r.tolerances = {t.at("cluster_radius").get<double>(), t.at("weyl_zero").get<double>(),
                        t.at("conjugacy").get<double>()};
        if (!r.ok) {
            r.error = j.at("error").get<std::string>();
            return r;
        }
        r.type = petrov_type_from_string(j.at("petrov_type").get<std::string>());
        for (const auto& x : j.at("roots"))
            r.roots.push_back({x.at("re").get<double>(), x.at("im").get<double>(), x.at("infinite").get<bool>(),
                               x.at("multiplicity").get<int>()});
        for (std::size_t u = 0; u < 5; ++u) {
            r.weyl_abs[u] = j.at("weyl_scalars_abs").at(u).get<double>();
            const auto& a = j.at("weyl_scalars").at(u);
            r.weyl_scalars[u] = {a.at("re").get<double>(), a.at("im").get<double>()};
        }
        for (const auto& x : j.at("principal_directions"))
            r.principal_directions.push_back({vec_from(x.at("vector")), x.at("multiplicity").get<int>()});
        const auto& d = j.at("diagnostics");
        r.diagnostics.frame_condition_residual = d.at("frame_condition_residual").get<double>();
        r.diagnostics.conjugacy_residual = d.at("conjugacy_residual").get<double>();
        r.diagnostics.root_margin = d.at("root_margin").get<double>();
        r.diagnostics.backward_error = d.at("backward_error").get<double>();
        r.diagnostics.weyl_scale = d.at("weyl_scale").get<double>();
        r.diagnostics.curvature_scale = d.at("curvature_scale").get<double>();
        r.diagnostics.noise_floor = d.at("noise_floor").get<double>();
        r.diagnostics.warnings = d.at("warnings").get<std::vector<std::string>>();
        return r;
    } catch (const Json::exception& e) {
        throw Error(std::string("malformed point report: ") + e.what());
    }
}

Json to_json(const Trajectory& t) {
    Json j;
    j["termination"] = std::string(to_string(t.termination));
    j["samples"] = Json::array();
    for (const auto& s : t.samples)
        j["samples"].push_back(
            {{"s", s.state.s}, {"x", vec_json(s.state.x)}, {"xi", vec_json(s.state.xi)}, {"nullnorm", s.null_norm}});
    return j;
}

std::string dump(const Json& j, int indent) {
    std::ostringstream out;
    write(out, j, indent, 0);
    return out.str();
}

}  // namespace nullgeo
