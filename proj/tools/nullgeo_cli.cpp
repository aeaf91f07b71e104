// nullgeo: Petrov classification and null-geodesic checks for metrics given
// as coordinate expressions.

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "nullgeo/catalog.hpp"
#include "nullgeo/errors.hpp"
#include "nullgeo/geodesic.hpp"
#include "nullgeo/lightlike.hpp"
#include "nullgeo/null_frame.hpp"
#include "nullgeo/report.hpp"
#include "nullgeo/sweep.hpp"

using namespace nullgeo;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kMath = 2;
constexpr int kCheckFailed = 3;

constexpr const char* kVersion = "0.1.0";

// Bad command-line input discovered after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string metric;
    std::string params;
    std::string point;
    std::vector<std::string> grid;
    double tol_root = 1e-4;
    double tol_weyl_zero = 1e-9;
    bool json = false;
    std::string out;
    std::string catalog_file;
};

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const std::string& what) {
    std::vector<double> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw UsageError(what + ": empty component in '" + text + "'");
        item = item.substr(b, e - b + 1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size())
            throw UsageError(what + ": '" + item + "' is not a number");
        out.push_back(v);
    }
    if (expected && out.size() != expected)
        throw UsageError(what + " needs " + std::to_string(expected) + " comma-separated numbers");
    return out;
}

Vec4 parse_vec4(const std::string& text, const std::string& what) {
    const auto v = parse_numbers(text, 4, what);
    return {v[0], v[1], v[2], v[3]};
}

ParamMap parse_params(const std::string& text) {
    ParamMap out;
    if (text.empty()) return out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--params entries look like name=value, got '" + item + "'");
        out[item.substr(0, eq)] = parse_numbers(item.substr(eq + 1), 1, "--params " + item.substr(0, eq))[0];
    }
    return out;
}

class Session {
   public:
    explicit Session(const Globals& g) : g_(g), catalog_(builtin_catalog()) {
        if (!g.catalog_file.empty()) catalog_.merge(Catalog::load(g.catalog_file));
    }

    const CatalogEntry& entry() const {
        if (g_.metric.empty()) throw UsageError("--metric is required");
        if (!catalog_.contains(g_.metric)) throw UsageError("unknown metric '" + g_.metric + "'");
        return catalog_.find(g_.metric);
    }

    ParamMap params() const {
        const ParamMap overrides = parse_params(g_.params);
        try {
            return resolve_params(entry().metric, overrides);
        } catch (const UnknownSymbolError& e) {
            throw UsageError(e.what());
        }
    }

    Vec4 point() const { return g_.point.empty() ? entry().sample : parse_vec4(g_.point, "--point"); }

    Tolerances tolerances() const {
        Tolerances t;
        t.cluster_radius = g_.tol_root;
        t.weyl_zero = g_.tol_weyl_zero;
        return t;
    }

    Json header(const std::string& command) const {
        Json h;
        h["tool"] = "nullgeo";
        h["version"] = kVersion;
        h["command"] = command;
        h["metric"] = g_.metric;
        h["params"] = Json::object();
        for (const auto& [k, v] : params()) h["params"][k] = v;
        return h;
    }

    // Writes to --out, or stdout.
    void emit(const std::string& text) const {
        if (g_.out.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(g_.out);
        if (!f) throw UsageError("cannot write '" + g_.out + "'");
        f << text;
    }

    const Globals& globals() const { return g_; }
    const Catalog& catalog() const { return catalog_; }

   private:
    const Globals& g_;
    Catalog catalog_;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v + 0.0);
    return buf;
}

std::string fmt_complex(double re, double im) {
    return fmt(re) + (std::signbit(im + 0.0) ? "-" : "+") + fmt(std::abs(im)) + "i";
}

std::string fmt_point(const Vec4& x) {
    return fmt(x[0]) + "," + fmt(x[1]) + "," + fmt(x[2]) + "," + fmt(x[3]);
}

Expression parse_for(const CatalogEntry& e, const std::string& text) {
    return parse(text, e.metric.chart, e.metric.param_names());
}

// Initial tangent from --direction, optionally moved onto the null cone.
Vec4 initial_direction(const Session& s, const Vec4& x, const std::string& dir, bool project, bool require_null) {
    Vec4 xi = parse_vec4(dir, "--direction");
    const Mat4 g = metric_value(s.entry().metric, x, s.params());
    if (project) xi = null_project(g, xi, 0);
    const double n = pair(g, xi, xi);
    if (require_null && std::abs(n) > 1e-9 * max_abs(g) * euclid_dot(xi, xi))
        throw DomainError("initial direction is not null: g(xi, xi) = " + fmt(n) +
                          "; pass --null-project to solve for the first component");
    return xi;
}

int cmd_classify(const Session& s) {
    const auto& e = s.entry();
    std::vector<GridAxis> axes;
    for (const auto& g : s.globals().grid) {
        try {
            axes.push_back(parse_grid_axis(g, e.metric.chart));
        } catch (const Error& ex) {
            throw UsageError(ex.what());
        }
    }
    const auto points = grid_points(s.point(), axes);
    const auto reports = classify_sweep(e.metric, points, s.params(), s.tolerances());

    bool any_failed = false;
    for (const auto& r : reports) {
        any_failed = any_failed || !r.ok;
        for (const auto& w : r.diagnostics.warnings)
            std::cerr << "warning at (" << fmt_point(r.point) << "): " << w << "\n";
    }
    if (s.globals().json) {
        Json doc;
        doc["header"] = s.header("classify");
        doc["reports"] = Json::array();
        for (const auto& r : reports) doc["reports"].push_back(to_json(r));
        s.emit(dump(doc) + "\n");
    } else {
        std::ostringstream out;
        for (const auto& r : reports) {
            out << e.metric.name << " (" << fmt_point(r.point) << "): ";
            if (!r.ok) {
                out << "error: " << r.error << "\n";
                continue;
            }
            out << "type " << to_string(r.type) << ", roots";
            for (const auto& root : r.roots)
                out << " " << (root.infinite ? std::string("inf") : fmt_complex(root.re, root.im)) << "^"
                    << root.multiplicity;
            out << ", |a| =";
            for (double a : r.weyl_abs) out << " " << fmt(a);
            out << "\n";
        }
        s.emit(out.str());
    }
    return any_failed ? kMath : kOk;
}

struct GeodesicFlags {
    std::string direction;
    double s_end = 20.0;
    bool null_project = false;
    bool require_null = false;
    std::string format = "csv";
};

int cmd_geodesic(const Session& s, const GeodesicFlags& f) {
    if (f.direction.empty()) throw UsageError("--direction is required");
    const auto& e = s.entry();
    const Vec4 x = s.point();
    const Vec4 xi = initial_direction(s, x, f.direction, f.null_project, f.require_null);
    const Trajectory t = integrate(e.metric, s.params(), {x, xi, 0.0}, f.s_end);
    if (f.format == "json") {
        Json doc;
        doc["header"] = s.header("geodesic");
        doc["trajectory"] = to_json(t);
        s.emit(dump(doc) + "\n");
    } else {
        std::ostringstream out;
        write_csv(out, t);
        s.emit(out.str());
    }
    std::cerr << "samples " << t.samples.size() << ", termination " << to_string(t.termination)
              << ", max null-norm drift " << fmt(t.max_relative_null_norm()) << "\n";
    return kOk;
}

struct ConformalFlags {
    std::string sigma;
    std::string direction;
    double s_end = 20.0;
    bool null_project = false;
};

int cmd_conformal(const Session& s, const ConformalFlags& f) {
    if (f.sigma.empty()) throw UsageError("--sigma is required");
    if (f.direction.empty()) throw UsageError("--direction is required");
    const auto& e = s.entry();
    Expression sigma;
    bool preset = false;
    for (const auto& n : e.sigmas)
        if (n.name == f.sigma) {
            sigma = n.expr;
            preset = true;
        }
    if (!preset) sigma = parse_for(e, f.sigma);
    const Vec4 x = s.point();
    const Vec4 xi = initial_direction(s, x, f.direction, f.null_project, true);
    ConformalOptions opt;
    opt.s_end = f.s_end;
    const ConformalReport r = conformal_invariance_check(e.metric, s.params(), sigma, {x, xi, 0.0}, opt);
    if (s.globals().json) {
        Json doc;
        doc["header"] = s.header("conformal");
        doc["report"] = {{"sigma", sigma.to_string()},
                         {"sigma_constant", r.sigma_constant},
                         {"null_distance", r.null_distance},
                         {"control_distance", r.control_distance},
                         {"null_pass", r.null_pass},
                         {"control_pass", r.control_pass},
                         {"pass", r.pass}};
        s.emit(dump(doc) + "\n");
    } else {
        s.emit("null ray path distance " + fmt(r.null_distance) + (r.null_pass ? " PASS" : " FAIL") +
               "\ntimelike control distance " + fmt(r.control_distance) + (r.control_pass ? " PASS" : " FAIL") +
               (r.sigma_constant ? " (constant factor: must coincide)" : " (must separate)") + "\n" +
               (r.pass ? "PASS" : "FAIL") + "\n");
    }
    return r.pass ? kOk : kCheckFailed;
}

struct SurfaceFlags {
    std::string surface;
    std::string F;
    std::vector<std::string> seeds;
    double s_end = 20.0;
};

int cmd_hypersurface(const Session& s, const SurfaceFlags& f) {
    const auto& e = s.entry();
    HypersurfaceSpec surf;
    if (!f.surface.empty()) {
        try {
            surf = e.surface(f.surface, s.params());
        } catch (const CatalogError& ex) {
            throw UsageError(ex.what());
        }
    } else if (!f.F.empty()) {
        surf = {"F", parse_for(e, f.F), {}};
    } else {
        throw UsageError("give --surface NAME or --F EXPR");
    }
    if (!f.seeds.empty()) {
        surf.seeds.clear();
        for (const auto& t : f.seeds) surf.seeds.push_back(parse_vec4(t, "--seed"));
    }
    if (surf.seeds.empty()) throw UsageError("no seed points; pass --seed");

    FoliationOptions opt;
    opt.s_end = f.s_end;
    bool all = true;
    Json reports = Json::array();
    std::ostringstream out;
    for (const auto& seed : surf.seeds) {
        const LightlikeReport ll = lightlike_test(e.metric, s.params(), surf, seed);
        if (!ll.lightlike) {
            all = false;
            out << "seed (" << fmt_point(seed) << "): not lightlike, g(N,N) = " << fmt(ll.normal_norm) << " FAIL\n";
            reports.push_back({{"seed", Json::array({seed[0], seed[1], seed[2], seed[3]})},
                               {"lightlike", false},
                               {"normal_norm", ll.normal_norm},
                               {"pass", false}});
            continue;
        }
        const FoliationReport r = foliation_check(e.metric, s.params(), surf, seed, opt);
        all = all && r.pass;
        out << "seed (" << fmt_point(seed) << "): |F| " << fmt(r.max_F) << ", null " << fmt(r.max_null)
            << ", pregeodesic " << fmt(r.max_pregeodesic) << ", " << to_string(r.curve.termination)
            << (r.pass ? " PASS" : " FAIL") << "\n";
        reports.push_back({{"seed", Json::array({seed[0], seed[1], seed[2], seed[3]})},
                           {"lightlike", true},
                           {"max_F", r.max_F},
                           {"max_null", r.max_null},
                           {"max_pregeodesic", r.max_pregeodesic},
                           {"termination", std::string(to_string(r.curve.termination))},
                           {"pass", r.pass}});
    }
    if (s.globals().json) {
        Json doc;
        doc["header"] = s.header("hypersurface");
        doc["surface"] = surf.F.to_string();
        doc["reports"] = reports;
        doc["pass"] = all;
        s.emit(dump(doc) + "\n");
    } else {
        s.emit(out.str() + (all ? "PASS\n" : "FAIL\n"));
    }
    return all ? kOk : kCheckFailed;
}

struct PrincipalFlags {
    double s_end = 20.0;
    double geo_tol = 1e-5;
};

int cmd_principal(const Session& s, const PrincipalFlags& f) {
    const auto& e = s.entry();
    CongruenceOptions opt;
    opt.s_end = f.s_end;
    opt.geo_tol = f.geo_tol;
    opt.tolerances = s.tolerances();
    const CongruenceReport r = principal_congruence_check(e.metric, s.params(), s.point(), opt);
    if (s.globals().json) {
        Json doc;
        doc["header"] = s.header("principal");
        doc["petrov_type"] = std::string(to_string(r.type));
        doc["message"] = r.message;
        doc["curves"] = Json::array();
        for (const auto& c : r.curves) {
            Json j = {{"root", {{"re", c.seed_root.value.real()},
                                {"im", c.seed_root.value.imag()},
                                {"infinite", c.seed_root.infinite}}},
                      {"multiplicity", c.multiplicity},
                      {"max_residual", c.max_residual},
                      {"termination", std::string(to_string(c.curve.termination))},
                      {"pass", c.pass}};
            if (c.failure) j["failure"] = *c.failure;
            if (c.failure_state)
                j["failure_point"] = Json::array(
                    {c.failure_state->x[0], c.failure_state->x[1], c.failure_state->x[2], c.failure_state->x[3]});
            doc["curves"].push_back(j);
        }
        doc["pass"] = r.pass;
        s.emit(dump(doc) + "\n");
    } else {
        std::ostringstream out;
        out << "type " << to_string(r.type) << ": " << r.message << "\n";
        for (const auto& c : r.curves) {
            out << "  root "
                << (c.seed_root.infinite ? std::string("inf")
                                         : fmt_complex(c.seed_root.value.real(), c.seed_root.value.imag()))
                << " (x" << c.multiplicity << "): max residual " << fmt(c.max_residual);
            if (c.failure) out << ", failed: " << *c.failure;
            out << (c.pass ? " PASS" : " FAIL") << "\n";
        }
        s.emit(out.str());
    }
    return r.pass ? kOk : kCheckFailed;
}

int cmd_catalog(const Session& s) {
    if (s.globals().json) {
        Json doc = Json::array();
        for (const auto& e : s.catalog().entries()) {
            Json j;
            j["name"] = e.metric.name;
            j["chart"] = Json::array();
            for (const auto& c : e.metric.chart) j["chart"].push_back(c);
            j["params"] = Json::object();
            for (const auto& [k, v] : e.metric.params) j["params"][k] = v;
            j["sample"] = Json::array({e.sample[0], e.sample[1], e.sample[2], e.sample[3]});
            j["sigmas"] = Json::array();
            for (const auto& n : e.sigmas) j["sigmas"].push_back(n.name);
            j["surfaces"] = Json::array();
            for (const auto& sf : e.surfaces) j["surfaces"].push_back(sf.name);
            doc.push_back(j);
        }
        s.emit(dump(doc) + "\n");
        return kOk;
    }
    std::ostringstream out;
    for (const auto& e : s.catalog().entries()) {
        out << e.metric.name << "  chart (" << e.metric.chart[0] << "," << e.metric.chart[1] << ","
            << e.metric.chart[2] << "," << e.metric.chart[3] << ")";
        for (const auto& [k, v] : e.metric.params) out << " " << k << "=" << fmt(v);
        for (const auto& n : e.sigmas) out << " sigma:" << n.name;
        for (const auto& sf : e.surfaces) out << " surface:" << sf.name;
        out << "\n";
    }
    s.emit(out.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Petrov classification and null-geodesic checks for Lorentzian metrics", "nullgeo"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Globals g;
    app.add_option("--metric", g.metric, "Metric name from the catalog");
    app.add_option("--params", g.params, "Parameter overrides, name=value[,name=value]");
    app.add_option("--point", g.point, "Chart point t,x,y,z (defaults to the metric's sample point)");
    app.add_option("--grid", g.grid, "Grid axis name=a..b:n; repeat for a Cartesian product");
    app.add_option("--tol-root", g.tol_root, "Chordal radius for merging quartic roots")->check(CLI::PositiveNumber);
    app.add_option("--tol-weyl-zero", g.tol_weyl_zero, "Relative size below which Weyl counts as zero")
        ->check(CLI::PositiveNumber);
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_option("--out", g.out, "Write output to FILE instead of stdout");
    app.add_option("--catalog", g.catalog_file, "Extra catalog file, merged over the built-in one");

    auto* classify_cmd = app.add_subcommand("classify", "Petrov type at a point or over a grid");
    classify_cmd->fallthrough();

    GeodesicFlags gf;
    auto* geodesic_cmd = app.add_subcommand("geodesic", "Integrate an affinely parametrized geodesic");
    geodesic_cmd->fallthrough();
    geodesic_cmd->add_option("--direction", gf.direction, "Initial tangent, four components");
    geodesic_cmd->add_option("--s-end", gf.s_end, "Final affine parameter");
    geodesic_cmd->add_flag("--null-project", gf.null_project, "Solve for the first component to make it null");
    geodesic_cmd->add_flag("--require-null", gf.require_null, "Refuse a non-null initial direction");
    geodesic_cmd->add_option("--format", gf.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    ConformalFlags cf;
    auto* conformal_cmd = app.add_subcommand("conformal", "Compare null rays of g and sigma*g");
    conformal_cmd->fallthrough();
    conformal_cmd->add_option("--sigma", cf.sigma, "Conformal factor: a catalog preset name or an expression");
    conformal_cmd->add_option("--direction", cf.direction, "Initial null tangent, four components");
    conformal_cmd->add_option("--s-end", cf.s_end, "Affine length to integrate");
    conformal_cmd->add_flag("--null-project", cf.null_project, "Solve for the first component to make it null");

    SurfaceFlags sf;
    auto* surface_cmd = app.add_subcommand("hypersurface", "Check the null generators of a level set");
    surface_cmd->fallthrough();
    surface_cmd->add_option("--surface", sf.surface, "Surface name from the catalog");
    surface_cmd->add_option("--F", sf.F, "Level-set function instead of a named surface");
    surface_cmd->add_option("--seed", sf.seeds, "Seed point on F = 0; repeatable");
    surface_cmd->add_option("--s-end", sf.s_end, "Parameter length of each generator");

    PrincipalFlags pf;
    auto* principal_cmd = app.add_subcommand("principal", "Follow the principal null congruences");
    principal_cmd->fallthrough();
    principal_cmd->add_option("--s-end", pf.s_end, "Parameter length of each curve");
    principal_cmd->add_option("--geo-tol", pf.geo_tol, "Pregeodesic residual tolerance");

    auto* catalog_cmd = app.add_subcommand("catalog", "List the available metrics");
    catalog_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const Session s(g);
        if (*classify_cmd) return cmd_classify(s);
        if (*geodesic_cmd) return cmd_geodesic(s, gf);
        if (*conformal_cmd) return cmd_conformal(s, cf);
        if (*surface_cmd) return cmd_hypersurface(s, sf);
        if (*principal_cmd) return cmd_principal(s, pf);
        if (*catalog_cmd) return cmd_catalog(s);
    } catch (const UsageError& e) {
        std::cerr << "nullgeo: " << e.what() << "\n";
        return kUsage;
    } catch (const CatalogError& e) {
        std::cerr << "nullgeo: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "nullgeo: " << e.what() << "\n";
        return kUsage;
    } catch (const UnknownSymbolError& e) {
        std::cerr << "nullgeo: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "nullgeo: " << e.what() << "\n";
        return kMath;
    }
    return kUsage;
}
