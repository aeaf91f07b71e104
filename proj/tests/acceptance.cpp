// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nullgeo/catalog.hpp"
#include "nullgeo/curvature.hpp"
#include "nullgeo/errors.hpp"
#include "nullgeo/geodesic.hpp"
#include "nullgeo/lightlike.hpp"
#include "nullgeo/null_frame.hpp"
#include "nullgeo/petrov.hpp"
#include "nullgeo/quartic.hpp"
#include "random_quartic.hpp"

using namespace nullgeo;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failures and the worst measured values for the summary line.
class Tally {
   public:
    void require(bool ok, const std::string& what) {
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        if (!ok) ++failed_;
    }
    void note(const std::string& key, double value) {
        for (auto& [k, v] : worst_)
            if (k == key) {
                v = std::max(v, value);
                return;
            }
        worst_.push_back({key, value});
    }
    Outcome outcome() const {
        std::ostringstream os;
        os.precision(3);
        for (std::size_t i = 0; i < worst_.size(); ++i) os << (i ? ", " : "") << worst_[i].first << " " << worst_[i].second;
        if (failed_) {
            os << "; " << failed_ << " failed:";
            for (const auto& f : failures_) os << " [" << f << "]";
        }
        return {failed_ == 0, os.str()};
    }

   private:
    int failed_ = 0;
    std::vector<std::string> failures_;
    std::vector<std::pair<std::string, double>> worst_;
};

const CatalogEntry& entry(std::string_view name) { return builtin_catalog().find(name); }

std::string describe(const Vec4& x) {
    std::ostringstream os;
    os.precision(4);
    os << "(" << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3] << ")";
    return os.str();
}

double rank4_diff(const Rank4& a, const Rank4& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
    return m;
}

// The sample point plus nearby points, all inside the domain.
std::vector<Vec4> points_near_sample(const CatalogEntry& e, std::mt19937_64& rng, int extra) {
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    std::vector<Vec4> out{e.sample};
    while (static_cast<int>(out.size()) < extra + 1) {
        Vec4 x = e.sample;
        for (auto& c : x) c += u(rng);
        try {
            check_domain(e.metric, x, e.metric.params);
            out.push_back(x);
        } catch (const DomainError&) {
        }
    }
    return out;
}

Outcome flat_space() {
    Tally t;
    const auto& e = entry("minkowski");
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int k = 0; k < 25; ++k) {
        const Vec4 x{u(rng), u(rng), u(rng), u(rng)};
        const auto c = compute_curvature(metric_jet(e.metric, x));
        const double gam = *std::max_element(c.gamma.gamma.v.begin(), c.gamma.gamma.v.end(),
                                             [](double a, double b) { return std::abs(a) < std::abs(b); });
        t.note("christoffel", std::abs(gam));
        t.note("riemann", c.riemann.lowered.max_abs());
        t.note("weyl", c.weyl.lowered.max_abs());
        t.require(std::abs(gam) < 1e-12 && c.riemann.lowered.max_abs() < 1e-12 && c.weyl.lowered.max_abs() < 1e-12,
                  "curvature at " + describe(x));
        const auto rep = classify(e.metric, x);
        t.require(rep.type == PetrovType::O, "type " + std::string(to_string(rep.type)) + " at " + describe(x));
    }
    return t.outcome();
}

Outcome vacuum_solutions() {
    Tally t;
    std::mt19937_64 rng(102);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto in = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
    struct Case {
        const char* name;
        std::function<Vec4()> point;
    };
    const std::vector<Case> cases{
        {"schwarzschild", [&] { return Vec4{in(-5, 5), in(2.5, 20), in(0.3, 2.8), in(0, 6)}; }},
        {"kerr", [&] { return Vec4{in(-5, 5), in(3, 20), in(0.3, 2.8), in(0, 6)}; }},
        {"kasner", [&] { return Vec4{in(0.5, 3), in(-2, 2), in(-2, 2), in(-2, 2)}; }},
        {"pp-wave", [&] { return Vec4{in(-2, 2), in(-2, 2), in(-2, 2), in(-2, 2)}; }},
    };
    for (const auto& c : cases) {
        const auto& e = entry(c.name);
        for (int k = 0; k < 25; ++k) {
            const Vec4 x = c.point();
            const auto curv = compute_curvature(metric_jet(e.metric, x));
            const double ricci = max_abs(curv.ricci.ricci);
            const double scale = curv.riemann.lowered.max_abs();
            const double rel = rank4_diff(curv.weyl.lowered, curv.riemann.lowered) / scale;
            t.note("ricci", ricci);
            t.note("weyl-riemann rel", rel);
            t.require(ricci < 1e-8 && rel < 1e-9, std::string(c.name) + " at " + describe(x));
        }
    }
    return t.outcome();
}

Outcome weyl_symmetries() {
    Tally t;
    std::mt19937_64 rng(103);
    for (const auto& e : builtin_catalog().entries()) {
        for (const Vec4& x : points_near_sample(e, rng, 4)) {
            const auto c = compute_curvature(metric_jet(e.metric, x));
            const auto tetrad = build_tetrad(c.jet);
            const double coord_scale = c.riemann.lowered.max_abs();
            const double frame_scale = frame_components(c.riemann.lowered, tetrad).max_abs();
            const double sym = riemann_symmetry_residual(c.weyl.lowered) / std::max(coord_scale, 1e-300);
            const double trace = weyl_trace_residual(c.weyl, c.jet) / std::max(coord_scale, 1e-300);
            const double cond =
                frame_conditions_residual(frame_components(c.weyl, tetrad)) / std::max(frame_scale, 1e-300);
            t.note("symmetry", sym);
            t.note("trace", trace);
            t.note("frame conditions", cond);
            t.require(sym <= 1e-9 && trace <= 1e-9 && cond <= 1e-9, e.metric.name + " at " + describe(x));
        }
    }
    return t.outcome();
}

Outcome tetrad_pairings() {
    Tally t;
    std::mt19937_64 rng(104);
    for (const auto& e : builtin_catalog().entries()) {
        for (const Vec4& x : points_near_sample(e, rng, 4)) {
            const auto rep = classify(e.metric, x);
            const double pairing = frame_metric_residual(rep.tetrad, metric_value(e.metric, x, e.metric.params));
            const double conj = rep.conjugacy_residual / std::max(rep.curvature_scale, 1e-300);
            t.note("pairing", pairing);
            t.note("conjugacy rel", conj);
            t.require(pairing <= 1e-10 && conj <= 1e-10, e.metric.name + " at " + describe(x));
        }
    }
    return t.outcome();
}

// Size of the terms making up a polynomial value, for relative comparison.
double term_scale(const Quartic& q, Complex z) {
    double s = 0.0;
    for (const auto& c : q) s += std::abs(c);
    return s * std::pow(std::max(1.0, std::abs(z)), 4);
}

Outcome curvature_polynomial() {
    Tally t;
    std::mt19937_64 rng(105);
    std::normal_distribution<double> n(0.0, 1.5);
    for (const char* name : {"schwarzschild", "eddington-finkelstein", "kerr", "pp-wave", "kasner"}) {
        const auto& e = entry(name);
        for (const Vec4& x : points_near_sample(e, rng, 2)) {
            const auto c = compute_curvature(metric_jet(e.metric, x));
            const auto frame = frame_components(c.weyl, build_tetrad(c.jet));
            const auto s = extract_scalars(frame);
            const auto qa = curvature_quartic(s), qb = beta_quartic(s);
            for (int k = 0; k < 100; ++k) {
                const Complex lam(n(rng), n(rng)), mu(n(rng), n(rng));
                const Complex ca = bivector_contraction(frame, alpha_plane_bivector(lam));
                const Complex cb = bivector_contraction(frame, beta_plane_bivector(mu));
                const double ra =
                    std::abs(ca - 4.0 * evaluate(qa, lam)) / std::max(std::abs(ca), 4.0 * term_scale(qa, lam));
                const double rb =
                    std::abs(cb - 4.0 * evaluate(qb, mu)) / std::max(std::abs(cb), 4.0 * term_scale(qb, mu));
                t.note("alpha rel", ra);
                t.note("beta rel", rb);
                t.require(ra <= 1e-9 && rb <= 1e-9, std::string(name) + " at " + describe(x));
            }
        }
    }
    return t.outcome();
}

std::array<double, 3> kasner_exponents(double u) {
    const double d = 1.0 + u + u * u;
    return {-u / d, (1.0 + u) / d, u * (1.0 + u) / d};
}

// Type from the rest-frame eigenvalues p_i (p_i - 1) of the electric part.
PetrovType kasner_oracle(const std::array<double, 3>& p) {
    std::array<double, 3> q{};
    for (std::size_t i = 0; i < 3; ++i) q[i] = p[i] * (p[i] - 1.0);
    const double scale = std::max({std::abs(q[0]), std::abs(q[1]), std::abs(q[2])});
    if (scale < 1e-12) return PetrovType::O;
    int equal = 0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (std::abs(q[i] - q[j]) < 1e-9 * scale) ++equal;
    return equal == 0 ? PetrovType::I : PetrovType::D;
}

double direction_distance(const std::vector<PrincipalDirection>& a, const std::vector<PrincipalDirection>& b) {
    double worst = 0.0;
    for (const auto& d : a) {
        const Vec4 v = (1.0 / euclid_norm(d.vector)) * d.vector;
        double best = 1e9;
        for (const auto& w : b) best = std::min(best, euclid_norm(v - (1.0 / euclid_norm(w.vector)) * w.vector));
        worst = std::max(worst, best);
    }
    return worst;
}

Outcome classification() {
    Tally t;
    std::mt19937_64 rng(106);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto in = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    const auto& schw = entry("schwarzschild");
    for (int k = 0; k < 10; ++k) {
        const double M = in(0.5, 2.0), r = in(2.5 * M, 20.0);
        const Vec4 x{in(-3, 3), r, in(0.3, 2.8), in(0, 6)};
        const auto rep = classify(schw.metric, x, {{"M", M}});
        const double rel = std::abs(std::abs(rep.scalars.a[2]) - M / (r * r * r)) / (M / (r * r * r));
        t.note("coulomb rel", rel);
        t.require(rep.type == PetrovType::D && rel < 1e-7, "schwarzschild at " + describe(x));
    }
    for (int k = 0; k < 5; ++k) {
        const Vec4 x{in(-2, 2), in(-2, 2), in(-2, 2), in(-2, 2)};
        t.require(classify(entry("pp-wave").metric, x).type == PetrovType::N, "pp-wave at " + describe(x));
        const Vec4 y{in(-3, 3), in(3, 20), in(0.3, 2.8), in(0, 6)};
        t.require(classify(entry("kerr").metric, y).type == PetrovType::D, "kerr at " + describe(y));
        const Vec4 z{in(-1, 1), in(-1, 1), in(-1, 1), in(-1, 1)};
        t.require(classify(entry("conformally-flat-exp").metric, z).type == PetrovType::O,
                  "conformally-flat-exp at " + describe(z));
    }
    const auto& kas = entry("kasner");
    for (double u : {0.0, 0.3, 1.0, 2.0, 3.7}) {
        const auto p = kasner_exponents(u);
        const auto rep = classify(kas.metric, {in(0.5, 3), 0.2, -0.1, 0.4}, {{"p1", p[0]}, {"p2", p[1]}, {"p3", p[2]}});
        t.require(rep.type == kasner_oracle(p), "kasner u = " + std::to_string(u));
    }
    t.require(classify(kas.metric, kas.sample).type == PetrovType::I, "kasner default exponents");

    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    for (const char* name : {"schwarzschild", "kerr", "pp-wave", "kasner", "conformally-flat-exp"}) {
        const auto& e = entry(name);
        const auto c = compute_curvature(metric_jet(e.metric, e.sample));
        const auto t0 = build_tetrad(c.jet);
        const auto base = classify_curvature(c, t0, {});
        for (int k = 0; k < 10; ++k) {
            const auto l = compose(boost(std::abs(sym(rng)), {sym(rng), sym(rng), sym(rng) + 1e-3}),
                                   rotation(3.0 * sym(rng), {sym(rng) + 1e-3, sym(rng), sym(rng)}));
            const auto rep = classify_curvature(c, lorentz_transform(t0, l), {});
            const bool same = rep.type == base.type &&
                              rep.principal_directions.size() == base.principal_directions.size();
            const double d = same ? direction_distance(rep.principal_directions, base.principal_directions) : 1.0;
            t.note("frame change dirs", d);
            t.require(same && d < 1e-6, std::string(name) + " under frame change");
        }
        const Chart& ch = e.metric.chart;
        std::uniform_real_distribution<double> small(-0.3, 0.3);
        for (int k = 0; k < 5; ++k) {
            const std::string s = std::to_string(0.5 + std::abs(small(rng))) + "*exp(" + std::to_string(small(rng)) +
                                  "*" + ch[0] + " + " + std::to_string(small(rng)) + "*" + ch[2] + "^2)";
            const auto rep = classify(e.metric.rescaled(parse(s, ch, {})), e.sample);
            t.require(rep.type == base.type, std::string(name) + " under sigma " + s);
        }
    }
    return t.outcome();
}

// Random null data that stays inside the domain for twenty affine units.
GeodesicState random_ray(const CatalogEntry& e, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::string& name = e.metric.name;
    Vec4 x{}, xi{};
    std::size_t slot = 0;
    if (name == "schwarzschild" || name == "kerr" || name == "eddington-finkelstein") {
        const double r = 10.5 + 4.5 * u(rng);
        x = {u(rng), r, 1.57 + 0.5 * u(rng), 3.0 + u(rng)};
        xi = {0, 0.5 + 0.4 * u(rng), 0.05 * u(rng) / r * 10, 0.02 * u(rng) / r * 10};
        // outgoing: the root with positive time component
        xi[0] = name == "eddington-finkelstein" ? 2.0 * xi[1] / (1.0 - 2.0 / r) : 2.0 * xi[1];
    } else if (name == "pp-wave") {
        x = {u(rng), u(rng), u(rng), u(rng)};
        xi = {0.2 + 0.1 * u(rng), 0, u(rng), u(rng)};
        slot = 1;
    } else if (name == "kasner") {
        x = {1.4 + 0.6 * u(rng), u(rng), u(rng), u(rng)};
        xi = {1.0, u(rng), u(rng), u(rng)};
    } else {
        x = {u(rng), u(rng), u(rng), u(rng)};
        xi = {1.0, u(rng), u(rng), u(rng)};
    }
    const Mat4 g = metric_value(e.metric, x, e.metric.params);
    return {x, null_project(g, xi, slot), 0.0};
}

Outcome null_drift() {
    Tally t;
    std::mt19937_64 rng(107);
    for (const auto& e : builtin_catalog().entries()) {
        for (int k = 0; k < 20; ++k) {
            const auto s0 = random_ray(e, rng);
            const auto traj = integrate(e.metric, e.metric.params, s0, 20.0);
            const double drift = traj.max_relative_null_norm();
            const bool full = traj.termination == Termination::ParameterEnd && traj.samples.back().state.s >= 20.0;
            t.note("drift", drift);
            t.require(full && drift < 1e-7, e.metric.name + " from " + describe(s0.x) + " " +
                                                std::string(to_string(traj.termination)) + " at s = " +
                                                std::to_string(traj.samples.back().state.s));
        }
    }
    return t.outcome();
}

Outcome conformal_rays() {
    Tally t;
    const auto& mink = entry("minkowski");
    const auto& schw = entry("schwarzschild");
    const Vec4 x_s{0, 10, 1.2, 0.3};
    const GeodesicState schw_ray{x_s, null_project(metric_value(schw.metric, x_s, schw.metric.params), {0, 0.4, 0.01, 0.02}),
                                 0.0};
    const GeodesicState mink_ray{{0, 0, 0, 0}, {1, 0.6, 0.8, 0}, 0.0};
    for (const auto& [e, ray] : {std::pair{&mink, &mink_ray}, std::pair{&schw, &schw_ray}}) {
        for (const char* sigma : {"const3", "exp-t", "bump"}) {
            const auto rep = conformal_invariance_check(e->metric, e->metric.params, e->sigma(sigma), *ray);
            const std::string tag = e->metric.name + " " + sigma;
            t.note("null", rep.null_distance);
            if (rep.sigma_constant) {
                t.note("constant control", rep.control_distance);
                t.require(rep.null_distance < 1e-9 && rep.control_distance < 1e-9, tag);
            } else {
                t.require(rep.null_distance < 1e-6 && rep.control_distance > 1e-2,
                          tag + " control " + std::to_string(rep.control_distance));
            }
            t.require(rep.sigma_constant == (std::string(sigma) == "const3"), tag + " constancy");
        }
    }
    return t.outcome();
}

Outcome lightlike_foliation() {
    Tally t;
    struct Case {
        const char* metric;
        const char* surface;
    };
    for (const auto& c : {Case{"minkowski", "null-plane"}, Case{"minkowski", "null-cone"},
                          Case{"eddington-finkelstein", "horizon"}}) {
        const auto& e = entry(c.metric);
        const auto s = e.surface(c.surface);
        for (const Vec4& seed : s.seeds) {
            const auto rep = foliation_check(e.metric, e.metric.params, s, seed);
            t.note("F", rep.max_F);
            t.note("null", rep.max_null);
            t.note("pregeodesic", rep.max_pregeodesic);
            t.require(rep.max_F < 1e-7 && rep.max_null < 1e-8 && rep.max_pregeodesic < 1e-6,
                      std::string(c.metric) + " " + c.surface);
        }
    }
    return t.outcome();
}

Outcome principal_congruences() {
    Tally t;
    for (const char* name : {"schwarzschild", "kerr"}) {
        const auto& e = entry(name);
        const auto rep = principal_congruence_check(e.metric, e.metric.params, {0, 30, 1.2, 0.3});
        t.require(rep.type == PetrovType::D && rep.curves.size() == 2, std::string(name) + " type");
        for (const auto& c : rep.curves) {
            t.note("residual", c.max_residual);
            const bool full = !c.curve.samples.empty() && c.curve.samples.back().state.s >= 20.0;
            t.require(!c.failure && full && c.max_residual < 1e-5,
                      std::string(name) + (c.failure ? " " + *c.failure : std::string()));
        }
    }
    // Schwarzschild: the principal directions are the radial null directions
    const auto& e = entry("schwarzschild");
    std::mt19937_64 rng(110);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        const double r = 2.5 + 17.5 * unit(rng);
        const Vec4 x{unit(rng), r, 0.3 + 2.5 * unit(rng), 6 * unit(rng)};
        const auto rep = classify(e.metric, x);
        const double f = 1.0 - 2.0 / r;
        std::vector<PrincipalDirection> radial{{{}, {1.0 / f, 1.0, 0, 0}, 2}, {{}, {1.0 / f, -1.0, 0, 0}, 2},
                                               {{}, {-1.0 / f, 1.0, 0, 0}, 2}, {{}, {-1.0 / f, -1.0, 0, 0}, 2}};
        const double d = direction_distance(rep.principal_directions, radial);
        t.note("radial", d);
        t.require(rep.principal_directions.size() == 2 && d < 1e-6, "radial at " + describe(x));
    }
    return t.outcome();
}

Outcome quartic_roots() {
    using namespace nullgeo::testing;
    Tally t;
    std::mt19937_64 rng(111);
    const double radius = 1e-4;
    for (int k = 0; k < 500; ++k) {
        const Case c = random_case(rng, radius);
        const auto got = solve_projective_quartic(c.coeffs, radius);
        auto want = c.partition;
        std::sort(want.begin(), want.end(), std::greater<>());
        t.require(got.partition() == want, "partition, trial " + std::to_string(k));
        for (std::size_t r = 0; r < c.roots.size(); ++r) {
            bool mult_ok = false;
            const double d = nearest(got, c.roots[r], c.partition[r], &mult_ok);
            t.note("root distance", d);
            t.require(d < 1e-7 && mult_ok, "root, trial " + std::to_string(k));
        }
    }
    return t.outcome();
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"flat space: connection, Riemann and Weyl vanish, type O", flat_space},
        {"vacuum solutions: Ricci vanishes and Weyl equals Riemann", vacuum_solutions},
        {"Weyl symmetries, trace-free and frame conditions", weyl_symmetries},
        {"null tetrad pairings and conjugate scalars", tetrad_pairings},
        {"bivector contraction equals the curvature polynomials", curvature_polynomial},
        {"Petrov types, tetrad and conformal invariance", classification},
        {"null norm conserved along random null geodesics", null_drift},
        {"null geodesics unchanged by conformal rescaling", conformal_rays},
        {"lightlike surfaces foliated by null pregeodesics", lightlike_foliation},
        {"principal null congruences are pregeodesic", principal_congruences},
        {"random quartics: root structure recovered", quartic_roots},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %2zu %s (%s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
