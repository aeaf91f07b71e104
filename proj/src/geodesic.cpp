#include "nullgeo/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "nullgeo/errors.hpp"
#include "nullgeo/null_frame.hpp"

namespace nullgeo {

namespace {

using State8 = std::array<double, 8>;

State8 pack(const Vec4& x, const Vec4& xi) { return {x[0], x[1], x[2], x[3], xi[0], xi[1], xi[2], xi[3]}; }

Vec4 head(const State8& y) { return {y[0], y[1], y[2], y[3]}; }
Vec4 tail(const State8& y) { return {y[4], y[5], y[6], y[7]}; }

Vec4 sub(const Vec4& a, const Vec4& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}; }

// Cubic Hermite interpolation on one trajectory segment.
struct Segment {
    Vec4 p0, p1, m0, m1;  // tangents scaled by the parameter step

    Segment(const TrajectorySample& a, const TrajectorySample& b) {
        const double h = b.state.s - a.state.s;
        p0 = a.state.x;
        p1 = b.state.x;
        m0 = h * a.state.xi;
        m1 = h * b.state.xi;
    }

    Vec4 at(double t) const {
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        return h00 * p0 + h10 * m0 + h01 * p1 + h11 * m1;
    }

    Vec4 derivative(double t) const {
        const double t2 = t * t;
        const double d00 = 6 * t2 - 6 * t, d10 = 3 * t2 - 4 * t + 1, d01 = -6 * t2 + 6 * t, d11 = 3 * t2 - 2 * t;
        return d00 * p0 + d10 * m0 + d01 * p1 + d11 * m1;
    }

    // Arc length over [0, t], 5-point Gauss-Legendre.
    double length(double t = 1.0) const {
        static constexpr double nodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                            0.9061798459386640};
        static constexpr double weights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                              0.4786286704993665, 0.2369268850561891};
        double sum = 0.0;
        for (int k = 0; k < 5; ++k) sum += weights[k] * euclid_norm(derivative(0.5 * t * (nodes[k] + 1.0)));
        return 0.5 * t * sum;
    }

    double distance_to(const Vec4& p) const {
        // golden-section search on the squared distance
        constexpr double g = 0.6180339887498949;
        double lo = 0.0, hi = 1.0;
        auto d2 = [&](double t) {
            const Vec4 d = sub(at(t), p);
            return euclid_dot(d, d);
        };
        double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
        double fa = d2(a), fb = d2(b);
        for (int it = 0; it < 60; ++it) {
            if (fa < fb) {
                hi = b;
                b = a;
                fb = fa;
                a = hi - g * (hi - lo);
                fa = d2(a);
            } else {
                lo = a;
                a = b;
                fa = fb;
                b = lo + g * (hi - lo);
                fb = d2(b);
            }
        }
        const double best = std::min({d2(0.0), d2(1.0), d2(0.5 * (lo + hi))});
        return std::sqrt(best);
    }
};

double distance_to_curve(const Vec4& p, const Trajectory& c) {
    const auto& s = c.samples;
    if (s.empty()) return std::numeric_limits<double>::infinity();
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < s.size(); ++j) {
        const Vec4 d = sub(s[j].state.x, p);
        const double dd = euclid_dot(d, d);
        if (dd < best) {
            best = dd;
            nearest = j;
        }
    }
    double out = std::sqrt(best);
    const std::size_t lo = nearest > 1 ? nearest - 2 : 0;
    const std::size_t hi = std::min(nearest + 2, s.size() - 1);
    for (std::size_t j = lo; j < hi; ++j) out = std::min(out, Segment(s[j], s[j + 1]).distance_to(p));
    return out;
}

class TrackingError : public Error {
   public:
    using Error::Error;
};

// Principal null direction field, continued from a seed root by nearest
// neighbour on the Riemann sphere.
class PrincipalField {
   public:
    PrincipalField(const MetricSpec& spec, ParamMap params, Tolerances tol, Projective seed)
        : spec_(spec), params_(std::move(params)), tol_(tol), current_(seed) {}

    Vec4 direction(const Vec4& x, Projective* root_out = nullptr) const {
        const MetricJet jet = metric_jet_resolved(spec_, x, params_);
        const Curvature curv = compute_curvature(jet);
        const PetrovReport rep = classify_curvature(curv, build_tetrad(jet), tol_);
        if (rep.roots.roots.empty()) throw TrackingError("curvature quartic vanished along the curve");
        double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
        std::size_t best = 0;
        for (std::size_t k = 0; k < rep.roots.roots.size(); ++k) {
            const double d = chordal_distance(rep.roots.roots[k].root, current_);
            if (d < d1) {
                d2 = d1;
                d1 = d;
                best = k;
            } else if (d < d2) {
                d2 = d;
            }
        }
        if (d2 - d1 < tol_.cluster_radius)
            throw TrackingError("two principal roots are equally close to the tracked one");
        const Projective root = rep.roots.roots[best].root;
        if (root_out) *root_out = root;
        // Homogeneous scaling keeps the field bounded and continuous through infinity.
        const double scale = root.infinite ? 1.0 : 1.0 / (1.0 + std::norm(root.value));
        return scale * real_null_direction(root, rep.tetrad);
    }

    void advance(const Projective& root) { current_ = root; }
    const Projective& current() const { return current_; }

   private:
    const MetricSpec& spec_;
    ParamMap params_;
    Tolerances tol_;
    Projective current_;
};

}  // namespace

double Trajectory::max_relative_null_norm() const {
    double worst = 0.0;
    for (const auto& s : samples) {
        const double n2 = euclid_dot(s.state.xi, s.state.xi);
        if (n2 > 0.0) worst = std::max(worst, std::abs(s.null_norm) / n2);
    }
    return worst;
}

ConnectionField levi_civita_field(const MetricSpec& spec, const ParamMap& params) {
    return [&spec, p = resolve_params(spec, params)](const Vec4& x) {
        return christoffel(metric_jet_resolved(spec, x, p));
    };
}

ConnectionField conformal_field(const MetricSpec& spec, const ParamMap& params, const Expression& sigma) {
    return [&spec, sigma, p = resolve_params(spec, params)](const Vec4& x) {
        return conformal_connection(metric_jet_resolved(spec, x, p), sigma, p);
    };
}

std::array<double, 8> geodesic_rhs(const ConnectionField& field, const Vec4& x, const Vec4& xi) {
    const Vec4 acc = field(x).contract(xi, xi);
    return pack(xi, {-acc[0], -acc[1], -acc[2], -acc[3]});
}

Trajectory integrate(const MetricSpec& spec, const ParamMap& params, const ConnectionField& field,
                     const GeodesicState& initial, double s_end, const StepControl& ctl) {
    const ParamMap p = resolve_params(spec, params);
    check_domain(spec, initial.x, p);
    Trajectory out;
    auto rhs = [&](double, const State8& y) { return geodesic_rhs(field, head(y), tail(y)); };
    auto accept = [&](double s, const State8& y, const State8&) {
        TrajectorySample sample;
        sample.state = {head(y), tail(y), s};
        sample.null_norm = pair(metric_value(spec, sample.state.x, p), sample.state.xi, sample.state.xi);
        out.samples.push_back(sample);
    };
    out.termination = dormand_prince<8>(rhs, initial.s, s_end, pack(initial.x, initial.xi), ctl, accept,
                                        [](double, const State8&) { return false; });
    return out;
}

Trajectory integrate(const MetricSpec& spec, const ParamMap& params, const GeodesicState& initial, double s_end,
                     const StepControl& ctl) {
    return integrate(spec, params, levi_civita_field(spec, params), initial, s_end, ctl);
}

Vec4 null_project(const Mat4& g, const Vec4& xi, std::size_t slot) {
    // g_ss c^2 + 2 b c + rest = 0 for c = xi[slot]
    double b = 0.0, rest = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (i == slot) continue;
        b += g[slot][i] * xi[i];
        for (std::size_t j = 0; j < 4; ++j)
            if (j != slot) rest += g[i][j] * xi[i] * xi[j];
    }
    const double a = g[slot][slot];
    Vec4 out = xi;
    if (std::abs(a) < 1e-14 * std::max(1.0, max_abs(g))) {
        if (b == 0.0) throw DomainError("null projection: component does not enter the quadratic form");
        out[slot] = -rest / (2.0 * b);
        return out;
    }
    const double disc = b * b - a * rest;
    if (disc < 0.0) throw DomainError("null projection: no real null direction with the given components");
    const double sq = std::sqrt(disc);
    // numerically stable pair of roots
    const double q = -(b + std::copysign(sq, b));
    double r1 = q / a;
    double r2 = q != 0.0 ? rest / q : r1;
    out[slot] = std::abs(r1 - xi[slot]) <= std::abs(r2 - xi[slot]) ? r1 : r2;
    return out;
}

double arc_length(const Trajectory& t) {
    double len = 0.0;
    for (std::size_t j = 0; j + 1 < t.samples.size(); ++j) len += Segment(t.samples[j], t.samples[j + 1]).length();
    return len;
}

Trajectory trim_to_arc_length(const Trajectory& t, double length) {
    Trajectory out;
    out.termination = t.termination;
    if (t.samples.empty()) return out;
    out.samples.push_back(t.samples.front());
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < t.samples.size(); ++j) {
        const Segment seg(t.samples[j], t.samples[j + 1]);
        const double l = seg.length();
        if (acc + l < length) {
            acc += l;
            out.samples.push_back(t.samples[j + 1]);
            continue;
        }
        const double want = length - acc;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (seg.length(mid) < want ? lo : hi) = mid;
        }
        const double tau = 0.5 * (lo + hi);
        const double h = t.samples[j + 1].state.s - t.samples[j].state.s;
        TrajectorySample cut;
        cut.state.s = t.samples[j].state.s + tau * h;
        cut.state.x = seg.at(tau);
        cut.state.xi = (1.0 / h) * seg.derivative(tau);
        cut.null_norm = (1.0 - tau) * t.samples[j].null_norm + tau * t.samples[j + 1].null_norm;
        if (tau > 0.0) out.samples.push_back(cut);
        break;
    }
    return out;
}

double path_distance(const Trajectory& a, const Trajectory& b) {
    double worst = 0.0;
    for (const auto& s : a.samples) worst = std::max(worst, distance_to_curve(s.state.x, b));
    for (const auto& s : b.samples) worst = std::max(worst, distance_to_curve(s.state.x, a));
    return worst;
}

ConformalReport conformal_invariance_check(const MetricSpec& spec, const ParamMap& params, const Expression& sigma,
                                           const GeodesicState& initial, const ConformalOptions& opt) {
    const ParamMap p = resolve_params(spec, params);
    const MetricJet jet0 = metric_jet_resolved(spec, initial.x, p);
    const double n0 = pair(jet0.g, initial.xi, initial.xi);
    if (std::abs(n0) > 1e-9 * max_abs(jet0.g) * euclid_dot(initial.xi, initial.xi))
        throw DomainError("conformal check needs a null initial direction; g(xi, xi) = " + std::to_string(n0));
    if (eval_value(sigma, initial.x, p) <= 0.0) throw DomainError("conformal factor is not positive at the start");

    // Timelike control: null direction plus a future-aligned timelike frame vector.
    Vec4 u4 = orthonormal_frame(jet0).u[3];
    if (pair(jet0.g, initial.xi, u4) < 0.0) u4 = -1.0 * u4;
    const GeodesicState control{initial.x, initial.xi + opt.control_weight * u4, initial.s};

    const ConnectionField lc = levi_civita_field(spec, p);
    const ConnectionField cf = conformal_field(spec, p, sigma);
    auto run = [&](const ConnectionField& field, const GeodesicState& start) {
        Trajectory t = integrate(spec, p, field, start, initial.s + opt.s_end, opt.step);
        for (const auto& s : t.samples)
            if (eval_value(sigma, s.state.x, p) <= 0.0)
                throw DomainError("conformal factor is not positive along the path");
        return t;
    };

    ConformalReport rep;
    rep.sigma_constant = sigma.is_constant();
    rep.null_original = run(lc, initial);
    rep.null_conformal = run(cf, initial);
    rep.control_original = run(lc, control);
    rep.control_conformal = run(cf, control);

    auto compare = [](Trajectory& a, Trajectory& b) {
        const double len = std::min(arc_length(a), arc_length(b));
        a = trim_to_arc_length(a, len);
        b = trim_to_arc_length(b, len);
        return path_distance(a, b);
    };
    rep.null_distance = compare(rep.null_original, rep.null_conformal);
    rep.control_distance = compare(rep.control_original, rep.control_conformal);
    rep.null_pass = rep.null_distance < opt.path_tol;
    rep.control_pass = rep.sigma_constant ? rep.control_distance < opt.constant_tol
                                          : rep.control_distance > opt.control_separation;
    rep.pass = rep.null_pass && rep.control_pass;
    return rep;
}

double conformal_equation_residual(const MetricSpec& spec, const ParamMap& params, const Expression& sigma,
                                   const Trajectory& along) {
    const ParamMap p = resolve_params(spec, params);
    double worst = 0.0;
    for (const auto& s : along.samples) {
        const MetricJet jet = metric_jet_resolved(spec, s.state.x, p);
        const Christoffel g = christoffel(jet);
        const Christoffel gbar = conformal_connection(jet, g, sigma, p);
        const Jet2 sj = eval_jet2(sigma, s.state.x, p);
        const Vec4& xi = s.state.xi;
        double dlog = 0.0;
        for (std::size_t k = 0; k < 4; ++k) dlog += sj.grad[k] / sj.value * xi[k];
        const Vec4 acc = g.contract(xi, xi);
        const Vec4 accbar = gbar.contract(xi, xi);
        Vec4 r{};
        for (std::size_t i = 0; i < 4; ++i) r[i] = -acc[i] + accbar[i] - dlog * xi[i];
        const double n2 = euclid_dot(xi, xi);
        if (n2 > 0.0) worst = std::max(worst, euclid_norm(r) / n2);
    }
    return worst;
}

double pregeodesic_residual(const Christoffel& gamma, const Vec4& xi, const Vec4& directional_derivative) {
    const Vec4 a = directional_derivative + gamma.contract(xi, xi);
    const double n2 = euclid_dot(xi, xi);
    if (n2 == 0.0) return 0.0;
    const double kappa = euclid_dot(a, xi) / n2;
    return euclid_norm(a - kappa * xi) / n2;
}

CongruenceReport principal_congruence_check(const MetricSpec& spec, const ParamMap& params, const Vec4& point,
                                            const CongruenceOptions& opt) {
    const ParamMap p = resolve_params(spec, params);
    const MetricJet jet = metric_jet_resolved(spec, point, p);
    const PetrovReport seed = classify_curvature(compute_curvature(jet), build_tetrad(jet), opt.tolerances);
    CongruenceReport rep;
    rep.type = seed.type;
    if (seed.type == PetrovType::O) {
        rep.message = "no principal directions";
        rep.pass = true;
        return rep;
    }

    rep.pass = true;
    for (const auto& root : seed.roots.roots) {
        CongruenceCurve c;
        c.seed_root = root.root;
        c.multiplicity = root.multiplicity;
        PrincipalField field(spec, p, opt.tolerances, root.root);
        std::string tracking_error;
        bool stop_now = false;

        auto rhs = [&](double, const std::array<double, 4>& x) {
            try {
                return field.direction(x);
            } catch (const TrackingError& e) {
                tracking_error = e.what();
                throw;
            }
        };
        auto accept = [&](double s, const std::array<double, 4>& x, const std::array<double, 4>&) {
            try {
                Projective here;
                const Vec4 xi = field.direction(x, &here);
                field.advance(here);
                const double h = opt.fd_step / euclid_norm(xi);
                const Vec4 fwd = field.direction(x + h * xi);
                const Vec4 bwd = field.direction(x - h * xi);
                const Vec4 d = (1.0 / (2.0 * h)) * (fwd - bwd);
                const Christoffel g = christoffel(metric_jet_resolved(spec, x, p));
                c.max_residual = std::max(c.max_residual, pregeodesic_residual(g, xi, d));
                TrajectorySample sample;
                sample.state = {x, xi, s};
                sample.null_norm = pair(metric_value(spec, x, p), xi, xi);
                c.curve.samples.push_back(sample);
            } catch (const Error& e) {
                tracking_error = e.what();
                c.failure_state = GeodesicState{x, {}, s};
                stop_now = true;
            }
        };
        c.curve.termination = dormand_prince<4>(rhs, 0.0, opt.s_end, point, opt.step, accept,
                                                [&](double, const std::array<double, 4>&) { return stop_now; });
        if (c.curve.termination != Termination::ParameterEnd) {
            c.failure = tracking_error.empty() ? std::string(to_string(c.curve.termination)) : tracking_error;
            if (!c.failure_state && !c.curve.samples.empty()) c.failure_state = c.curve.samples.back().state;
        }
        if (!c.curve.samples.empty()) c.seed_direction = c.curve.samples.front().state.xi;
        c.pass = !c.failure && c.max_residual < opt.geo_tol;
        rep.pass = rep.pass && c.pass;
        rep.curves.push_back(std::move(c));
    }
    rep.message = rep.pass ? "all principal congruences are pregeodesic" : "principal congruence check failed";
    return rep;
}

void write_csv(std::ostream& out, const Trajectory& t) {
    out << "s,x0,x1,x2,x3,xi0,xi1,xi2,xi3,nullnorm\n";
    char buf[32];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << sep;
    };
    for (const auto& s : t.samples) {
        put(s.state.s, ',');
        for (double v : s.state.x) put(v, ',');
        for (double v : s.state.xi) put(v, ',');
        put(s.null_norm, '\n');
    }
}

}  // namespace nullgeo
