#include "nullgeo/quartic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nullgeo/errors.hpp"

namespace nullgeo {

namespace {

using Poly = std::vector<Complex>;  // descending

Poly multiply(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, Complex{});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly power(const Poly& a, int n) {
    Poly out{Complex(1.0)};
    for (int i = 0; i < n; ++i) out = multiply(out, a);
    return out;
}

Complex horner(const Poly& p, Complex x) {
    Complex s = 0.0;
    for (const Complex& c : p) s = s * x + c;
    return s;
}

Poly derivative(const Poly& p) {
    const std::size_t n = p.size() - 1;
    Poly d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(p[i] * static_cast<double>(n - i));
    return d;
}

/// Sphere rotation x = (a w + b) / (-conj(b) w + conj(a)) sending w = inf to `pole`.
struct Rotation {
    Complex a{1.0};
    Complex b{0.0};

    static Rotation sending_infinity_to(const Projective& pole) {
        if (pole.infinite) return {};
        const double n = std::sqrt(1.0 + std::norm(pole.value));
        return {pole.value / n, Complex(-1.0 / n)};
    }

    Projective forward(Complex w) const {
        const Complex den = -std::conj(b) * w + std::conj(a);
        if (den == Complex{}) return Projective::infinity();
        return Projective::finite((a * w + b) / den);
    }

    Complex backward(const Projective& x) const {
        if (x.infinite) return std::conj(a) / std::conj(b);
        return (std::conj(a) * x.value - b) / (std::conj(b) * x.value + a);
    }

    /// Coefficients of sum c_k X^(4-k) Y^k with X = a w + b, Y = -conj(b) w + conj(a).
    Poly transform(const Quartic& c) const {
        const Poly x{a, b};
        const Poly y{-std::conj(b), std::conj(a)};
        Poly out(5, Complex{});
        for (int k = 0; k <= 4; ++k) {
            const Poly term = multiply(power(x, 4 - k), power(y, k));
            for (std::size_t i = 0; i < 5; ++i) out[i] += c[static_cast<std::size_t>(k)] * term[i];
        }
        return out;
    }
};

Projective choose_pole(const std::vector<Projective>& roots) {
    // Candidate poles: the 26 directions of a cube's vertices, edge midpoints
    // and face centres, stereographically projected.
    std::vector<Projective> candidates;
    candidates.push_back(Projective::infinity());
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y)
            for (int z = -1; z <= 1; ++z) {
                if (x == 0 && y == 0 && z == 0) continue;
                if (x == 0 && y == 0 && z == 1) continue;  // the north pole is infinity
                const double n = std::sqrt(double(x * x + y * y + z * z));
                const double X = x / n, Y = y / n, Z = z / n;
                candidates.push_back(Projective::finite(Complex(X, Y) / (1.0 - Z)));
            }
    Projective best = candidates.front();
    double best_dist = -1.0;
    for (const auto& c : candidates) {
        double d = 2.0;
        for (const auto& r : roots) d = std::min(d, chordal_distance(c, r));
        if (d > best_dist + 1e-12) {
            best_dist = d;
            best = c;
        }
    }
    return best;
}

/// All set partitions of {0..n-1} as restricted growth strings.
std::vector<std::vector<int>> set_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int i, int max_label) -> void {
        if (i == n) {
            out.push_back(rgs);
            return;
        }
        for (int l = 0; l <= max_label + 1; ++l) {
            rgs[static_cast<std::size_t>(i)] = l;
            self(self, i + 1, std::max(max_label, l));
        }
    };
    if (n > 0) rec(rec, 0, -1);
    return out;
}

struct Fit {
    std::vector<Complex> roots;
    std::vector<int> mult;
    double error = std::numeric_limits<double>::infinity();
};

Poly model(Complex lead, const std::vector<Complex>& z, const std::vector<int>& m) {
    Poly p{lead};
    for (std::size_t j = 0; j < z.size(); ++j) p = multiply(p, power(Poly{Complex(1.0), -z[j]}, m[j]));
    return p;
}

double residual_norm(const Poly& a, const Poly& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

/// Gauss-Newton fit of lead * prod (w - z_j)^m_j to the unit-norm target.
Fit fit_structure(const Poly& target, std::vector<Complex> z, const std::vector<int>& m) {
    const std::size_t k = z.size();
    Complex lead = target[0];
    Poly current = model(lead, z, m);
    double err = residual_norm(current, target);
    for (int iter = 0; iter < 60; ++iter) {
        Eigen::MatrixXcd jac(5, static_cast<Eigen::Index>(k + 1));
        Eigen::VectorXcd rhs(5);
        const Poly unit = model(Complex(1.0), z, m);
        for (std::size_t i = 0; i < 5; ++i) {
            jac(static_cast<Eigen::Index>(i), 0) = unit[i];
            rhs(static_cast<Eigen::Index>(i)) = target[i] - current[i];
        }
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<int> mm = m;
            mm[j] -= 1;
            const Poly d = model(-static_cast<double>(m[j]) * lead, z, mm);
            // d has degree 3; align to degree 4 slots
            for (std::size_t i = 0; i < 5; ++i)
                jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1)) = i == 0 ? Complex{} : d[i - 1];
        }
        const Eigen::VectorXcd step = jac.colPivHouseholderQr().solve(rhs);
        Complex new_lead = lead + step(0);
        std::vector<Complex> new_z = z;
        for (std::size_t j = 0; j < k; ++j) new_z[j] += step(static_cast<Eigen::Index>(j + 1));
        const Poly trial = model(new_lead, new_z, m);
        const double trial_err = residual_norm(trial, target);
        if (!(trial_err < err)) break;
        const double step_size = step.norm();
        lead = new_lead;
        z = std::move(new_z);
        current = trial;
        err = trial_err;
        if (step_size < 1e-15) break;
    }
    return {z, m, err};
}

double max_pairwise_chordal(const std::vector<Projective>& pts) {
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, chordal_distance(pts[i], pts[j]));
    return d;
}

}  // namespace

int ProjectiveRoots::total_multiplicity() const noexcept {
    int s = 0;
    for (const auto& r : roots) s += r.multiplicity;
    return s;
}

std::vector<int> ProjectiveRoots::partition() const {
    std::vector<int> p;
    for (const auto& r : roots) p.push_back(r.multiplicity);
    std::sort(p.rbegin(), p.rend());
    return p;
}

Complex evaluate(const Quartic& p, Complex x) noexcept {
    Complex s = 0.0;
    for (const Complex& c : p) s = s * x + c;
    return s;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& descending) {
    const std::size_t n = descending.size() - 1;
    if (n == 0) return {};
    const Complex lead = descending[0];
    if (n == 1) return {-descending[1] / lead};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) comp(0, static_cast<Eigen::Index>(j)) = -descending[j + 1] / lead;
    for (std::size_t i = 1; i < n; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> roots;
    const Poly p(descending.begin(), descending.end());
    const Poly dp = derivative(p);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        Complex z = es.eigenvalues()(i);
        const Complex fz = horner(p, z);
        const Complex dfz = horner(dp, z);
        if (dfz != Complex{}) {
            const Complex polished = z - fz / dfz;
            if (std::abs(horner(p, polished)) < std::abs(fz)) z = polished;
        }
        roots.push_back(z);
    }
    return roots;
}

ProjectiveRoots solve_projective_quartic(const Quartic& coeffs, double cluster_radius) {
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    if (!(scale > 0.0) || !std::isfinite(scale)) throw Error("solve_projective_quartic: zero or non-finite polynomial");
    Quartic c{};
    for (std::size_t i = 0; i < 5; ++i) c[i] = coeffs[i] / scale;

    // Initial estimate: peel roots at infinity, then the companion matrix.
    std::size_t at_infinity = 0;
    while (at_infinity < 4 && std::abs(c[at_infinity]) <= 1e-12) ++at_infinity;
    std::vector<Projective> initial(at_infinity, Projective::infinity());
    {
        const std::vector<Complex> rest(c.begin() + static_cast<std::ptrdiff_t>(at_infinity), c.end());
        for (const Complex& z : polynomial_roots(rest)) initial.push_back(Projective::finite(z));
    }

    // Rotated chart in which every root is finite and moderate.
    const Rotation rot = Rotation::sending_infinity_to(choose_pole(initial));
    Poly q = rot.transform(c);
    {
        double n = 0.0;
        for (const auto& x : q) n += std::norm(x);
        n = std::sqrt(n);
        for (auto& x : q) x /= n;
    }
    const std::vector<Complex> w = polynomial_roots(q);

    std::vector<Projective> w_on_sphere;
    for (const Complex& z : w) w_on_sphere.push_back(Projective::finite(z));

    const double threshold = 0.01 * cluster_radius * cluster_radius;
    Fit best;
    bool found = false;
    for (const auto& rgs : set_partitions(static_cast<int>(w.size()))) {
        const int groups = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<Complex> centre(static_cast<std::size_t>(groups), Complex{});
        std::vector<int> mult(static_cast<std::size_t>(groups), 0);
        std::vector<std::vector<Projective>> members(static_cast<std::size_t>(groups));
        for (std::size_t i = 0; i < rgs.size(); ++i) {
            const auto g = static_cast<std::size_t>(rgs[i]);
            centre[g] += w[i];
            mult[g] += 1;
            members[g].push_back(w_on_sphere[i]);
        }
        bool plausible = true;
        for (const auto& mem : members)
            if (max_pairwise_chordal(mem) > 0.05) plausible = false;
        if (!plausible) continue;
        for (std::size_t g = 0; g < centre.size(); ++g) centre[g] /= static_cast<double>(mult[g]);

        Fit f = fit_structure(q, centre, mult);
        if (!(f.error <= threshold)) continue;
        bool separated = true;
        for (std::size_t i = 0; i < f.roots.size() && separated; ++i)
            for (std::size_t j = i + 1; j < f.roots.size(); ++j)
                if (chordal_distance(rot.forward(f.roots[i]), rot.forward(f.roots[j])) < cluster_radius) {
                    separated = false;
                    break;
                }
        if (!separated) continue;
        if (!found || f.roots.size() < best.roots.size() ||
            (f.roots.size() == best.roots.size() && f.error < best.error)) {
            best = std::move(f);
            found = true;
        }
    }

    ProjectiveRoots out;
    if (!found) {
        // Single-linkage chordal clustering on the original chart's roots.
        const std::size_t n = w.size();
        std::vector<std::size_t> label(n);
        std::iota(label.begin(), label.end(), 0);
        auto find = [&](std::size_t i) {
            while (label[i] != i) i = label[i];
            return i;
        };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (chordal_distance(rot.forward(w[i]), rot.forward(w[j])) < cluster_radius)
                    label[find(j)] = find(i);
        std::vector<std::size_t> roots_of;
        std::vector<Complex> centre;
        std::vector<int> mult;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t r = find(i);
            auto it = std::find(roots_of.begin(), roots_of.end(), r);
            if (it == roots_of.end()) {
                roots_of.push_back(r);
                centre.push_back(w[i]);
                mult.push_back(1);
            } else {
                const auto g = static_cast<std::size_t>(it - roots_of.begin());
                centre[g] += w[i];
                mult[g] += 1;
            }
        }
        for (std::size_t g = 0; g < centre.size(); ++g) centre[g] /= static_cast<double>(mult[g]);
        best = fit_structure(q, centre, mult);
        out.warnings.push_back("ambiguous root multiplicity: no factorization fits within tolerance");
    }
    out.backward_error = best.error;

    for (std::size_t g = 0; g < best.roots.size(); ++g) {
        Projective r = rot.forward(best.roots[g]);
        if (!r.infinite && chordal_distance(r, Projective::infinity()) < cluster_radius)
            r = Projective::infinity();
        out.roots.push_back({r, best.mult[g]});
    }
    // Deterministic order: infinity last, finite roots by (re, im).
    std::sort(out.roots.begin(), out.roots.end(), [](const ProjectiveRoot& a, const ProjectiveRoot& b) {
        if (a.root.infinite != b.root.infinite) return b.root.infinite;
        if (a.root.value.real() != b.root.value.real()) return a.root.value.real() < b.root.value.real();
        return a.root.value.imag() < b.root.value.imag();
    });

    out.margin = 2.0;
    for (std::size_t i = 0; i < out.roots.size(); ++i)
        for (std::size_t j = i + 1; j < out.roots.size(); ++j) {
            const double d = chordal_distance(out.roots[i].root, out.roots[j].root);
            out.margin = std::min(out.margin, d);
            if (d >= cluster_radius && d <= 2.0 * cluster_radius)
                out.warnings.push_back("roots within the ambiguity band [r, 2r] of the cluster radius");
        }
    return out;
}

}  // namespace nullgeo
