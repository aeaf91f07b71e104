#pragma once

#include <array>
#include <string>
#include <vector>

#include "nullgeo/null_frame.hpp"
#include "nullgeo/tensor.hpp"

namespace nullgeo {

/// Coefficients of c0 x^4 + c1 x^3 + c2 x^2 + c3 x + c4, degree-descending.
using Quartic = std::array<Complex, 5>;

struct ProjectiveRoot {
    Projective root;
    int multiplicity = 1;
};

/// Distinct roots of a binary quartic with multiplicities summing to 4.
struct ProjectiveRoots {
    std::vector<ProjectiveRoot> roots;
    /// Smallest chordal distance between distinct roots (2 when only one root).
    double margin = 2.0;
    /// Relative coefficient residual of the factorization the multiplicities came from.
    double backward_error = 0.0;
    std::vector<std::string> warnings;

    int total_multiplicity() const noexcept;
    /// Multiplicities sorted in decreasing order, e.g. {2, 1, 1}.
    std::vector<int> partition() const;
};

Complex evaluate(const Quartic& p, Complex x) noexcept;

/// Roots of a nonzero binary quartic on the Riemann sphere.
///
/// Leading coefficients below 1e-12 of the largest one count as roots at
/// infinity; the rest come from companion-matrix eigenvalues. Multiplicities
/// are then decided in a rotated chart that keeps every root finite: the
/// coarsest grouping whose fitted factorization c * prod (x - z_j)^m_j
/// reproduces the normalized coefficients within 0.01 * radius^2 and keeps
/// the distinct roots at least `cluster_radius` apart (chordally) wins.
/// When no grouping qualifies, single-linkage chordal clustering at
/// `cluster_radius` decides and a warning is attached. Roots within
/// [radius, 2 radius] of one another also raise a warning.
///
/// Throws Error for the zero polynomial.
ProjectiveRoots solve_projective_quartic(const Quartic& coeffs, double cluster_radius = 1e-4);

/// Roots of a monic-normalizable complex polynomial of degree <= 4 via the
/// companion matrix, each followed by one guarded Newton step.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& descending);

}  // namespace nullgeo
