#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nullgeo/expr.hpp"
#include "nullgeo/lightlike.hpp"
#include "nullgeo/metric.hpp"

namespace nullgeo {

struct NamedExpression {
    std::string name;
    Expression expr;
};

struct SurfaceEntry {
    std::string name;
    Expression F;
    /// Seed points; components may involve the metric's parameters.
    std::vector<std::array<Expression, 4>> seeds;
};

struct CatalogEntry {
    MetricSpec metric;
    Vec4 sample{};
    std::vector<NamedExpression> sigmas;
    std::vector<SurfaceEntry> surfaces;

    /// Throws CatalogError for an unknown name.
    const Expression& sigma(std::string_view name) const;
    /// Surface with seeds evaluated under the given parameter overrides.
    HypersurfaceSpec surface(std::string_view name, const ParamMap& overrides = {}) const;
};

/// Metric declarations in plain text:
///
///   # comment
///   metric schwarzschild
///     chart t r th ph
///     param M = 1
///     g t t = 1 - 2*M/r          (indices by coordinate name or 0..3)
///     g r r = -1/(1 - 2*M/r)
///     guard = (r - 2*M)*sin(th)
///     sample = 0, 6, 1.2, 0.3
///     sigma bump = 1 + 0.1/r
///     surface horizon = r - 2*M
///     seed horizon = 0, 2*M, 1.3, 0.2
///   end
///
/// Components left out are zero. Parameter values may be constant expressions
/// of earlier parameters. Every metric must be a nondegenerate (1,3) form at
/// its sample point.
class Catalog {
   public:
    Catalog() = default;
    explicit Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {}

    /// Parses a whole file; any problem rejects all of it with a CatalogError
    /// listing every offending line as "source:line: message".
    static Catalog parse(std::string_view text, std::string_view source = "<catalog>");
    static Catalog load(const std::string& path);

    const CatalogEntry& find(std::string_view name) const;
    bool contains(std::string_view name) const;
    std::vector<std::string> names() const;
    const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }

    /// Adds or replaces entries by name.
    void merge(const Catalog& other);

   private:
    std::vector<CatalogEntry> entries_;
};

/// Text of the catalog compiled into the library.
std::string_view builtin_catalog_text();

/// minkowski, schwarzschild, eddington-finkelstein, kerr, pp-wave, kasner,
/// conformally-flat-exp and de-sitter.
const Catalog& builtin_catalog();

}  // namespace nullgeo
