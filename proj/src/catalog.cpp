#include "nullgeo/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "nullgeo/errors.hpp"

namespace nullgeo {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = s.find(',');
        out.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

struct Located {
    std::size_t line = 0;
    std::string text;
};

struct RawSurface {
    std::size_t line = 0;
    std::string name, F;
    std::vector<Located> seeds;
};

struct RawMetric {
    std::size_t line = 0;
    std::string name;
    std::optional<Located> chart;
    std::vector<std::pair<Located, std::string>> params;  // (value text, name)
    std::vector<std::pair<Located, std::pair<std::string, std::string>>> components;
    std::optional<Located> guard, sample;
    std::vector<std::pair<Located, std::string>> sigmas;
    std::vector<RawSurface> surfaces;
};

class Builder {
   public:
    explicit Builder(std::string_view source) : source_(source) {}

    void error(std::size_t line, const std::string& msg) {
        errors_.push_back(std::string(source_) + ":" + std::to_string(line) + ": " + msg);
    }
    bool failed() const { return !errors_.empty(); }
    std::string message() const {
        std::string out;
        for (const auto& e : errors_) out += (out.empty() ? "" : "\n") + e;
        return out;
    }

    std::optional<CatalogEntry> build(const RawMetric& raw) {
        const std::size_t before = errors_.size();
        CatalogEntry entry;
        entry.metric.name = raw.name;
        if (!raw.chart) {
            error(raw.line, "metric '" + raw.name + "' declares no chart");
            return std::nullopt;
        }
        const auto coords = split_words(raw.chart->text);
        if (coords.size() != 4) {
            error(raw.chart->line, "chart needs exactly four coordinate names");
            return std::nullopt;
        }
        for (std::size_t i = 0; i < 4; ++i) entry.metric.chart[i] = coords[i];

        ParamNames known;
        for (const auto& [loc, name] : raw.params) {
            try {
                const Expression e = parse(loc.text, entry.metric.chart, known);
                if (!e.is_constant()) throw Error("parameter value depends on a coordinate");
                entry.metric.params[name] = eval_value(e, {}, entry.metric.params);
                known.insert(name);
            } catch (const std::exception& ex) {
                error(loc.line, "parameter '" + name + "': " + ex.what());
            }
        }

        auto index_of = [&](const std::string& w) -> std::optional<std::size_t> {
            for (std::size_t i = 0; i < 4; ++i)
                if (entry.metric.chart[i] == w) return i;
            if (w.size() == 1 && w[0] >= '0' && w[0] <= '3') return static_cast<std::size_t>(w[0] - '0');
            return std::nullopt;
        };
        std::array<bool, 10> seen{};
        for (const auto& [loc, ij] : raw.components) {
            const auto i = index_of(ij.first), j = index_of(ij.second);
            if (!i || !j) {
                error(loc.line, "unknown component index in 'g " + ij.first + " " + ij.second + "'");
                continue;
            }
            const std::size_t k = MetricSpec::component_index(*i, *j);
            if (seen[k]) error(loc.line, "component g " + ij.first + " " + ij.second + " given twice");
            seen[k] = true;
            if (auto e = parse_at(loc, entry.metric.chart, known)) entry.metric.components[k] = *e;
        }
        if (raw.guard)
            if (auto e = parse_at(*raw.guard, entry.metric.chart, known)) entry.metric.domain_guard = *e;

        if (!raw.sample) {
            error(raw.line, "metric '" + raw.name + "' declares no sample point");
        } else if (auto p = point_at(*raw.sample, entry.metric.chart, known, entry.metric.params)) {
            entry.sample = *p;
        }

        for (const auto& [loc, name] : raw.sigmas)
            if (auto e = parse_at(loc, entry.metric.chart, known)) entry.sigmas.push_back({name, *e});

        for (const auto& rs : raw.surfaces) {
            SurfaceEntry s;
            s.name = rs.name;
            if (auto e = parse_at({rs.line, rs.F}, entry.metric.chart, known)) s.F = *e;
            for (const auto& seed : rs.seeds) {
                const auto parts = split_commas(seed.text);
                if (parts.size() != 4) {
                    error(seed.line, "seed needs four comma-separated components");
                    continue;
                }
                std::array<Expression, 4> pt;
                bool ok = true;
                for (std::size_t i = 0; i < 4; ++i) {
                    auto e = parse_at({seed.line, std::string(parts[i])}, entry.metric.chart, known);
                    if (e && !e->is_constant()) {
                        error(seed.line, "seed component depends on a coordinate");
                        e.reset();
                    }
                    if (e) pt[i] = *e;
                    ok = ok && e.has_value();
                }
                if (ok) s.seeds.push_back(pt);
            }
            entry.surfaces.push_back(std::move(s));
        }

        if (errors_.size() != before) return std::nullopt;
        try {
            metric_jet(entry.metric, entry.sample);
        } catch (const std::exception& ex) {
            error(raw.sample ? raw.sample->line : raw.line, std::string("self-test at the sample point failed: ") + ex.what());
            return std::nullopt;
        }
        return entry;
    }

   private:
    std::optional<Expression> parse_at(const Located& loc, const Chart& chart, const ParamNames& names) {
        try {
            return parse(loc.text, chart, names);
        } catch (const ParseError& ex) {
            error(loc.line, std::string(ex.what()) + " in '" + loc.text + "'");
        } catch (const std::exception& ex) {
            error(loc.line, ex.what());
        }
        return std::nullopt;
    }

    std::optional<Vec4> point_at(const Located& loc, const Chart& chart, const ParamNames& names,
                                 const ParamMap& values) {
        const auto parts = split_commas(loc.text);
        if (parts.size() != 4) {
            error(loc.line, "point needs four comma-separated components");
            return std::nullopt;
        }
        Vec4 out{};
        for (std::size_t i = 0; i < 4; ++i) {
            auto e = parse_at({loc.line, std::string(parts[i])}, chart, names);
            if (!e) return std::nullopt;
            try {
                out[i] = eval_value(*e, {}, values);
            } catch (const std::exception& ex) {
                error(loc.line, ex.what());
                return std::nullopt;
            }
        }
        return out;
    }

    std::string_view source_;
    std::vector<std::string> errors_;
};

// "key NAME = rest" or "key = rest"; returns (words before '=', rest).
std::optional<std::pair<std::vector<std::string>, std::string>> split_assignment(std::string_view line) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) return std::nullopt;
    return std::make_pair(split_words(line.substr(0, eq)), std::string(trim(line.substr(eq + 1))));
}

}  // namespace

const Expression& CatalogEntry::sigma(std::string_view name) const {
    for (const auto& s : sigmas)
        if (s.name == name) return s.expr;
    throw CatalogError("metric '" + metric.name + "' has no conformal factor named '" + std::string(name) + "'");
}

HypersurfaceSpec CatalogEntry::surface(std::string_view name, const ParamMap& overrides) const {
    const ParamMap p = resolve_params(metric, overrides);
    for (const auto& s : surfaces) {
        if (s.name != name) continue;
        HypersurfaceSpec out{s.name, s.F, {}};
        for (const auto& seed : s.seeds) {
            Vec4 x{};
            for (std::size_t i = 0; i < 4; ++i) x[i] = eval_value(seed[i], {}, p);
            out.seeds.push_back(x);
        }
        return out;
    }
    throw CatalogError("metric '" + metric.name + "' has no surface named '" + std::string(name) + "'");
}

Catalog Catalog::parse(std::string_view text, std::string_view source) {
    Builder builder(source);
    std::vector<CatalogEntry> entries;
    std::optional<RawMetric> cur;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw_line; std::getline(in, raw_line);) {
        ++line_no;
        std::string_view line = raw_line;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto words = split_words(line);
        const std::string& key = words[0];

        if (key == "metric") {
            if (cur) builder.error(line_no, "'metric' inside metric '" + cur->name + "' (missing 'end')");
            if (words.size() != 2) {
                builder.error(line_no, "expected 'metric NAME'");
                cur.reset();
                continue;
            }
            cur = RawMetric{};
            cur->line = line_no;
            cur->name = words[1];
            continue;
        }
        if (!cur) {
            builder.error(line_no, "'" + key + "' outside a metric block");
            continue;
        }
        if (key == "end") {
            if (words.size() != 1) builder.error(line_no, "unexpected text after 'end'");
            const bool duplicate = std::any_of(entries.begin(), entries.end(),
                                               [&](const CatalogEntry& e) { return e.metric.name == cur->name; });
            if (duplicate) builder.error(cur->line, "metric '" + cur->name + "' declared twice");
            if (auto e = builder.build(*cur)) entries.push_back(std::move(*e));
            cur.reset();
            continue;
        }
        if (key == "chart") {
            cur->chart = Located{line_no, std::string(trim(line.substr(5)))};
            continue;
        }
        const auto assign = split_assignment(line);
        if (!assign) {
            builder.error(line_no, "cannot read '" + std::string(line) + "'");
            continue;
        }
        const auto& [lhs, rhs] = *assign;
        const Located loc{line_no, rhs};
        if (rhs.empty()) {
            builder.error(line_no, "missing value after '='");
        } else if (key == "param" && lhs.size() == 2) {
            cur->params.push_back({loc, lhs[1]});
        } else if (key == "g" && lhs.size() == 3) {
            cur->components.push_back({loc, {lhs[1], lhs[2]}});
        } else if (key == "guard" && lhs.size() == 1) {
            cur->guard = loc;
        } else if (key == "sample" && lhs.size() == 1) {
            cur->sample = loc;
        } else if (key == "sigma" && lhs.size() == 2) {
            cur->sigmas.push_back({loc, lhs[1]});
        } else if (key == "surface" && lhs.size() == 2) {
            cur->surfaces.push_back({line_no, lhs[1], rhs, {}});
        } else if (key == "seed" && lhs.size() == 2) {
            auto it = std::find_if(cur->surfaces.begin(), cur->surfaces.end(),
                                   [&](const RawSurface& s) { return s.name == lhs[1]; });
            if (it == cur->surfaces.end())
                builder.error(line_no, "seed for undeclared surface '" + lhs[1] + "'");
            else
                it->seeds.push_back(loc);
        } else {
            builder.error(line_no, "unknown declaration '" + std::string(line) + "'");
        }
    }
    if (cur) builder.error(cur->line, "metric '" + cur->name + "' is missing 'end'");
    if (builder.failed()) throw CatalogError(builder.message());
    return Catalog(std::move(entries));
}

Catalog Catalog::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

const CatalogEntry& Catalog::find(std::string_view name) const {
    for (const auto& e : entries_)
        if (e.metric.name == name) return e;
    throw CatalogError("unknown metric '" + std::string(name) + "'");
}

bool Catalog::contains(std::string_view name) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const CatalogEntry& e) { return e.metric.name == name; });
}

std::vector<std::string> Catalog::names() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) out.push_back(e.metric.name);
    return out;
}

void Catalog::merge(const Catalog& other) {
    for (const auto& e : other.entries_) {
        auto it = std::find_if(entries_.begin(), entries_.end(),
                               [&](const CatalogEntry& x) { return x.metric.name == e.metric.name; });
        if (it == entries_.end())
            entries_.push_back(e);
        else
            *it = e;
    }
}

std::string_view builtin_catalog_text() {
    static constexpr std::string_view text = R"(# Built-in spacetimes. Signature (+,-,-,-).

metric minkowski
  chart t x y z
  g t t = 1
  g x x = -1
  g y y = -1
  g z z = -1
  sample = 0, 0, 0, 0
  sigma const3 = 3
  sigma exp-t = exp(0.2*t)
  sigma bump = 1 + 0.1/sqrt(1 + x^2 + y^2 + z^2)
  surface null-plane = t - x
  seed null-plane = 0.3, 0.3, 0.1, -0.2
  surface null-cone = t - sqrt(x^2 + y^2 + z^2)
  seed null-cone = 3, 1, 2, 2
end

metric schwarzschild
  chart t r th ph
  param M = 1
  g t t = 1 - 2*M/r
  g r r = -1/(1 - 2*M/r)
  g th th = -r^2
  g ph ph = -r^2*sin(th)^2
  guard = (r - 2*M)*sin(th)
  sample = 0, 6, 1.2, 0.3
  sigma const3 = 3
  sigma exp-t = exp(0.2*t)
  sigma bump = 1 + 0.1/r
end

metric eddington-finkelstein
  chart v r th ph
  param M = 1
  g v v = 1 - 2*M/r
  g v r = -1
  g th th = -r^2
  g ph ph = -r^2*sin(th)^2
  guard = r*sin(th)
  sample = 0, 3, 1.2, 0.3
  surface horizon = r - 2*M
  seed horizon = 0, 2*M, 1.3, 0.2
end

metric kerr
  chart t r th ph
  param M = 1
  param a = 0.5
  g t t = 1 - 2*M*r/(r^2 + a^2*cos(th)^2)
  g t ph = 2*M*a*r*sin(th)^2/(r^2 + a^2*cos(th)^2)
  g r r = -(r^2 + a^2*cos(th)^2)/(r^2 - 2*M*r + a^2)
  g th th = -(r^2 + a^2*cos(th)^2)
  g ph ph = -(r^2 + a^2 + 2*M*a^2*r*sin(th)^2/(r^2 + a^2*cos(th)^2))*sin(th)^2
  guard = (r - M - sqrt(M^2 - a^2))*sin(th)
  sample = 0, 6, 1.2, 0.3
  sigma exp-t = exp(0.2*t)
end

metric pp-wave
  chart u v x y
  param A = 1
  g u u = A*(x^2 - y^2)
  g u v = 1
  g x x = -1
  g y y = -1
  sample = 0, 0, 0.7, 0.4
end

# Vacuum needs p1 + p2 + p3 = 1 and p1^2 + p2^2 + p3^2 = 1.
metric kasner
  chart t x y z
  param p1 = -2/7
  param p2 = 3/7
  param p3 = 6/7
  g t t = 1
  g x x = -t^(2*p1)
  g y y = -t^(2*p2)
  g z z = -t^(2*p3)
  guard = t
  sample = 1.3, 0, 0, 0
end

metric conformally-flat-exp
  chart t x y z
  g t t = exp(0.6*t + 0.2*x^2)
  g x x = -exp(0.6*t + 0.2*x^2)
  g y y = -exp(0.6*t + 0.2*x^2)
  g z z = -exp(0.6*t + 0.2*x^2)
  sample = 0.1, 0.3, 0.2, 0.1
end

metric de-sitter
  chart t x y z
  param H = 0.5
  g t t = 1
  g x x = -exp(2*H*t)
  g y y = -exp(2*H*t)
  g z z = -exp(2*H*t)
  sample = 0.2, 0.1, -0.3, 0.4
end
)";
    return text;
}

const Catalog& builtin_catalog() {
    static const Catalog cat = Catalog::parse(builtin_catalog_text(), "<builtin>");
    return cat;
}

}  // namespace nullgeo
