#include "nullgeo/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <vector>

#include "nullgeo/errors.hpp"

namespace nullgeo {

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_binary(ExprKind kind, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_unary(ExprKind kind, NodePtr arg) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = kind;
    n->lhs = std::move(arg);
    return n;
}

NodePtr make_number(double v) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = ExprKind::Number;
    n->number = v;
    return n;
}

constexpr std::array<std::pair<std::string_view, ExprFunction>, 9> kFunctions{{
    {"sin", ExprFunction::Sin},
    {"cos", ExprFunction::Cos},
    {"tan", ExprFunction::Tan},
    {"exp", ExprFunction::Exp},
    {"log", ExprFunction::Log},
    {"sqrt", ExprFunction::Sqrt},
    {"sinh", ExprFunction::Sinh},
    {"cosh", ExprFunction::Cosh},
    {"abs", ExprFunction::Abs},
}};

std::optional<ExprFunction> lookup_function(std::string_view name) {
    for (const auto& [n, f] : kFunctions)
        if (n == name) return f;
    return std::nullopt;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write(const Expression::Node& n, std::string& out) {
    switch (n.kind) {
        case ExprKind::Number:
            out += format_number(n.number);
            return;
        case ExprKind::Coordinate:
        case ExprKind::Parameter:
            out += n.name;
            return;
        case ExprKind::Negate:
            out += "(-";
            write(*n.lhs, out);
            out += ')';
            return;
        case ExprKind::Function:
            out += function_name(n.function);
            out += '(';
            write(*n.lhs, out);
            out += ')';
            return;
        default:
            break;
    }
    const char* op = "";
    switch (n.kind) {
        case ExprKind::Add: op = " + "; break;
        case ExprKind::Subtract: op = " - "; break;
        case ExprKind::Multiply: op = " * "; break;
        case ExprKind::Divide: op = " / "; break;
        case ExprKind::Power: op = "^"; break;
        default: break;
    }
    out += '(';
    write(*n.lhs, out);
    out += op;
    write(*n.rhs, out);
    out += ')';
}

bool equal(const Expression::Node& a, const Expression::Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::Number:
            return a.number == b.number;
        case ExprKind::Coordinate:
            return a.coordinate == b.coordinate && a.name == b.name;
        case ExprKind::Parameter:
            return a.name == b.name;
        case ExprKind::Negate:
            return equal(*a.lhs, *b.lhs);
        case ExprKind::Function:
            return a.function == b.function && equal(*a.lhs, *b.lhs);
        default:
            return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
}

void collect_parameters(const Expression::Node& n, ParamNames& out) {
    if (n.kind == ExprKind::Parameter) out.insert(n.name);
    if (n.lhs) collect_parameters(*n.lhs, out);
    if (n.rhs) collect_parameters(*n.rhs, out);
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    Parser(std::string_view src, const Chart& chart, const ParamNames& params)
        : src_(src), chart_(chart), params_(params) {}

    NodePtr parse() {
        NodePtr e = sum();
        skip_space();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but reached end of input");
            fail(std::string("expected '") + c + "'");
        }
    }

    NodePtr sum() {
        NodePtr lhs = product();
        for (;;) {
            if (accept('+'))
                lhs = make_binary(ExprKind::Add, lhs, product());
            else if (accept('-'))
                lhs = make_binary(ExprKind::Subtract, lhs, product());
            else
                return lhs;
        }
    }

    NodePtr product() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = make_binary(ExprKind::Multiply, lhs, unary());
            else if (accept('/'))
                lhs = make_binary(ExprKind::Divide, lhs, unary());
            else
                return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make_unary(ExprKind::Negate, unary());
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make_binary(ExprKind::Power, base, unary());
        return base;
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = sum();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        auto is_digit = [&](std::size_t i) {
            return i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]));
        };
        while (is_digit(pos_)) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (is_digit(pos_)) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t q = pos_ + 1;
            if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
            if (is_digit(q)) {
                pos_ = q;
                while (is_digit(pos_)) ++pos_;
            }
        }
        double v = 0.0;
        const auto* first = src_.data() + start;
        const auto* last = src_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) {
            pos_ = start;
            fail("malformed number");
        }
        return make_number(v);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string name(src_.substr(start, pos_ - start));

        skip_space();
        if (pos_ < src_.size() && src_[pos_] == '(') {
            auto f = lookup_function(name);
            if (!f) {
                pos_ = start;
                fail("unknown function '" + name + "'");
            }
            ++pos_;
            auto n = std::make_shared<Expression::Node>();
            n->kind = ExprKind::Function;
            n->function = *f;
            n->lhs = sum();
            expect(')');
            return n;
        }
        for (std::size_t k = 0; k < 4; ++k) {
            if (chart_[k] == name) {
                auto n = std::make_shared<Expression::Node>();
                n->kind = ExprKind::Coordinate;
                n->coordinate = k;
                n->name = name;
                return n;
            }
        }
        if (params_.count(name) != 0) {
            auto n = std::make_shared<Expression::Node>();
            n->kind = ExprKind::Parameter;
            n->name = name;
            return n;
        }
        throw UnknownSymbolError(name);
    }

    std::string_view src_;
    const Chart& chart_;
    const ParamNames& params_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluation

[[noreturn]] void domain_fail(const std::string& what, const Expression::Node& n) {
    std::string s;
    write(n, s);
    throw DomainError(what + " in '" + s + "'");
}

/// Integer value of a constant exponent, if it is one.
std::optional<long> integer_exponent(const Jet2& e) {
    for (double g : e.grad)
        if (g != 0.0) return std::nullopt;
    for (double h : e.hess)
        if (h != 0.0) return std::nullopt;
    if (std::abs(e.value) > 64.0 || std::nearbyint(e.value) != e.value) return std::nullopt;
    return static_cast<long>(e.value);
}

Jet2 apply_function(ExprFunction f, const Jet2& a, const Expression::Node& n) {
    const double x = a.value;
    switch (f) {
        case ExprFunction::Sin: {
            const double s = std::sin(x), c = std::cos(x);
            return compose(a, s, c, -s);
        }
        case ExprFunction::Cos: {
            const double s = std::sin(x), c = std::cos(x);
            return compose(a, c, -s, -c);
        }
        case ExprFunction::Tan: {
            const double c = std::cos(x);
            if (c == 0.0) domain_fail("tan pole", n);
            const double t = std::tan(x);
            const double sec2 = 1.0 + t * t;
            return compose(a, t, sec2, 2.0 * t * sec2);
        }
        case ExprFunction::Exp: {
            const double e = std::exp(x);
            return compose(a, e, e, e);
        }
        case ExprFunction::Log:
            if (!(x > 0.0)) domain_fail("log of non-positive value", n);
            return compose(a, std::log(x), 1.0 / x, -1.0 / (x * x));
        case ExprFunction::Sqrt: {
            if (!(x > 0.0)) domain_fail("sqrt of non-positive value", n);
            const double r = std::sqrt(x);
            return compose(a, r, 0.5 / r, -0.25 / (r * x));
        }
        case ExprFunction::Sinh: {
            const double s = std::sinh(x), c = std::cosh(x);
            return compose(a, s, c, s);
        }
        case ExprFunction::Cosh: {
            const double s = std::sinh(x), c = std::cosh(x);
            return compose(a, c, s, c);
        }
        case ExprFunction::Abs:
            if (x == 0.0) domain_fail("abs is not differentiable at 0", n);
            return compose(a, std::abs(x), x > 0.0 ? 1.0 : -1.0, 0.0);
    }
    domain_fail("unknown function", n);
}

double lookup_param(const ParamMap& params, const std::string& name) {
    auto it = params.find(name);
    if (it == params.end()) throw UnknownSymbolError(name);
    return it->second;
}

Jet2 eval(const Expression::Node& n, const Vec4& x, const ParamMap& params) {
    switch (n.kind) {
        case ExprKind::Number:
            return Jet2::constant(n.number);
        case ExprKind::Coordinate:
            return Jet2::variable(n.coordinate, x[n.coordinate]);
        case ExprKind::Parameter:
            return Jet2::constant(lookup_param(params, n.name));
        case ExprKind::Negate:
            return -eval(*n.lhs, x, params);
        case ExprKind::Add:
            return eval(*n.lhs, x, params) + eval(*n.rhs, x, params);
        case ExprKind::Subtract:
            return eval(*n.lhs, x, params) - eval(*n.rhs, x, params);
        case ExprKind::Multiply:
            return eval(*n.lhs, x, params) * eval(*n.rhs, x, params);
        case ExprKind::Divide: {
            const Jet2 num = eval(*n.lhs, x, params);
            const Jet2 den = eval(*n.rhs, x, params);
            if (den.value == 0.0) domain_fail("division by zero", n);
            return num * reciprocal(den);
        }
        case ExprKind::Power: {
            const Jet2 base = eval(*n.lhs, x, params);
            const Jet2 expo = eval(*n.rhs, x, params);
            if (auto k = integer_exponent(expo)) {
                if (*k < 0 && base.value == 0.0) domain_fail("zero raised to a negative power", n);
                return integer_power(base, *k);
            }
            if (!(base.value > 0.0)) domain_fail("non-integer power of non-positive base", n);
            const double lb = std::log(base.value);
            const Jet2 log_base = compose(base, lb, 1.0 / base.value, -1.0 / (base.value * base.value));
            const Jet2 arg = expo * log_base;
            const double e = std::exp(arg.value);
            return compose(arg, e, e, e);
        }
        case ExprKind::Function:
            return apply_function(n.function, eval(*n.lhs, x, params), n);
    }
    domain_fail("malformed node", n);
}

double eval_scalar(const Expression::Node& n, const Vec4& x, const ParamMap& params) {
    switch (n.kind) {
        case ExprKind::Number:
            return n.number;
        case ExprKind::Coordinate:
            return x[n.coordinate];
        case ExprKind::Parameter:
            return lookup_param(params, n.name);
        case ExprKind::Negate:
            return -eval_scalar(*n.lhs, x, params);
        case ExprKind::Add:
            return eval_scalar(*n.lhs, x, params) + eval_scalar(*n.rhs, x, params);
        case ExprKind::Subtract:
            return eval_scalar(*n.lhs, x, params) - eval_scalar(*n.rhs, x, params);
        case ExprKind::Multiply:
            return eval_scalar(*n.lhs, x, params) * eval_scalar(*n.rhs, x, params);
        case ExprKind::Divide: {
            const double den = eval_scalar(*n.rhs, x, params);
            if (den == 0.0) domain_fail("division by zero", n);
            return eval_scalar(*n.lhs, x, params) / den;
        }
        case ExprKind::Power: {
            const double b = eval_scalar(*n.lhs, x, params);
            const double e = eval_scalar(*n.rhs, x, params);
            const bool integral = std::abs(e) <= 64.0 && std::nearbyint(e) == e;
            if (integral) {
                if (e < 0 && b == 0.0) domain_fail("zero raised to a negative power", n);
                return std::pow(b, e);
            }
            if (!(b > 0.0)) domain_fail("non-integer power of non-positive base", n);
            return std::exp(e * std::log(b));
        }
        case ExprKind::Function: {
            const double a = eval_scalar(*n.lhs, x, params);
            switch (n.function) {
                case ExprFunction::Sin: return std::sin(a);
                case ExprFunction::Cos: return std::cos(a);
                case ExprFunction::Tan: return std::tan(a);
                case ExprFunction::Exp: return std::exp(a);
                case ExprFunction::Log:
                    if (!(a > 0.0)) domain_fail("log of non-positive value", n);
                    return std::log(a);
                case ExprFunction::Sqrt:
                    if (a < 0.0) domain_fail("sqrt of negative value", n);
                    return std::sqrt(a);
                case ExprFunction::Sinh: return std::sinh(a);
                case ExprFunction::Cosh: return std::cosh(a);
                case ExprFunction::Abs: return std::abs(a);
            }
        }
    }
    domain_fail("malformed node", n);
}

}  // namespace

Expression::Expression() : root_(make_number(0.0)) {}

Expression Expression::number(double value) {
    // Literals are never negative in parsed text, so keep the same shape here.
    if (std::signbit(value)) return Expression(make_unary(ExprKind::Negate, make_number(-value)));
    return Expression(make_number(value));
}

Expression Expression::coordinate(std::size_t index, std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Coordinate;
    n->coordinate = index;
    n->name = std::move(name);
    return Expression(std::move(n));
}

Expression Expression::parameter(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Parameter;
    n->name = std::move(name);
    return Expression(std::move(n));
}

Expression Expression::function(ExprFunction f, const Expression& arg) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Function;
    n->function = f;
    n->lhs = arg.root_;
    return Expression(std::move(n));
}

std::string Expression::to_string() const {
    std::string s;
    write(*root_, s);
    return s;
}

bool Expression::structurally_equal(const Expression& other) const { return equal(*root_, *other.root_); }

ParamNames Expression::parameters() const {
    ParamNames out;
    collect_parameters(*root_, out);
    return out;
}

bool Expression::is_constant() const {
    auto walk = [](const auto& self, const Node& n) -> bool {
        if (n.kind == ExprKind::Coordinate) return false;
        if (n.lhs && !self(self, *n.lhs)) return false;
        return !n.rhs || self(self, *n.rhs);
    };
    return walk(walk, *root_);
}

Expression operator+(const Expression& a, const Expression& b) {
    return Expression(make_binary(ExprKind::Add, a.root_, b.root_));
}
Expression operator-(const Expression& a, const Expression& b) {
    return Expression(make_binary(ExprKind::Subtract, a.root_, b.root_));
}
Expression operator*(const Expression& a, const Expression& b) {
    return Expression(make_binary(ExprKind::Multiply, a.root_, b.root_));
}
Expression operator/(const Expression& a, const Expression& b) {
    return Expression(make_binary(ExprKind::Divide, a.root_, b.root_));
}
Expression operator-(const Expression& a) { return Expression(make_unary(ExprKind::Negate, a.root_)); }

Expression parse(std::string_view source, const Chart& chart, const ParamNames& params) {
    return Expression(Parser(source, chart, params).parse());
}

Jet2 eval_jet2(const Expression& e, const Vec4& point, const ParamMap& params) {
    return eval(e.root(), point, params);
}

double eval_value(const Expression& e, const Vec4& point, const ParamMap& params) {
    return eval_scalar(e.root(), point, params);
}

std::string_view function_name(ExprFunction f) noexcept {
    for (const auto& [n, g] : kFunctions)
        if (g == f) return n;
    return "?";
}

}  // namespace nullgeo
