#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "nullgeo/jet.hpp"
#include "nullgeo/tensor.hpp"

namespace nullgeo {

using Chart = std::array<std::string, 4>;
using ParamMap = std::map<std::string, double, std::less<>>;
using ParamNames = std::set<std::string, std::less<>>;

enum class ExprKind { Number, Coordinate, Parameter, Negate, Add, Subtract, Multiply, Divide, Power, Function };

enum class ExprFunction { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Abs };

/// Immutable expression tree over four chart coordinates and named parameters.
///
/// Grammar, loosest to tightest binding:
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?          (right associative)
///   primary := number | name | name '(' sum ')' | '(' sum ')'
/// Function names: sin cos tan exp log sqrt sinh cosh abs.
class Expression {
public:
    struct Node {
        ExprKind kind = ExprKind::Number;
        double number = 0.0;
        std::size_t coordinate = 0;
        std::string name;  // coordinate or parameter name
        ExprFunction function = ExprFunction::Sin;
        std::shared_ptr<const Node> lhs;  // also the sole operand of Negate / Function
        std::shared_ptr<const Node> rhs;
    };

    /// The constant 0.
    Expression();
    explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    static Expression number(double value);
    static Expression coordinate(std::size_t index, std::string name);
    static Expression parameter(std::string name);
    static Expression function(ExprFunction f, const Expression& arg);

    const Node& root() const noexcept { return *root_; }

    /// Fully parenthesized text that parses back to the same tree.
    std::string to_string() const;

    bool structurally_equal(const Expression& other) const;

    /// Parameter names referenced anywhere in the tree.
    ParamNames parameters() const;

    /// True when no coordinate appears in the tree.
    bool is_constant() const;

    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator*(const Expression& a, const Expression& b);
    friend Expression operator/(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a);

private:
    std::shared_ptr<const Node> root_;
};

/// Parses `source`. Every identifier that is not a function name must be one
/// of the chart's coordinates or one of `params`.
/// Throws ParseError (with position) or UnknownSymbolError.
Expression parse(std::string_view source, const Chart& chart, const ParamNames& params);

/// Value, gradient and Hessian at `point`, exact up to rounding.
/// Throws DomainError naming the offending subexpression, or
/// UnknownSymbolError if a referenced parameter has no value.
Jet2 eval_jet2(const Expression& e, const Vec4& point, const ParamMap& params);

/// Value only.
double eval_value(const Expression& e, const Vec4& point, const ParamMap& params);

std::string_view function_name(ExprFunction f) noexcept;

}  // namespace nullgeo
