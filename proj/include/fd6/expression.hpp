#pragma once

/// @file expression.hpp
/// Closed-form scalar expressions in the variables x and y: a minimal,
/// differentiation-closed node set (constants, x, y, pi, unary minus,
/// sin/cos/exp, +, -, *, /, integer powers) with a parser, a printer whose
/// output re-parses to an equivalent tree, exact symbolic differentiation,
/// and IEEE binary64 evaluation.

#include <memory>
#include <string>

#include "fd6/errors.hpp"

namespace fd6 {

namespace detail {
struct ExprNode;
} // namespace detail

/// An immutable expression tree. Copies share structure; all operations
/// producing new expressions are pure.
class Expression {
public:
    /// The constant zero.
    Expression();

    /// Render as text that re-parses to an expression with identical
    /// evaluation everywhere.
    std::string str() const;

    /// IEEE binary64 evaluation at (x, y). Throws EvalError on division by
    /// zero (including zero raised to a negative power).
    double operator()(double x, double y) const;

    /// Exact symbolic single-variable derivatives with basic simplification.
    Expression derivative_x() const;
    Expression derivative_y() const;

    friend Expression operator+(const Expression&, const Expression&);
    friend Expression operator-(const Expression&, const Expression&);
    friend Expression operator*(const Expression&, const Expression&);
    friend Expression operator/(const Expression&, const Expression&);
    friend Expression operator-(const Expression&);
    friend Expression sin(const Expression&);
    friend Expression cos(const Expression&);
    friend Expression exp(const Expression&);
    friend Expression pow(const Expression&, int exponent);
    friend Expression constant(double value);
    friend Expression var_x();
    friend Expression var_y();
    friend Expression pi();
    friend Expression parse(const std::string& text);

private:
    explicit Expression(std::shared_ptr<const detail::ExprNode> root);
    std::shared_ptr<const detail::ExprNode> root_;
};

/// Construction helpers mirroring the node set.
Expression constant(double value);
Expression var_x();
Expression var_y();
Expression pi();
Expression sin(const Expression& e);
Expression cos(const Expression& e);
Expression exp(const Expression& e);
Expression pow(const Expression& e, int exponent);

/// Parse expression text.
///
/// Grammar: expr := term (('+'|'-') term)*; term := factor (('*'|'/')
/// factor)*; factor := '-' factor | atom ('^' integer)?; atom := number |
/// 'x' | 'y' | 'pi' | ('sin'|'cos'|'exp') '(' expr ')' | '(' expr ')'.
/// Whitespace is insignificant; numbers are decimal with an optional
/// exponent part; the power operator takes a literal (optionally negated)
/// integer and binds tighter than unary minus, so "-x^2" is -(x^2).
///
/// Failures throw ParseError carrying the byte offset of the offending
/// token and the set of tokens that would have been accepted there.
Expression parse(const std::string& text);

/// Mixed partial derivative of order m in x and n in y, with m, n >= 0 and
/// m + n <= 8; the bound exists because no consumer needs more than source
/// partials to total order 4 and solution partials to total order 6.
Expression differentiate(const Expression& e, int m, int n);

/// Functional spelling of Expression::operator().
double evaluate(const Expression& e, double x, double y);

/// Functional spelling of Expression::str().
std::string to_string(const Expression& e);

} // namespace fd6
