#include "fd6/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

namespace fd6 {
namespace detail {

enum class Kind {
    Constant,
    VarX,
    VarY,
    Pi,
    Neg,
    Sin,
    Cos,
    Exp,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
};

struct ExprNode {
    Kind kind;
    double value = 0.0; // Constant payload
    int exponent = 0;   // Pow payload
    std::shared_ptr<const ExprNode> a;
    std::shared_ptr<const ExprNode> b;
};

} // namespace detail

namespace {

using detail::ExprNode;
using detail::Kind;
using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr node(Kind kind, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

bool is_const(const NodePtr& n, double v) {
    return n->kind == Kind::Constant && n->value == v;
}

NodePtr mk_const(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Constant;
    n->value = v;
    return n;
}

double ipow(double base, int exponent) {
    if (exponent < 0) return 1.0 / ipow(base, -exponent);
    double acc = 1.0, factor = base;
    for (int e = exponent; e > 0; e >>= 1) {
        if (e & 1) acc *= factor;
        factor *= factor;
    }
    return acc;
}

NodePtr mk_neg(NodePtr a) {
    if (a->kind == Kind::Constant) return mk_const(-a->value);
    if (a->kind == Kind::Neg) return a->a;
    return node(Kind::Neg, std::move(a));
}

NodePtr mk_add(NodePtr a, NodePtr b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant)
        return mk_const(a->value + b->value);
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return node(Kind::Add, std::move(a), std::move(b));
}

NodePtr mk_sub(NodePtr a, NodePtr b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant)
        return mk_const(a->value - b->value);
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return mk_neg(std::move(b));
    return node(Kind::Sub, std::move(a), std::move(b));
}

NodePtr mk_mul(NodePtr a, NodePtr b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant)
        return mk_const(a->value * b->value);
    if (is_const(a, 0.0) || is_const(b, 0.0)) return mk_const(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return node(Kind::Mul, std::move(a), std::move(b));
}

NodePtr mk_div(NodePtr a, NodePtr b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant &&
        b->value != 0.0)
        return mk_const(a->value / b->value);
    if (is_const(b, 1.0)) return a;
    return node(Kind::Div, std::move(a), std::move(b));
}

NodePtr mk_pow(NodePtr a, int exponent) {
    if (exponent == 0) return mk_const(1.0);
    if (exponent == 1) return a;
    if (a->kind == Kind::Constant && !(a->value == 0.0 && exponent < 0))
        return mk_const(ipow(a->value, exponent));
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Pow;
    n->exponent = exponent;
    n->a = std::move(a);
    return n;
}

NodePtr mk_call(Kind kind, NodePtr a) {
    if (a->kind == Kind::Constant) {
        switch (kind) {
        case Kind::Sin: return mk_const(std::sin(a->value));
        case Kind::Cos: return mk_const(std::cos(a->value));
        case Kind::Exp: return mk_const(std::exp(a->value));
        default: break;
        }
    }
    return node(kind, std::move(a));
}

// ------------------------------------------------------------- evaluation

double eval_node(const ExprNode& n, double x, double y) {
    switch (n.kind) {
    case Kind::Constant: return n.value;
    case Kind::VarX: return x;
    case Kind::VarY: return y;
    case Kind::Pi: return std::numbers::pi_v<double>;
    case Kind::Neg: return -eval_node(*n.a, x, y);
    case Kind::Sin: return std::sin(eval_node(*n.a, x, y));
    case Kind::Cos: return std::cos(eval_node(*n.a, x, y));
    case Kind::Exp: return std::exp(eval_node(*n.a, x, y));
    case Kind::Add: return eval_node(*n.a, x, y) + eval_node(*n.b, x, y);
    case Kind::Sub: return eval_node(*n.a, x, y) - eval_node(*n.b, x, y);
    case Kind::Mul: return eval_node(*n.a, x, y) * eval_node(*n.b, x, y);
    case Kind::Div: {
        const double num = eval_node(*n.a, x, y);
        const double den = eval_node(*n.b, x, y);
        if (den == 0.0) {
            std::ostringstream os;
            os << "division by zero at (x, y) = (" << x << ", " << y << ")";
            throw EvalError(os.str());
        }
        return num / den;
    }
    case Kind::Pow: {
        const double base = eval_node(*n.a, x, y);
        if (base == 0.0 && n.exponent < 0) {
            std::ostringstream os;
            os << "zero raised to the negative power " << n.exponent
               << " at (x, y) = (" << x << ", " << y << ")";
            throw EvalError(os.str());
        }
        return ipow(base, n.exponent);
    }
    }
    throw ContractViolation("unreachable expression node kind");
}

// --------------------------------------------------------- differentiation

NodePtr diff_node(const NodePtr& n, bool wrt_x) {
    switch (n->kind) {
    case Kind::Constant:
    case Kind::Pi: return mk_const(0.0);
    case Kind::VarX: return mk_const(wrt_x ? 1.0 : 0.0);
    case Kind::VarY: return mk_const(wrt_x ? 0.0 : 1.0);
    case Kind::Neg: return mk_neg(diff_node(n->a, wrt_x));
    case Kind::Sin:
        return mk_mul(mk_call(Kind::Cos, n->a), diff_node(n->a, wrt_x));
    case Kind::Cos:
        return mk_mul(mk_neg(mk_call(Kind::Sin, n->a)),
                      diff_node(n->a, wrt_x));
    case Kind::Exp:
        return mk_mul(mk_call(Kind::Exp, n->a), diff_node(n->a, wrt_x));
    case Kind::Add:
        return mk_add(diff_node(n->a, wrt_x), diff_node(n->b, wrt_x));
    case Kind::Sub:
        return mk_sub(diff_node(n->a, wrt_x), diff_node(n->b, wrt_x));
    case Kind::Mul:
        return mk_add(mk_mul(diff_node(n->a, wrt_x), n->b),
                      mk_mul(n->a, diff_node(n->b, wrt_x)));
    case Kind::Div:
        return mk_div(mk_sub(mk_mul(diff_node(n->a, wrt_x), n->b),
                             mk_mul(n->a, diff_node(n->b, wrt_x))),
                      mk_pow(n->b, 2));
    case Kind::Pow:
        return mk_mul(mk_mul(mk_const(static_cast<double>(n->exponent)),
                             mk_pow(n->a, n->exponent - 1)),
                      diff_node(n->a, wrt_x));
    }
    throw ContractViolation("unreachable expression node kind");
}

// ---------------------------------------------------------------- printing

// Precedence tiers used by the printer: sums, then products, then unary
// minus, then atoms/powers. A child is parenthesized when its tier is too
// low for its slot; right operands of binary nodes are parenthesized on
// ties as well, so the printed text re-parses to the identical tree.
int tier(const ExprNode& n) {
    switch (n.kind) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Neg: return 3;
    default: return 4;
    }
}

void print_double(std::string& out, double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), res.ptr);
}

void print_node(std::string& out, const ExprNode& n);

void print_child(std::string& out, const ExprNode& child, bool parens) {
    if (parens) {
        out.push_back('(');
        print_node(out, child);
        out.push_back(')');
    } else {
        print_node(out, child);
    }
}

void print_binary(std::string& out, const ExprNode& n, char op) {
    const int level = tier(n);
    print_child(out, *n.a, tier(*n.a) < level);
    out.push_back(op);
    print_child(out, *n.b, tier(*n.b) <= level);
}

void print_node(std::string& out, const ExprNode& n) {
    switch (n.kind) {
    case Kind::Constant: print_double(out, n.value); return;
    case Kind::VarX: out.push_back('x'); return;
    case Kind::VarY: out.push_back('y'); return;
    case Kind::Pi: out.append("pi"); return;
    case Kind::Neg:
        out.push_back('-');
        print_child(out, *n.a, tier(*n.a) < 3);
        return;
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp:
        out.append(n.kind == Kind::Sin ? "sin"
                   : n.kind == Kind::Cos ? "cos"
                                         : "exp");
        out.push_back('(');
        print_node(out, *n.a);
        out.push_back(')');
        return;
    case Kind::Add: print_binary(out, n, '+'); return;
    case Kind::Sub: print_binary(out, n, '-'); return;
    case Kind::Mul: print_binary(out, n, '*'); return;
    case Kind::Div: print_binary(out, n, '/'); return;
    case Kind::Pow: {
        const bool base_is_atom =
            n.a->kind == Kind::VarX || n.a->kind == Kind::VarY ||
            n.a->kind == Kind::Pi || n.a->kind == Kind::Sin ||
            n.a->kind == Kind::Cos || n.a->kind == Kind::Exp ||
            (n.a->kind == Kind::Constant && !std::signbit(n.a->value));
        print_child(out, *n.a, !base_is_atom);
        out.push_back('^');
        out.append(std::to_string(n.exponent));
        return;
    }
    }
}

// ----------------------------------------------------------------- parsing

enum class Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Number,
    X,
    Y,
    Pi,
    Sin,
    Cos,
    Exp,
    End,
};

struct Token {
    Tok kind;
    std::size_t offset;
    double value = 0.0;   // Number payload
    bool integral = false; // Number payload: literal is a plain integer
    std::string text;
};

const char* describe(Tok kind) {
    switch (kind) {
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Number: return "number";
    case Tok::X: return "'x'";
    case Tok::Y: return "'y'";
    case Tok::Pi: return "'pi'";
    case Tok::Sin: return "'sin'";
    case Tok::Cos: return "'cos'";
    case Tok::Exp: return "'exp'";
    case Tok::End: return "end of input";
    }
    return "?";
}

[[noreturn]] void parse_fail(const Token& got, const std::string& expected) {
    std::ostringstream os;
    os << "syntax error at byte " << got.offset << ": unexpected "
       << (got.kind == Tok::End ? std::string("end of input")
                                : got.text.empty()
                                      ? std::string(describe(got.kind))
                                      : "'" + got.text + "'")
       << "; expected " << expected;
    throw ParseError(os.str(), got.offset, expected);
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        auto push = [&](Tok kind) {
            out.push_back({kind, start, 0.0, false,
                           text.substr(start, i - start)});
        };
        if (c == '+') { ++i; push(Tok::Plus); continue; }
        if (c == '-') { ++i; push(Tok::Minus); continue; }
        if (c == '*') { ++i; push(Tok::Star); continue; }
        if (c == '/') { ++i; push(Tok::Slash); continue; }
        if (c == '^') { ++i; push(Tok::Caret); continue; }
        if (c == '(') { ++i; push(Tok::LParen); continue; }
        if (c == ')') { ++i; push(Tok::RParen); continue; }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            bool saw_digit = false, saw_dot = false, saw_exp = false;
            while (i < n) {
                const char d = text[i];
                if (std::isdigit(static_cast<unsigned char>(d))) {
                    saw_digit = true;
                    ++i;
                } else if (d == '.' && !saw_dot && !saw_exp) {
                    saw_dot = true;
                    ++i;
                } else if ((d == 'e' || d == 'E') && saw_digit && !saw_exp) {
                    saw_exp = true;
                    ++i;
                    if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
                } else {
                    break;
                }
            }
            const std::string lit = text.substr(start, i - start);
            double value = 0.0;
            const auto res = std::from_chars(lit.data(),
                                             lit.data() + lit.size(), value);
            if (!saw_digit || res.ec != std::errc{} ||
                res.ptr != lit.data() + lit.size()) {
                throw ParseError("syntax error at byte " +
                                     std::to_string(start) +
                                     ": malformed number '" + lit + "'",
                                 start, "number");
            }
            Token t{Tok::Number, start, value, !saw_dot && !saw_exp, lit};
            out.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < n &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) ||
                    text[i] == '_'))
                ++i;
            const std::string name = text.substr(start, i - start);
            Tok kind;
            if (name == "x") kind = Tok::X;
            else if (name == "y") kind = Tok::Y;
            else if (name == "pi") kind = Tok::Pi;
            else if (name == "sin") kind = Tok::Sin;
            else if (name == "cos") kind = Tok::Cos;
            else if (name == "exp") kind = Tok::Exp;
            else {
                const std::string expected =
                    "'x', 'y', 'pi', 'sin', 'cos', or 'exp'";
                throw ParseError("syntax error at byte " +
                                     std::to_string(start) +
                                     ": unknown name '" + name +
                                     "'; expected " + expected,
                                 start, expected);
            }
            out.push_back({kind, start, 0.0, false, name});
            continue;
        }
        throw ParseError(
            "syntax error at byte " + std::to_string(start) +
                ": unexpected character '" + std::string(1, c) + "'",
            start, "number, name, or one of '+', '-', '*', '/', '^', "
                   "'(', ')'");
    }
    out.push_back({Tok::End, n, 0.0, false, ""});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : tokens_(lex(text)) {}

    NodePtr run() {
        NodePtr e = parse_expr();
        if (peek().kind != Tok::End)
            parse_fail(peek(), "'+', '-', '*', '/', or end of input");
        return e;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    const Token& peek() const { return tokens_[pos_]; }
    const Token& eat() { return tokens_[pos_++]; }

    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        ++pos_;
        return true;
    }

    void expect(Tok kind, const std::string& context) {
        if (!accept(kind))
            parse_fail(peek(),
                       std::string(describe(kind)) + " " + context);
    }

    NodePtr parse_expr() {
        NodePtr left = parse_term();
        for (;;) {
            if (accept(Tok::Plus)) left = mk_add(left, parse_term());
            else if (accept(Tok::Minus)) left = mk_sub(left, parse_term());
            else return left;
        }
    }

    NodePtr parse_term() {
        NodePtr left = parse_factor();
        for (;;) {
            if (accept(Tok::Star)) left = mk_mul(left, parse_factor());
            else if (accept(Tok::Slash)) left = mk_div(left, parse_factor());
            else return left;
        }
    }

    // The power operator binds tighter than unary minus: -x^2 is -(x^2).
    NodePtr parse_factor() {
        if (accept(Tok::Minus)) return mk_neg(parse_factor());
        NodePtr base = parse_atom();
        if (accept(Tok::Caret)) return mk_pow(base, parse_exponent());
        return base;
    }

    int parse_exponent() {
        const bool negated = accept(Tok::Minus);
        const Token& t = peek();
        if (t.kind != Tok::Number || !t.integral ||
            t.value > static_cast<double>(std::numeric_limits<int>::max()))
            parse_fail(t, "integer exponent");
        eat();
        const int magnitude = static_cast<int>(t.value);
        return negated ? -magnitude : magnitude;
    }

    NodePtr parse_atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Number: eat(); return mk_const(t.value);
        case Tok::X: eat(); return node(Kind::VarX);
        case Tok::Y: eat(); return node(Kind::VarY);
        case Tok::Pi: eat(); return node(Kind::Pi);
        case Tok::Sin:
        case Tok::Cos:
        case Tok::Exp: {
            eat();
            expect(Tok::LParen, "after function name");
            NodePtr inner = parse_expr();
            expect(Tok::RParen, "closing the function argument");
            switch (t.kind) {
            case Tok::Sin: return mk_call(Kind::Sin, inner);
            case Tok::Cos: return mk_call(Kind::Cos, inner);
            default: return mk_call(Kind::Exp, inner);
            }
        }
        case Tok::LParen: {
            eat();
            NodePtr inner = parse_expr();
            expect(Tok::RParen, "closing the group");
            return inner;
        }
        default:
            parse_fail(t, "number, 'x', 'y', 'pi', 'sin', 'cos', 'exp', "
                          "'(', or '-'");
        }
    }
};

} // namespace

// ------------------------------------------------------- public interface

Expression::Expression() : root_(mk_const(0.0)) {}

Expression::Expression(std::shared_ptr<const detail::ExprNode> root)
    : root_(std::move(root)) {}

std::string Expression::str() const {
    std::string out;
    print_node(out, *root_);
    return out;
}

double Expression::operator()(double x, double y) const {
    return eval_node(*root_, x, y);
}

Expression Expression::derivative_x() const {
    return Expression(diff_node(root_, true));
}

Expression Expression::derivative_y() const {
    return Expression(diff_node(root_, false));
}

Expression operator+(const Expression& a, const Expression& b) {
    return Expression(mk_add(a.root_, b.root_));
}

Expression operator-(const Expression& a, const Expression& b) {
    return Expression(mk_sub(a.root_, b.root_));
}

Expression operator*(const Expression& a, const Expression& b) {
    return Expression(mk_mul(a.root_, b.root_));
}

Expression operator/(const Expression& a, const Expression& b) {
    return Expression(mk_div(a.root_, b.root_));
}

Expression operator-(const Expression& a) {
    return Expression(mk_neg(a.root_));
}

Expression sin(const Expression& e) {
    return Expression(mk_call(Kind::Sin, e.root_));
}

Expression cos(const Expression& e) {
    return Expression(mk_call(Kind::Cos, e.root_));
}

Expression exp(const Expression& e) {
    return Expression(mk_call(Kind::Exp, e.root_));
}

Expression pow(const Expression& e, int exponent) {
    return Expression(mk_pow(e.root_, exponent));
}

Expression constant(double value) { return Expression(mk_const(value)); }

Expression var_x() { return Expression(node(Kind::VarX)); }

Expression var_y() { return Expression(node(Kind::VarY)); }

Expression pi() { return Expression(node(Kind::Pi)); }

Expression parse(const std::string& text) {
    return Expression(Parser(text).run());
}

Expression differentiate(const Expression& e, int m, int n) {
    if (m < 0 || n < 0 || m + n > 8) {
        std::ostringstream os;
        os << "derivative order (" << m << ", " << n
           << ") outside the supported range m, n >= 0, m + n <= 8";
        throw DomainError(os.str());
    }
    Expression d = e;
    for (int k = 0; k < m; ++k) d = d.derivative_x();
    for (int k = 0; k < n; ++k) d = d.derivative_y();
    return d;
}

double evaluate(const Expression& e, double x, double y) { return e(x, y); }

std::string to_string(const Expression& e) { return e.str(); }

} // namespace fd6
