#pragma once

// Expression language for curve graphs v = g(u).
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right-associative, constant exponent
//   primary := number | 'u' | 'pi' | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | exp | log | sqrt
//
// Evaluation runs over Jet2, so every parsed expression yields exact first
// and second derivatives.

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>

#include "convexsec/error.hpp"
#include "convexsec/jet.hpp"

namespace convexsec {

enum class NodeKind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Function { Sin, Cos, Exp, Log, Sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::Number;
    double number = 0.0;            // Number
    Function function = Function::Sin;  // Call
    NodePtr lhs;                    // unary operand, call argument, or left operand
    NodePtr rhs;                    // right operand / exponent

    bool has_variable() const {
        if (kind == NodeKind::Variable) return true;
        return (lhs && lhs->has_variable()) || (rhs && rhs->has_variable());
    }
};

/// Structural equality; literals compare by exact value.
inline bool same_structure(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Number:
            return a.number == b.number;
        case NodeKind::Variable:
            return true;
        case NodeKind::Call:
            return a.function == b.function && same_structure(*a.lhs, *b.lhs);
        case NodeKind::Neg:
            return same_structure(*a.lhs, *b.lhs);
        default:
            return same_structure(*a.lhs, *b.lhs) && same_structure(*a.rhs, *b.rhs);
    }
}

inline const char* function_name(Function f) {
    switch (f) {
        case Function::Sin: return "sin";
        case Function::Cos: return "cos";
        case Function::Exp: return "exp";
        case Function::Log: return "log";
        case Function::Sqrt: return "sqrt";
    }
    return "?";
}

inline std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Fully parenthesized rendering that parses back to the same tree.
inline std::string to_string(const Node& n) {
    switch (n.kind) {
        case NodeKind::Number: return format_number(n.number);
        case NodeKind::Variable: return "u";
        case NodeKind::Neg: return "(-" + to_string(*n.lhs) + ")";
        case NodeKind::Call: return std::string(function_name(n.function)) + "(" + to_string(*n.lhs) + ")";
        case NodeKind::Add: return "(" + to_string(*n.lhs) + " + " + to_string(*n.rhs) + ")";
        case NodeKind::Sub: return "(" + to_string(*n.lhs) + " - " + to_string(*n.rhs) + ")";
        case NodeKind::Mul: return "(" + to_string(*n.lhs) + " * " + to_string(*n.rhs) + ")";
        case NodeKind::Div: return "(" + to_string(*n.lhs) + " / " + to_string(*n.rhs) + ")";
        case NodeKind::Pow: return "(" + to_string(*n.lhs) + " ^ " + to_string(*n.rhs) + ")";
    }
    return {};
}

inline Jet2 evaluate(const Node& n, const Jet2& u) {
    switch (n.kind) {
        case NodeKind::Number: return Jet2::constant(n.number);
        case NodeKind::Variable: return u;
        case NodeKind::Neg: return -evaluate(*n.lhs, u);
        case NodeKind::Add: return evaluate(*n.lhs, u) + evaluate(*n.rhs, u);
        case NodeKind::Sub: return evaluate(*n.lhs, u) - evaluate(*n.rhs, u);
        case NodeKind::Mul: return evaluate(*n.lhs, u) * evaluate(*n.rhs, u);
        case NodeKind::Div: return evaluate(*n.lhs, u) / evaluate(*n.rhs, u);
        case NodeKind::Pow: return pow(evaluate(*n.lhs, u), evaluate(*n.rhs, u).v);
        case NodeKind::Call: {
            const Jet2 x = evaluate(*n.lhs, u);
            switch (n.function) {
                case Function::Sin: return sin(x);
                case Function::Cos: return cos(x);
                case Function::Exp: return exp(x);
                case Function::Log: return log(x);
                case Function::Sqrt: return sqrt(x);
            }
        }
    }
    throw GeometryError("corrupt expression node");
}

/// Immutable parsed expression in the variable `u`.
class Expression {
public:
    Expression(NodePtr root, std::string source) : root_(std::move(root)), source_(std::move(source)) {}

    const Node& root() const { return *root_; }
    const std::string& source() const { return source_; }
    std::string to_string() const { return convexsec::to_string(*root_); }

    /// Value and first two derivatives at u. Throws GeometryError on
    /// domain violations or non-finite results.
    Jet2 jet(double u) const {
        const Jet2 r = evaluate(*root_, Jet2::variable(u));
        if (!r.finite()) {
            throw GeometryError("expression '" + source_ + "' is not finite at u=" + format_number(u));
        }
        return r;
    }
    double operator()(double u) const { return jet(u).v; }

    friend bool operator==(const Expression& a, const Expression& b) {
        return same_structure(*a.root_, *b.root_);
    }

private:
    NodePtr root_;
    std::string source_;
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        skip_space();
        if (pos_ == text_.size()) {
            throw ParseError("empty expression", pos_);
        }
        NodePtr root = expr();
        skip_space();
        if (pos_ != text_.size()) {
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return root;
    }

private:
    static NodePtr make(NodeKind k, NodePtr a = nullptr, NodePtr b = nullptr) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        return n;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make(NodeKind::Add, lhs, term());
            } else if (accept('-')) {
                lhs = make(NodeKind::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make(NodeKind::Mul, lhs, unary());
            } else if (accept('/')) {
                lhs = make(NodeKind::Div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(NodeKind::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) {
            skip_space();
            const std::size_t at = pos_;
            NodePtr exponent = unary();
            if (exponent->has_variable()) {
                throw ParseError("exponent must be constant", at);
            }
            return make(NodeKind::Pow, base, exponent);
        }
        return base;
    }

    NodePtr primary() {
        skip_space();
        if (pos_ == text_.size()) {
            throw ParseError("unexpected end of expression", pos_);
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            return identifier();
        }
        if (accept('(')) {
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    NodePtr number() {
        const std::size_t start = pos_;
        const std::string rest(text_.substr(pos_));
        char* end = nullptr;
        const double value = std::strtod(rest.c_str(), &end);
        const auto used = static_cast<std::size_t>(end - rest.c_str());
        if (used == 0) {
            throw ParseError("malformed number", start);
        }
        if (!std::isfinite(value)) {
            throw ParseError("number out of range", start);
        }
        pos_ += used;
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Number;
        n->number = value;
        return n;
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "u") {
            return make(NodeKind::Variable);
        }
        if (name == "pi") {
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::Number;
            n->number = std::numbers::pi;
            return n;
        }
        Function f{};
        if (name == "sin") f = Function::Sin;
        else if (name == "cos") f = Function::Cos;
        else if (name == "exp") f = Function::Exp;
        else if (name == "log") f = Function::Log;
        else if (name == "sqrt") f = Function::Sqrt;
        else throw ParseError("unknown identifier '" + std::string(name) + "'", start);

        expect('(');
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Call;
        n->function = f;
        n->lhs = expr();
        expect(')');
        return n;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expression parse_expression(std::string_view text) {
    return Expression(detail::Parser(text).parse(), std::string(text));
}

}  // namespace convexsec
