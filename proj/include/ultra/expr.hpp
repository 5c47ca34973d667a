// Recursive-descent parser for the small sequence/weight expression language:
//   Expr   <- Term (('+'/'-') Term)*
//   Term   <- Factor (('*'/'/') Factor)*
//   Factor <- Unary ('^' Factor)?          (right-associative power)
//   Unary  <- '-'? Atom
//   Atom   <- number / ident / ident '(' Expr (',' Expr)* ')' / '(' Expr ')'
// Identifiers: k, t, exp, log, lgamma, sqrt, pow, min, max.
#pragma once

#include <cctype>
#include <memory>
#include <string>

#include "ultra/common.hpp"

namespace ultra::expr {

enum class Op { literal, variable, neg, exp_, log_, lgamma_, sqrt_, add, sub, mul, div, pow_, min_, max_ };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    Op op;
    double value = 0.0;       // literal
    char var = 'k';           // variable
    NodePtr a, b;
};

class ParseError : public error {
public:
    ParseError(const std::string& msg, size_t offset)
        : error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    size_t offset() const { return offset_; }

private:
    size_t offset_;
};

namespace detail {
struct Parser {
    const std::string& src;
    size_t at = 0;

    void skip() {
        while (at < src.size() && std::isspace(static_cast<unsigned char>(src[at]))) ++at;
    }
    char peek() {
        skip();
        return at < src.size() ? src[at] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) { ++at; return true; }
        return false;
    }

    NodePtr parse_expr() {
        NodePtr n = parse_term();
        for (;;) {
            if (eat('+')) n = bin(Op::add, n, parse_term());
            else if (eat('-')) n = bin(Op::sub, n, parse_term());
            else return n;
        }
    }

    NodePtr parse_term() {
        NodePtr n = parse_factor();
        for (;;) {
            if (eat('*')) n = bin(Op::mul, n, parse_factor());
            else if (eat('/')) n = bin(Op::div, n, parse_factor());
            else return n;
        }
    }

    NodePtr parse_factor() {
        NodePtr n = parse_unary();
        if (eat('^')) return bin(Op::pow_, n, parse_factor());
        return n;
    }

    NodePtr parse_unary() {
        if (eat('-')) {
            auto n = std::make_shared<Node>();
            n->op = Op::neg;
            n->a = parse_atom();
            return n;
        }
        return parse_atom();
    }

    NodePtr parse_atom() {
        const char c = peek();
        if (c == '(') {
            ++at;
            NodePtr n = parse_expr();
            if (!eat(')')) throw ParseError("expected ')'", at);
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw ParseError("unexpected character", at);
    }

    NodePtr parse_number() {
        skip();
        const size_t start = at;
        while (at < src.size() &&
               (std::isdigit(static_cast<unsigned char>(src[at])) || src[at] == '.')) ++at;
        if (at < src.size() && (src[at] == 'e' || src[at] == 'E')) {
            ++at;
            if (at < src.size() && (src[at] == '+' || src[at] == '-')) ++at;
            while (at < src.size() && std::isdigit(static_cast<unsigned char>(src[at]))) ++at;
        }
        try {
            auto n = std::make_shared<Node>();
            n->op = Op::literal;
            n->value = std::stod(src.substr(start, at - start));
            return n;
        } catch (...) {
            throw ParseError("bad number", start);
        }
    }

    NodePtr parse_ident() {
        skip();
        const size_t start = at;
        while (at < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[at])) || src[at] == '_')) ++at;
        const std::string id = src.substr(start, at - start);
        if (id == "k" || id == "t") {
            auto n = std::make_shared<Node>();
            n->op = Op::variable;
            n->var = id[0];
            return n;
        }
        Op op;
        int arity;
        if (id == "exp") { op = Op::exp_; arity = 1; }
        else if (id == "log") { op = Op::log_; arity = 1; }
        else if (id == "lgamma") { op = Op::lgamma_; arity = 1; }
        else if (id == "sqrt") { op = Op::sqrt_; arity = 1; }
        else if (id == "pow") { op = Op::pow_; arity = 2; }
        else if (id == "min") { op = Op::min_; arity = 2; }
        else if (id == "max") { op = Op::max_; arity = 2; }
        else throw ParseError("unknown identifier '" + id + "'", start);

        if (!eat('(')) throw ParseError("expected '(' after '" + id + "'", at);
        std::vector<NodePtr> args;
        args.push_back(parse_expr());
        while (eat(',')) args.push_back(parse_expr());
        if (!eat(')')) throw ParseError("expected ')'", at);
        if (static_cast<int>(args.size()) != arity)
            throw ParseError("'" + id + "' expects " + std::to_string(arity) + " argument(s)", start);
        auto n = std::make_shared<Node>();
        n->op = op;
        n->a = args[0];
        if (arity == 2) n->b = args[1];
        return n;
    }

    static NodePtr bin(Op op, NodePtr a, NodePtr b) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }
};
} // namespace detail

inline NodePtr parse_expression(const std::string& src) {
    if (src.empty()) throw ParseError("empty expression", 0);
    detail::Parser p{src};
    NodePtr n = p.parse_expr();
    p.skip();
    if (p.at != src.size()) throw ParseError("trailing input", p.at);
    return n;
}

inline double eval(const NodePtr& n, double var_value) {
    switch (n->op) {
        case Op::literal: return n->value;
        case Op::variable: return var_value;
        case Op::neg: return -eval(n->a, var_value);
        case Op::exp_: return std::exp(eval(n->a, var_value));
        case Op::log_: {
            const double v = eval(n->a, var_value);
            if (!(v > 0.0)) throw error("expr: log of non-positive value");
            return std::log(v);
        }
        case Op::lgamma_: {
            const double v = eval(n->a, var_value);
            if (!(v > 0.0)) throw error("expr: lgamma of non-positive value");
            return std::lgamma(v);
        }
        case Op::sqrt_: {
            const double v = eval(n->a, var_value);
            if (v < 0.0) throw error("expr: sqrt of negative value");
            return std::sqrt(v);
        }
        case Op::add: return eval(n->a, var_value) + eval(n->b, var_value);
        case Op::sub: return eval(n->a, var_value) - eval(n->b, var_value);
        case Op::mul: return eval(n->a, var_value) * eval(n->b, var_value);
        case Op::div: {
            const double d = eval(n->b, var_value);
            if (d == 0.0) throw error("expr: division by zero");
            return eval(n->a, var_value) / d;
        }
        case Op::pow_: return std::pow(eval(n->a, var_value), eval(n->b, var_value));
        case Op::min_: return std::min(eval(n->a, var_value), eval(n->b, var_value));
        case Op::max_: return std::max(eval(n->a, var_value), eval(n->b, var_value));
    }
    throw error("expr: corrupt node");
}

inline std::string print(const NodePtr& n) {
    char buf[64];
    switch (n->op) {
        case Op::literal:
            std::snprintf(buf, sizeof buf, "%.17g", n->value);
            return buf;
        case Op::variable: return std::string(1, n->var);
        case Op::neg: return "-" + print(n->a);
        case Op::exp_: return "exp(" + print(n->a) + ")";
        case Op::log_: return "log(" + print(n->a) + ")";
        case Op::lgamma_: return "lgamma(" + print(n->a) + ")";
        case Op::sqrt_: return "sqrt(" + print(n->a) + ")";
        case Op::add: return "(" + print(n->a) + "+" + print(n->b) + ")";
        case Op::sub: return "(" + print(n->a) + "-" + print(n->b) + ")";
        case Op::mul: return "(" + print(n->a) + "*" + print(n->b) + ")";
        case Op::div: return "(" + print(n->a) + "/" + print(n->b) + ")";
        case Op::pow_: return "pow(" + print(n->a) + "," + print(n->b) + ")";
        case Op::min_: return "min(" + print(n->a) + "," + print(n->b) + ")";
        case Op::max_: return "max(" + print(n->a) + "," + print(n->b) + ")";
    }
    throw error("expr: corrupt node");
}

inline bool equal(const NodePtr& a, const NodePtr& b) {
    if (a->op != b->op) return false;
    switch (a->op) {
        case Op::literal: return a->value == b->value;
        case Op::variable: return a->var == b->var;
        case Op::neg:
        case Op::exp_:
        case Op::log_:
        case Op::lgamma_:
        case Op::sqrt_:
            return equal(a->a, b->a);
        default:
            return equal(a->a, b->a) && equal(a->b, b->b);
    }
}

} // namespace ultra::expr
