#include "reson/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace reson {

namespace {

enum class Op { Literal, Var, Add, Sub, Mul, Div, Pow, Neg, Exp, Sin, Cos, Sinh, Cosh, Sqrt };

}  // namespace

struct Expression::Node {
    Op op;
    Real value = 0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr literal(Real v) {
    auto n = std::make_shared<Expression::Node>();
    n->op = Op::Literal;
    n->value = v;
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    NodePtr run() {
        auto e = parse_sum();
        skip_ws();
        if (pos_ != src_.size())
            throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_);
        return e;
    }

    bool saw_sqrt = false;

private:
    const std::string& src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_sum() {
        auto lhs = parse_product();
        for (;;) {
            if (accept('+')) lhs = make(Op::Add, lhs, parse_product());
            else if (accept('-')) lhs = make(Op::Sub, lhs, parse_product());
            else return lhs;
        }
    }

    NodePtr parse_product() {
        auto lhs = parse_unary();
        for (;;) {
            if (accept('*')) lhs = make(Op::Mul, lhs, parse_unary());
            else if (accept('/')) lhs = make(Op::Div, lhs, parse_unary());
            else return lhs;
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make(Op::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        auto base = parse_atom();
        if (accept('^')) {
            // right associative; exponent may carry a unary minus
            NodePtr exp = accept('-') ? make(Op::Neg, parse_power()) : parse_power();
            return make(Op::Pow, base, exp);
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = parse_sum();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    NodePtr parse_number() {
        const char* begin = src_.c_str() + pos_;
        char* end = nullptr;
        Real v = std::strtold(begin, &end);
        if (end == begin) throw ParseError("malformed number", pos_);
        pos_ += static_cast<std::size_t>(end - begin);
        return literal(v);
    }

    NodePtr parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::string name = src_.substr(start, pos_ - start);
        if (name == "x") return make(Op::Var);
        if (name == "pi") return literal(kPi);
        if (name == "e") return literal(std::exp((Real)1));
        Op op;
        if (name == "exp") op = Op::Exp;
        else if (name == "sin") op = Op::Sin;
        else if (name == "cos") op = Op::Cos;
        else if (name == "sinh") op = Op::Sinh;
        else if (name == "cosh") op = Op::Cosh;
        else if (name == "sqrt") { op = Op::Sqrt; saw_sqrt = true; }
        else throw ParseError("unknown identifier '" + name + "'", start);
        if (!accept('(')) throw ParseError("expected '(' after '" + name + "'", pos_);
        auto arg = parse_sum();
        if (!accept(')')) throw ParseError("expected ')'", pos_);
        return make(op, arg);
    }
};

Cplx eval_node(const Expression::Node& n, Cplx x) {
    switch (n.op) {
        case Op::Literal: return n.value;
        case Op::Var: return x;
        case Op::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
        case Op::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
        case Op::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
        case Op::Div: return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
        case Op::Pow: {
            Cplx b = eval_node(*n.lhs, x);
            Cplx e = eval_node(*n.rhs, x);
            // integer powers stay on the same analytic branch as repeated products
            if (e.imag() == 0 && e.real() == std::floor(e.real()) && std::abs(e.real()) <= 64) {
                long k = static_cast<long>(e.real());
                Cplx r = 1;
                Cplx base = k < 0 ? Cplx(1) / b : b;
                for (long i = 0; i < std::labs(k); ++i) r *= base;
                return r;
            }
            return std::pow(b, e);
        }
        case Op::Neg: return -eval_node(*n.lhs, x);
        case Op::Exp: return std::exp(eval_node(*n.lhs, x));
        case Op::Sin: return std::sin(eval_node(*n.lhs, x));
        case Op::Cos: return std::cos(eval_node(*n.lhs, x));
        case Op::Sinh: return std::sinh(eval_node(*n.lhs, x));
        case Op::Cosh: return std::cosh(eval_node(*n.lhs, x));
        case Op::Sqrt: return std::sqrt(eval_node(*n.lhs, x));
    }
    return 0;
}

}  // namespace

Expression Expression::parse(const std::string& src) {
    Parser p(src);
    Expression e;
    e.root_ = p.run();
    e.src_ = src;
    e.has_sqrt_ = p.saw_sqrt;
    return e;
}

Cplx Expression::eval(Cplx x) const { return eval_node(*root_, x); }

}  // namespace reson
