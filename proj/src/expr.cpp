#include "torfol/expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

namespace torfol {

namespace {

enum class NodeKind { Num, VarX, VarY, Add, Sub, Mul, Div, Neg, Sin, Cos, Exp };

// Shape of a subexpression under the periodicity analysis.
enum class Shape { Constant, Linear, Periodic, NonPeriodic };

struct ShapeInfo {
    Shape shape = Shape::Constant;
    double cx = 0.0;  // linear coefficients, valid when shape == Linear
    double cy = 0.0;
};

}  // namespace

struct Expr::Node {
    NodeKind kind;
    double value = 0.0;  // for Num
    NodePtr lhs, rhs;
};

namespace {

using Node = Expr::Node;
using NodePtr = Expr::NodePtr;

NodePtr make_num(double v) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Num;
    n->value = v;
    return n;
}

NodePtr make_node(NodeKind k, NodePtr l, NodePtr r = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

struct Token {
    enum Kind { Number, Ident, Op, End } kind;
    std::string text;
    double num = 0.0;
    size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= s_.size()) {
            tok_ = {Token::End, "", 0.0, i_};
            return;
        }
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t end = 0;
            double v = 0.0;
            try {
                v = std::stod(s_.substr(i_), &end);
            } catch (const std::exception&) {
                throw Error("malformed number at position " + std::to_string(i_), "expr-parse");
            }
            tok_ = {Token::Number, s_.substr(i_, end), v, i_};
            i_ += end;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            tok_ = {Token::Ident, s_.substr(i_, j - i_), 0.0, i_};
            i_ = j;
            return;
        }
        if (std::string("+-*/()").find(c) != std::string::npos) {
            tok_ = {Token::Op, std::string(1, c), 0.0, i_};
            ++i_;
            return;
        }
        throw Error(std::string("unexpected character '") + c + "' at position " +
                        std::to_string(i_),
                    "expr-parse");
    }

    const std::string& s_;
    size_t i_ = 0;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) {}

    NodePtr parse() {
        NodePtr e = expr();
        if (lex_.peek().kind != Token::End)
            throw Error("unexpected token '" + lex_.peek().text + "' at position " +
                            std::to_string(lex_.peek().pos),
                        "expr-parse");
        return e;
    }

private:
    NodePtr expr() {
        NodePtr lhs = term();
        while (lex_.peek().kind == Token::Op &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            const std::string op = lex_.take().text;
            NodePtr rhs = term();
            lhs = make_node(op == "+" ? NodeKind::Add : NodeKind::Sub, lhs, rhs);
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (lex_.peek().kind == Token::Op &&
               (lex_.peek().text == "*" || lex_.peek().text == "/")) {
            const std::string op = lex_.take().text;
            NodePtr rhs = factor();
            lhs = make_node(op == "*" ? NodeKind::Mul : NodeKind::Div, lhs, rhs);
        }
        return lhs;
    }

    NodePtr factor() {
        if (lex_.peek().kind == Token::Op && lex_.peek().text == "-") {
            lex_.take();
            return make_node(NodeKind::Neg, factor());
        }
        return primary();
    }

    NodePtr primary() {
        Token t = lex_.take();
        if (t.kind == Token::Number) return make_num(t.num);
        if (t.kind == Token::Ident) {
            if (t.text == "x") return make_node(NodeKind::VarX, nullptr);
            if (t.text == "y") return make_node(NodeKind::VarY, nullptr);
            if (t.text == "pi") return make_num(kPi);
            if (t.text == "sin" || t.text == "cos" || t.text == "exp") {
                expect("(");
                NodePtr arg = expr();
                expect(")");
                const NodeKind k = t.text == "sin"   ? NodeKind::Sin
                                   : t.text == "cos" ? NodeKind::Cos
                                                     : NodeKind::Exp;
                return make_node(k, arg);
            }
            throw Error("unknown identifier '" + t.text + "' at position " +
                            std::to_string(t.pos),
                        "expr-parse");
        }
        if (t.kind == Token::Op && t.text == "(") {
            NodePtr e = expr();
            expect(")");
            return e;
        }
        throw Error("unexpected token '" + t.text + "' at position " + std::to_string(t.pos),
                    "expr-parse");
    }

    void expect(const std::string& op) {
        Token t = lex_.take();
        if (t.kind != Token::Op || t.text != op)
            throw Error("expected '" + op + "' at position " + std::to_string(t.pos),
                        "expr-parse");
    }

    Lexer lex_;
};

bool near_integer(double v, double tol = 1e-9) {
    return std::abs(v - std::round(v)) < tol;
}

ShapeInfo analyze(const NodePtr& n) {
    switch (n->kind) {
        case NodeKind::Num:
            return {Shape::Constant, 0, 0};
        case NodeKind::VarX:
            return {Shape::Linear, 1, 0};
        case NodeKind::VarY:
            return {Shape::Linear, 0, 1};
        case NodeKind::Neg: {
            ShapeInfo s = analyze(n->lhs);
            s.cx = -s.cx;
            s.cy = -s.cy;
            return s;
        }
        case NodeKind::Add:
        case NodeKind::Sub: {
            ShapeInfo a = analyze(n->lhs), b = analyze(n->rhs);
            const double sign = n->kind == NodeKind::Add ? 1.0 : -1.0;
            if (a.shape == Shape::NonPeriodic || b.shape == Shape::NonPeriodic)
                return {Shape::NonPeriodic};
            if (a.shape == Shape::Linear || b.shape == Shape::Linear) {
                if (a.shape == Shape::Periodic || b.shape == Shape::Periodic)
                    return {Shape::NonPeriodic};
                return {Shape::Linear, a.cx + sign * b.cx, a.cy + sign * b.cy};
            }
            if (a.shape == Shape::Periodic || b.shape == Shape::Periodic)
                return {Shape::Periodic};
            return {Shape::Constant};
        }
        case NodeKind::Mul: {
            ShapeInfo a = analyze(n->lhs), b = analyze(n->rhs);
            if (a.shape == Shape::NonPeriodic || b.shape == Shape::NonPeriodic)
                return {Shape::NonPeriodic};
            if (a.shape == Shape::Constant && b.shape == Shape::Constant)
                return {Shape::Constant};
            if (a.shape == Shape::Constant || b.shape == Shape::Constant) {
                const ShapeInfo& other = a.shape == Shape::Constant ? b : a;
                const NodePtr& cnode = a.shape == Shape::Constant ? n->lhs : n->rhs;
                if (other.shape == Shape::Linear) {
                    // Need the constant's value to scale the coefficients.
                    // Constant subtrees evaluate independently of (x,y).
                    double c = 0.0;
                    {
                        // Evaluate constant subtree at the origin.
                        struct Eval {
                            static double run(const NodePtr& m) {
                                switch (m->kind) {
                                    case NodeKind::Num: return m->value;
                                    case NodeKind::Neg: return -run(m->lhs);
                                    case NodeKind::Add: return run(m->lhs) + run(m->rhs);
                                    case NodeKind::Sub: return run(m->lhs) - run(m->rhs);
                                    case NodeKind::Mul: return run(m->lhs) * run(m->rhs);
                                    case NodeKind::Div: return run(m->lhs) / run(m->rhs);
                                    case NodeKind::Sin: return std::sin(run(m->lhs));
                                    case NodeKind::Cos: return std::cos(run(m->lhs));
                                    case NodeKind::Exp: return std::exp(run(m->lhs));
                                    default: return 0.0;
                                }
                            }
                        };
                        c = Eval::run(cnode);
                    }
                    return {Shape::Linear, c * other.cx, c * other.cy};
                }
                return {other.shape};
            }
            if (a.shape == Shape::Periodic && b.shape == Shape::Periodic)
                return {Shape::Periodic};
            return {Shape::NonPeriodic};  // Linear*Linear, Linear*Periodic
        }
        case NodeKind::Div: {
            ShapeInfo a = analyze(n->lhs), b = analyze(n->rhs);
            if (a.shape == Shape::NonPeriodic || b.shape == Shape::NonPeriodic ||
                b.shape == Shape::Linear)
                return {Shape::NonPeriodic};
            if (b.shape == Shape::Constant) return a;  // scaling keeps the shape
            // b periodic
            if (a.shape == Shape::Linear) return {Shape::NonPeriodic};
            return {Shape::Periodic};
        }
        case NodeKind::Sin:
        case NodeKind::Cos: {
            ShapeInfo a = analyze(n->lhs);
            if (a.shape == Shape::Constant) return {Shape::Constant};
            if (a.shape == Shape::Periodic) return {Shape::Periodic};
            if (a.shape == Shape::Linear) {
                if (near_integer(a.cx / kTwoPi) && near_integer(a.cy / kTwoPi))
                    return {Shape::Periodic};
            }
            return {Shape::NonPeriodic};
        }
        case NodeKind::Exp: {
            ShapeInfo a = analyze(n->lhs);
            if (a.shape == Shape::Constant) return {Shape::Constant};
            if (a.shape == Shape::Periodic) return {Shape::Periodic};
            return {Shape::NonPeriodic};
        }
    }
    return {Shape::NonPeriodic};
}

double eval_node(const NodePtr& n, double x, double y) {
    switch (n->kind) {
        case NodeKind::Num: return n->value;
        case NodeKind::VarX: return x;
        case NodeKind::VarY: return y;
        case NodeKind::Neg: return -eval_node(n->lhs, x, y);
        case NodeKind::Add: return eval_node(n->lhs, x, y) + eval_node(n->rhs, x, y);
        case NodeKind::Sub: return eval_node(n->lhs, x, y) - eval_node(n->rhs, x, y);
        case NodeKind::Mul: return eval_node(n->lhs, x, y) * eval_node(n->rhs, x, y);
        case NodeKind::Div: return eval_node(n->lhs, x, y) / eval_node(n->rhs, x, y);
        case NodeKind::Sin: return std::sin(eval_node(n->lhs, x, y));
        case NodeKind::Cos: return std::cos(eval_node(n->lhs, x, y));
        case NodeKind::Exp: return std::exp(eval_node(n->lhs, x, y));
    }
    return 0.0;
}

Dual2 eval_dual(const NodePtr& n, double x, double y) {
    switch (n->kind) {
        case NodeKind::Num: return {n->value, 0, 0};
        case NodeKind::VarX: return {x, 1, 0};
        case NodeKind::VarY: return {y, 0, 1};
        case NodeKind::Neg: {
            Dual2 a = eval_dual(n->lhs, x, y);
            return {-a.v, -a.dx, -a.dy};
        }
        case NodeKind::Add: {
            Dual2 a = eval_dual(n->lhs, x, y), b = eval_dual(n->rhs, x, y);
            return {a.v + b.v, a.dx + b.dx, a.dy + b.dy};
        }
        case NodeKind::Sub: {
            Dual2 a = eval_dual(n->lhs, x, y), b = eval_dual(n->rhs, x, y);
            return {a.v - b.v, a.dx - b.dx, a.dy - b.dy};
        }
        case NodeKind::Mul: {
            Dual2 a = eval_dual(n->lhs, x, y), b = eval_dual(n->rhs, x, y);
            return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy};
        }
        case NodeKind::Div: {
            Dual2 a = eval_dual(n->lhs, x, y), b = eval_dual(n->rhs, x, y);
            const double inv = 1.0 / b.v;
            const double v = a.v * inv;
            return {v, (a.dx - v * b.dx) * inv, (a.dy - v * b.dy) * inv};
        }
        case NodeKind::Sin: {
            Dual2 a = eval_dual(n->lhs, x, y);
            const double c = std::cos(a.v);
            return {std::sin(a.v), c * a.dx, c * a.dy};
        }
        case NodeKind::Cos: {
            Dual2 a = eval_dual(n->lhs, x, y);
            const double s = -std::sin(a.v);
            return {std::cos(a.v), s * a.dx, s * a.dy};
        }
        case NodeKind::Exp: {
            Dual2 a = eval_dual(n->lhs, x, y);
            const double e = std::exp(a.v);
            return {e, e * a.dx, e * a.dy};
        }
    }
    return {};
}

}  // namespace

Expr Expr::parse(const std::string& text) {
    Parser p(text);
    Expr e;
    e.root_ = p.parse();
    e.text_ = text;
    const ShapeInfo s = analyze(e.root_);
    if (s.shape == Shape::NonPeriodic || s.shape == Shape::Linear)
        throw Error("expression '" + text +
                        "' is not 1-periodic: every x or y must appear inside "
                        "sin/cos of an integer multiple of 2*pi",
                    "expr-parse");
    return e;
}

double Expr::eval(double x, double y) const { return eval_node(root_, mod1(x), mod1(y)); }

Dual2 Expr::eval_grad(double x, double y) const { return eval_dual(root_, mod1(x), mod1(y)); }

}  // namespace torfol
